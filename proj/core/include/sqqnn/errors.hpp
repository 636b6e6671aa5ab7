// Copyright 2026 The sqqnn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sqqnn {

/// Failure categories raised by the library. The CLI maps these onto exit
/// codes, tests match on them.
enum class Errc {
    invalid_argument,
    numeric_failure,
    training_diverged,
    invalid_label,
    io_error,
    parse_error,
    unsupported_format,
    count_mismatch,
};

std::string_view to_string(Errc code) noexcept;

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string &message)
        : std::runtime_error(message), code_(code) {}

    [[nodiscard]] Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

/// Raised when gradient descent produces a non-finite or runaway loss.
class TrainingDiverged : public Error {
  public:
    TrainingDiverged(std::size_t epoch, double loss);

    [[nodiscard]] std::size_t epoch() const noexcept { return epoch_; }
    [[nodiscard]] double loss() const noexcept { return loss_; }

  private:
    std::size_t epoch_;
    double loss_;
};

[[noreturn]] void fail(Errc code, const std::string &message);

inline void require(bool condition, Errc code, const std::string &message) {
    if (!condition) {
        fail(code, message);
    }
}

} // namespace sqqnn
