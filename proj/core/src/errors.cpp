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
#include "sqqnn/errors.hpp"

#include <sstream>

namespace sqqnn {

std::string_view to_string(Errc code) noexcept {
    switch (code) {
    case Errc::invalid_argument:
        return "invalid-argument";
    case Errc::numeric_failure:
        return "numeric-failure";
    case Errc::training_diverged:
        return "training-diverged";
    case Errc::invalid_label:
        return "invalid-label";
    case Errc::io_error:
        return "io-error";
    case Errc::parse_error:
        return "parse-error";
    case Errc::unsupported_format:
        return "unsupported-format";
    case Errc::count_mismatch:
        return "count-mismatch";
    }
    return "unknown";
}

namespace {

std::string diverged_message(std::size_t epoch, double loss) {
    std::ostringstream out;
    out << "training diverged at epoch " << epoch << " (loss " << loss << ")";
    return out.str();
}

} // namespace

TrainingDiverged::TrainingDiverged(std::size_t epoch, double loss)
    : Error(Errc::training_diverged, diverged_message(epoch, loss)),
      epoch_(epoch), loss_(loss) {}

void fail(Errc code, const std::string &message) { throw Error(code, message); }

} // namespace sqqnn
