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

#include <filesystem>
#include <string>

#include "sqqnn/train.hpp"

namespace sqqnn::store {

/// Serialises a model to the versioned JSON model format. Every real number
/// is written as a C99 hex-float string so a reload is bit-exact.
[[nodiscard]] std::string to_text(const train::TrainedModel &model);

/// Parses the model format. Throws unsupported-format for an unknown
/// version and parse-error naming the offending field otherwise.
[[nodiscard]] train::TrainedModel from_text(const std::string &text);

/// Writes through a temporary file and renames it into place.
void save(const train::TrainedModel &model, const std::filesystem::path &path);
[[nodiscard]] train::TrainedModel load(const std::filesystem::path &path);

[[nodiscard]] std::string hex_float(double value);
[[nodiscard]] double parse_hex_float(const std::string &text);

} // namespace sqqnn::store
