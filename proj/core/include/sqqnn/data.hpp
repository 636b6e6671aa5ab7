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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sqqnn/linalg.hpp"

namespace sqqnn::data {

using linalg::RealMatrix;

/// Inputs x_i in R^p with one real target each. Targets are only required
/// to lie in [-1, 1] once they reach a trainer (see require_unit_targets).
struct Dataset {
    RealMatrix inputs;
    std::vector<double> targets;
    std::vector<std::string> feature_names;
    std::string provenance;

    [[nodiscard]] std::size_t size() const noexcept { return targets.size(); }
    [[nodiscard]] std::size_t dim() const noexcept { return inputs.cols(); }

    /// n >= 1, shapes agree, every entry finite.
    void validate() const;
    /// validate() plus every target in [-1, 1].
    void require_unit_targets() const;

    [[nodiscard]] Dataset subset(std::span<const std::size_t> indices) const;
};

enum class MissingPolicy {
    drop_rows,    // drop every row containing a missing cell
    drop_columns, // drop feature columns with any missing cell, then rows
};

struct CsvOptions {
    /// Header name or integer index; negative indices count from the end.
    std::string target = "-1";
    bool has_header = true;
    /// Columns (names or indices) excluded from the feature set.
    std::vector<std::string> ignore_columns;
    /// Maps non-numeric target cells, e.g. {"M", 1}, {"B", -1}.
    std::map<std::string, double> label_map;
    MissingPolicy missing = MissingPolicy::drop_rows;
};

struct CsvLoadResult {
    Dataset dataset;
    std::size_t dropped_rows = 0;
    std::vector<std::string> dropped_columns;
};

/// Comma-separated numeric table. "?" and empty cells are missing values.
[[nodiscard]] CsvLoadResult load_csv(const std::filesystem::path &path,
                                     const CsvOptions &options = {});

/// Writes features then target, full round-trip precision.
void write_csv(const Dataset &dataset, const std::filesystem::path &path);

/// Images and labels from an IDX pair, kept as raw bytes.
struct LabeledImages {
    std::size_t count = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint8_t> pixels;
    std::vector<std::uint8_t> labels;

    /// Image i with pixels scaled from [0, 255] to [0, 1].
    [[nodiscard]] RealMatrix image(std::size_t i) const;
};

inline constexpr std::uint32_t kIdxImagesMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelsMagic = 0x00000801;

[[nodiscard]] LabeledImages load_mnist_idx(const std::filesystem::path &images_path,
                                           const std::filesystem::path &labels_path);

/// Writes an IDX image/label pair (big-endian headers, unsigned bytes).
void write_mnist_idx(const LabeledImages &set, const std::filesystem::path &images_path,
                     const std::filesystem::path &labels_path);

struct DctOptions {
    /// Keep the top-left block of this side; 0 keeps every coefficient.
    std::size_t keep_block = 0;
};

/// Digits a and b only, the lower digit labelled +1, each image replaced by
/// its flattened orthonormal 2-D DCT coefficients.
[[nodiscard]] Dataset filter_pair(const LabeledImages &images, int a, int b,
                                  const DctOptions &dct = {});

enum class LogicGate { and_gate, or_gate, xor_gate, nand_gate, nor_gate, xnor_gate };

[[nodiscard]] LogicGate parse_logic_gate(const std::string &name);
[[nodiscard]] std::string to_string(LogicGate gate);
[[nodiscard]] std::vector<LogicGate> all_logic_gates();

/// Four rows over {-1, +1}^2 in the order (--), (-+), (+-), (++); false is
/// -1 and true is +1 for inputs and targets alike.
[[nodiscard]] Dataset gen_logic_gate(LogicGate gate);

struct SincOptions {
    std::size_t n_train = 800;
    std::size_t n_val = 100;
    std::size_t n_test = 100;
    double noise_sigma = 0.0;
    double half_width = 10.0;
    std::uint64_t seed = 0;
};

struct SincSplits {
    Dataset train;
    Dataset validation;
    Dataset test;
};

[[nodiscard]] double sinc(double x) noexcept;
[[nodiscard]] SincSplits gen_sinc(const SincOptions &options);

/// Two interleaved half circles: label +1 on the upper arc (cos t, sin t),
/// -1 on the lower arc (1 - cos t, 0.5 - sin t), t in [0, pi], isotropic
/// Gaussian noise, rows shuffled.
[[nodiscard]] Dataset gen_two_moons(std::size_t n, double noise, std::uint64_t seed);

/// Partition of {0..n-1} into k folds.
struct FoldPlan {
    std::size_t k = 0;
    std::uint64_t seed = 0;
    bool stratified = false;
    std::vector<std::vector<std::size_t>> folds;

    [[nodiscard]] std::size_t n() const noexcept;
    [[nodiscard]] std::vector<std::size_t> test_indices(std::size_t fold) const;
    [[nodiscard]] std::vector<std::size_t> train_indices(std::size_t fold) const;
};

[[nodiscard]] FoldPlan kfold_plan(std::size_t n, std::size_t k, std::uint64_t seed);
/// Folds keep each label's share within one sample of proportional.
[[nodiscard]] FoldPlan stratified_kfold_plan(std::span<const double> labels, std::size_t k,
                                             std::uint64_t seed);

/// (train, test) for one fold.
[[nodiscard]] std::pair<Dataset, Dataset> split(const Dataset &dataset, const FoldPlan &plan,
                                                std::size_t fold);

} // namespace sqqnn::data
