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
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sqqnn/linalg.hpp"

namespace sqqnn::features {

using linalg::RealMatrix;

/// Polynomial angle function
///   Omega(x) = c0 + sum_{k=1..K} sum_{j=1..p} c_kj x_j^k.
/// Coefficients are held flattened as [c0, c_11..c_1p, ..., c_K1..c_Kp],
/// the same column order as build_design_matrix.
class PolynomialWeightFunction {
  public:
    PolynomialWeightFunction(std::size_t degree, std::size_t dim);
    PolynomialWeightFunction(std::size_t degree, std::size_t dim,
                             std::vector<double> flat_coefficients);

    [[nodiscard]] static std::size_t coefficient_count(std::size_t degree,
                                                       std::size_t dim) noexcept {
        return 1 + degree * dim;
    }

    [[nodiscard]] std::size_t degree() const noexcept { return degree_; }
    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }

    [[nodiscard]] double bias() const noexcept { return coeffs_[0]; }
    void set_bias(double value) noexcept { coeffs_[0] = value; }

    /// c_kj with 1-based power k and 0-based feature j.
    [[nodiscard]] double coefficient(std::size_t k, std::size_t j) const;
    void set_coefficient(std::size_t k, std::size_t j, double value);

    [[nodiscard]] std::span<const double> flat() const noexcept { return coeffs_; }
    [[nodiscard]] std::span<double> flat() noexcept { return coeffs_; }

    friend bool operator==(const PolynomialWeightFunction &,
                           const PolynomialWeightFunction &) = default;

  private:
    std::size_t degree_;
    std::size_t dim_;
    std::vector<double> coeffs_;
};

/// Value of the polynomial at x. Throws invalid-argument when dim(x) != p.
[[nodiscard]] double eval_angle(const PolynomialWeightFunction &f,
                                std::span<const double> x);

/// arccos(tanh(Omega(x))), in [0, pi]. The reduced circuit then outputs
/// cos(beta) = tanh(Omega(x)).
[[nodiscard]] double eval_beta_classifier(const PolynomialWeightFunction &f,
                                          std::span<const double> x);

/// Writes [1, x, x^2, ..., x^K] (each power block p wide) into `out`, which
/// must hold 1 + K*p entries.
void design_row(std::span<const double> x, std::size_t degree, std::span<double> out);

[[nodiscard]] RealMatrix build_design_matrix(const RealMatrix &inputs, std::size_t degree);

/// Per-feature affine map onto [-1, 1]; a constant feature maps to 0.
struct FeatureScaling {
    std::vector<double> min;
    std::vector<double> max;

    [[nodiscard]] std::size_t dim() const noexcept { return min.size(); }
    void apply_inplace(std::span<double> x) const;
    [[nodiscard]] RealMatrix apply(const RealMatrix &inputs) const;

    friend bool operator==(const FeatureScaling &, const FeatureScaling &) = default;
};

/// Affine map of a target range onto [-1, 1] and back.
struct TargetScaling {
    double min = -1.0;
    double max = 1.0;

    [[nodiscard]] double apply(double y) const noexcept;
    [[nodiscard]] double invert(double y) const noexcept;

    friend bool operator==(const TargetScaling &, const TargetScaling &) = default;
};

/// What was fitted on the training data, reused verbatim at test time.
struct NormalizationRecord {
    std::optional<FeatureScaling> inputs;
    std::optional<TargetScaling> target;

    friend bool operator==(const NormalizationRecord &,
                           const NormalizationRecord &) = default;
};

[[nodiscard]] FeatureScaling fit_feature_scaling(const RealMatrix &inputs);
[[nodiscard]] std::pair<RealMatrix, FeatureScaling> normalize_features(const RealMatrix &inputs);

[[nodiscard]] TargetScaling fit_target_scaling(std::span<const double> targets);
[[nodiscard]] std::vector<double> apply_target_scaling(const TargetScaling &scaling,
                                                       std::span<const double> targets);
[[nodiscard]] std::vector<double> invert_target_scaling(const TargetScaling &scaling,
                                                        std::span<const double> targets);

/// Orthonormal 2-D DCT-II of a square image with a cached basis.
class Dct2 {
  public:
    explicit Dct2(std::size_t side);

    [[nodiscard]] std::size_t side() const noexcept { return side_; }
    [[nodiscard]] RealMatrix forward(const RealMatrix &image) const;
    [[nodiscard]] RealMatrix inverse(const RealMatrix &coefficients) const;

  private:
    void check(const RealMatrix &m) const;

    std::size_t side_;
    RealMatrix basis_; // basis_(k, n) = a_k cos(pi (2n + 1) k / 2N)
};

[[nodiscard]] RealMatrix dct2(const RealMatrix &image);
[[nodiscard]] RealMatrix idct2(const RealMatrix &coefficients);

/// Flattens the top-left keep x keep block of a coefficient matrix row-major;
/// keep == 0 or keep >= side keeps everything.
[[nodiscard]] std::vector<double> flatten_block(const RealMatrix &coefficients,
                                                std::size_t keep);

} // namespace sqqnn::features
