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
#include "sqqnn/features.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "sqqnn/errors.hpp"

namespace sqqnn::features {

namespace {

void require_dim(std::size_t expected, std::size_t actual, const char *what) {
    if (expected != actual) {
        std::ostringstream msg;
        msg << what << ": expected " << expected << " features, got " << actual;
        fail(Errc::invalid_argument, msg.str());
    }
}

} // namespace

PolynomialWeightFunction::PolynomialWeightFunction(std::size_t degree, std::size_t dim)
    : PolynomialWeightFunction(degree, dim,
                               std::vector<double>(coefficient_count(degree, dim), 0.0)) {}

PolynomialWeightFunction::PolynomialWeightFunction(std::size_t degree, std::size_t dim,
                                                   std::vector<double> flat_coefficients)
    : degree_(degree), dim_(dim), coeffs_(std::move(flat_coefficients)) {
    require(degree_ >= 1, Errc::invalid_argument, "polynomial degree K must be >= 1");
    require(dim_ >= 1, Errc::invalid_argument, "input dimension p must be >= 1");
    if (coeffs_.size() != coefficient_count(degree_, dim_)) {
        std::ostringstream msg;
        msg << "polynomial with K=" << degree_ << ", p=" << dim_ << " needs "
            << coefficient_count(degree_, dim_) << " coefficients, got " << coeffs_.size();
        fail(Errc::invalid_argument, msg.str());
    }
}

double PolynomialWeightFunction::coefficient(std::size_t k, std::size_t j) const {
    require(k >= 1 && k <= degree_ && j < dim_, Errc::invalid_argument,
            "coefficient index out of range");
    return coeffs_[1 + (k - 1) * dim_ + j];
}

void PolynomialWeightFunction::set_coefficient(std::size_t k, std::size_t j, double value) {
    require(k >= 1 && k <= degree_ && j < dim_, Errc::invalid_argument,
            "coefficient index out of range");
    coeffs_[1 + (k - 1) * dim_ + j] = value;
}

double eval_angle(const PolynomialWeightFunction &f, std::span<const double> x) {
    require_dim(f.dim(), x.size(), "eval_angle");
    const auto c = f.flat();
    const std::size_t p = f.dim();
    double acc = c[0];
    for (std::size_t j = 0; j < p; ++j) {
        double power = 1.0;
        for (std::size_t k = 0; k < f.degree(); ++k) {
            power *= x[j];
            acc += c[1 + k * p + j] * power;
        }
    }
    return acc;
}

double eval_beta_classifier(const PolynomialWeightFunction &f, std::span<const double> x) {
    return std::acos(std::tanh(eval_angle(f, x)));
}

void design_row(std::span<const double> x, std::size_t degree, std::span<double> out) {
    const std::size_t p = x.size();
    require(out.size() == 1 + degree * p, Errc::invalid_argument,
            "design_row: output span has the wrong width");
    out[0] = 1.0;
    std::copy(x.begin(), x.end(), out.begin() + 1);
    for (std::size_t k = 1; k < degree; ++k) {
        const auto prev = out.subspan(1 + (k - 1) * p, p);
        auto cur = out.subspan(1 + k * p, p);
        for (std::size_t j = 0; j < p; ++j) {
            cur[j] = prev[j] * x[j];
        }
    }
}

RealMatrix build_design_matrix(const RealMatrix &inputs, std::size_t degree) {
    require(inputs.rows() >= 1 && inputs.cols() >= 1, Errc::invalid_argument,
            "build_design_matrix: empty input");
    require(degree >= 1, Errc::invalid_argument, "build_design_matrix: K must be >= 1");
    RealMatrix x(inputs.rows(), 1 + degree * inputs.cols());
    for (std::size_t i = 0; i < inputs.rows(); ++i) {
        design_row(inputs.row(i), degree, x.row(i));
    }
    return x;
}

void FeatureScaling::apply_inplace(std::span<double> x) const {
    require_dim(dim(), x.size(), "feature scaling");
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double range = max[j] - min[j];
        x[j] = range > 0.0 ? 2.0 * (x[j] - min[j]) / range - 1.0 : 0.0;
    }
}

RealMatrix FeatureScaling::apply(const RealMatrix &inputs) const {
    RealMatrix out = inputs;
    for (std::size_t i = 0; i < out.rows(); ++i) {
        apply_inplace(out.row(i));
    }
    return out;
}

double TargetScaling::apply(double y) const noexcept {
    const double range = max - min;
    return range > 0.0 ? 2.0 * (y - min) / range - 1.0 : 0.0;
}

double TargetScaling::invert(double y) const noexcept {
    const double range = max - min;
    return range > 0.0 ? (y + 1.0) * range / 2.0 + min : min;
}

FeatureScaling fit_feature_scaling(const RealMatrix &inputs) {
    require(inputs.rows() >= 1 && inputs.cols() >= 1, Errc::invalid_argument,
            "normalize_features: empty dataset");
    FeatureScaling s;
    s.min.assign(inputs.row(0).begin(), inputs.row(0).end());
    s.max = s.min;
    for (std::size_t i = 1; i < inputs.rows(); ++i) {
        const auto r = inputs.row(i);
        for (std::size_t j = 0; j < r.size(); ++j) {
            s.min[j] = std::min(s.min[j], r[j]);
            s.max[j] = std::max(s.max[j], r[j]);
        }
    }
    return s;
}

std::pair<RealMatrix, FeatureScaling> normalize_features(const RealMatrix &inputs) {
    FeatureScaling s = fit_feature_scaling(inputs);
    RealMatrix scaled = s.apply(inputs);
    return {std::move(scaled), std::move(s)};
}

TargetScaling fit_target_scaling(std::span<const double> targets) {
    require(!targets.empty(), Errc::invalid_argument, "target scaling: no targets");
    const auto [lo, hi] = std::minmax_element(targets.begin(), targets.end());
    return TargetScaling{*lo, *hi};
}

std::vector<double> apply_target_scaling(const TargetScaling &scaling,
                                         std::span<const double> targets) {
    std::vector<double> out(targets.size());
    std::transform(targets.begin(), targets.end(), out.begin(),
                   [&](double y) { return scaling.apply(y); });
    return out;
}

std::vector<double> invert_target_scaling(const TargetScaling &scaling,
                                          std::span<const double> targets) {
    std::vector<double> out(targets.size());
    std::transform(targets.begin(), targets.end(), out.begin(),
                   [&](double y) { return scaling.invert(y); });
    return out;
}

Dct2::Dct2(std::size_t side) : side_(side), basis_(side, side) {
    require(side >= 1, Errc::invalid_argument, "DCT side must be >= 1");
    const double n = static_cast<double>(side);
    for (std::size_t k = 0; k < side; ++k) {
        const double scale = std::sqrt((k == 0 ? 1.0 : 2.0) / n);
        for (std::size_t i = 0; i < side; ++i) {
            basis_(k, i) = scale * std::cos(std::numbers::pi *
                                            (2.0 * static_cast<double>(i) + 1.0) *
                                            static_cast<double>(k) / (2.0 * n));
        }
    }
}

void Dct2::check(const RealMatrix &m) const {
    if (m.rows() != m.cols()) {
        std::ostringstream msg;
        msg << "DCT needs a square image, got " << m.rows() << "x" << m.cols();
        fail(Errc::invalid_argument, msg.str());
    }
    require_dim(side_, m.rows(), "DCT");
}

RealMatrix Dct2::forward(const RealMatrix &image) const {
    check(image);
    return basis_ * image * basis_.transpose();
}

RealMatrix Dct2::inverse(const RealMatrix &coefficients) const {
    check(coefficients);
    return basis_.transpose() * coefficients * basis_;
}

RealMatrix dct2(const RealMatrix &image) {
    require(image.rows() == image.cols() && image.rows() >= 1, Errc::invalid_argument,
            "DCT needs a non-empty square image");
    return Dct2(image.rows()).forward(image);
}

RealMatrix idct2(const RealMatrix &coefficients) {
    require(coefficients.rows() == coefficients.cols() && coefficients.rows() >= 1,
            Errc::invalid_argument, "inverse DCT needs a non-empty square matrix");
    return Dct2(coefficients.rows()).inverse(coefficients);
}

std::vector<double> flatten_block(const RealMatrix &coefficients, std::size_t keep) {
    const std::size_t side = coefficients.rows();
    const std::size_t b = (keep == 0 || keep >= side) ? side : keep;
    std::vector<double> out;
    out.reserve(b * b);
    for (std::size_t r = 0; r < b; ++r) {
        const auto row = coefficients.row(r);
        out.insert(out.end(), row.begin(), row.begin() + static_cast<std::ptrdiff_t>(b));
    }
    return out;
}

} // namespace sqqnn::features
