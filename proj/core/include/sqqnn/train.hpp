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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sqqnn/data.hpp"
#include "sqqnn/features.hpp"
#include "sqqnn/qcore.hpp"

namespace sqqnn::train {

using data::Dataset;
using features::NormalizationRecord;
using features::PolynomialWeightFunction;

enum class ModelKind { gd_full, gd_reduced, lls };
enum class ModelShape { full, reduced };
enum class LossKind { mse, hinge };

[[nodiscard]] std::string to_string(ModelKind kind);
[[nodiscard]] ModelKind parse_model_kind(const std::string &name);
[[nodiscard]] std::string to_string(LossKind loss);
[[nodiscard]] LossKind parse_loss_kind(const std::string &name);

[[nodiscard]] double mse_loss(std::span<const double> predictions,
                              std::span<const double> targets);
[[nodiscard]] double hinge_loss(std::span<const double> predictions,
                                std::span<const double> targets);

/// Which parameter groups gradient descent may move.
struct TrainableSet {
    bool angle_coefficients = true;
    bool theta = true;
    bool omega = true;

    friend bool operator==(const TrainableSet &, const TrainableSet &) = default;
};

struct GdConfig {
    double learning_rate = 0.05;
    std::size_t max_epochs = 1000;
    double target_loss = 0.0;
    std::uint64_t seed = 0;
    double init_scale = 0.1;
    std::size_t degree = 1;
    LossKind loss = LossKind::mse;
    TrainableSet trainable;
    /// Training aborts once the batch loss exceeds this or turns non-finite.
    double divergence_limit = 1e6;

    void validate() const;

    friend bool operator==(const GdConfig &, const GdConfig &) = default;
};

struct LlsConfig {
    std::size_t degree = 1;
    double epsilon = 1e-16;
    /// Defaults to linalg::default_rcond of the design matrix.
    std::optional<double> rcond;

    void validate() const;

    friend bool operator==(const LlsConfig &, const LlsConfig &) = default;
};

/// A fitted network. gd_reduced and lls use `beta` alone with
/// theta = omega = 0; gd_full adds independent alpha and gamma polynomials
/// and the scalar input-state and observable angles.
struct TrainedModel {
    static constexpr int kFormatVersion = 1;

    ModelKind kind = ModelKind::lls;
    std::size_t degree = 1;
    std::size_t dim = 1;
    std::optional<PolynomialWeightFunction> alpha;
    PolynomialWeightFunction beta{1, 1};
    std::optional<PolynomialWeightFunction> gamma;
    double theta = 0.0;
    double omega = 0.0;
    NormalizationRecord normalization;
    std::optional<GdConfig> gd_config;
    std::optional<LlsConfig> lls_config;
    int format_version = kFormatVersion;

    /// Coefficient-count and shape consistency with kind/degree/dim.
    void validate() const;

    friend bool operator==(const TrainedModel &, const TrainedModel &) = default;
};

/// Circuit angles for an already-normalised input.
[[nodiscard]] qcore::AngleSet angle_set(const TrainedModel &model, std::span<const double> x);

/// Output in [-1, 1] for an already-normalised input.
[[nodiscard]] double predict_normalized(const TrainedModel &model, std::span<const double> x);

/// Applies the stored input normalisation, then evaluates the circuit.
/// The result is in the scaled target space [-1, 1].
[[nodiscard]] double predict(const TrainedModel &model, std::span<const double> x);

/// sign(predict), with a tie at exactly 0 going to +1.
[[nodiscard]] int predict_class(const TrainedModel &model, std::span<const double> x);

/// predict mapped back through the stored target scaling, if any.
[[nodiscard]] double predict_original(const TrainedModel &model, std::span<const double> x);

[[nodiscard]] std::vector<double> predict_all(const TrainedModel &model, const Dataset &dataset);

/// Dataset targets mapped into the model's scaled target space.
[[nodiscard]] std::vector<double> scaled_targets(const TrainedModel &model,
                                                 const Dataset &dataset);

/// Batch loss of a polynomial-parameterised circuit as a function of the
/// flattened parameter vector, with its chain-rule gradient.
///
/// Parameter layout: reduced = [beta coefficients]; full = [alpha
/// coefficients, beta coefficients, gamma coefficients, theta, omega].
class GdObjective {
  public:
    GdObjective(const Dataset &data, std::size_t degree, ModelShape shape, LossKind loss);

    [[nodiscard]] std::size_t parameter_count() const noexcept;
    [[nodiscard]] std::size_t coefficients_per_angle() const noexcept { return width_; }
    [[nodiscard]] ModelShape shape() const noexcept { return shape_; }

    /// Loss at `params`; writes d loss / d params into `gradient` when it is
    /// non-empty. Samples are reduced in index order.
    double evaluate(std::span<const double> params, std::span<double> gradient) const;
    [[nodiscard]] double loss(std::span<const double> params) const;

    [[nodiscard]] TrainedModel to_model(std::span<const double> params) const;

  private:
    linalg::RealMatrix design_;
    std::vector<double> targets_;
    std::size_t degree_;
    std::size_t dim_;
    std::size_t width_;
    ModelShape shape_;
    LossKind loss_;
};

struct GdResult {
    TrainedModel model;
    /// Batch loss after 0, 1, 2, ... updates.
    std::vector<double> loss_history;
    std::size_t epochs = 0;
    bool converged = false;
};

/// Full-batch gradient descent on normalised data with targets in [-1, 1].
/// Throws TrainingDiverged when the loss blows up.
[[nodiscard]] GdResult gd_train(const Dataset &data, const GdConfig &config, ModelShape shape);

/// Label clipping ahead of arctanh: +1 -> 1 - epsilon, -1 -> -1 + epsilon.
[[nodiscard]] double clip_label(double y, double epsilon) noexcept;

struct LlsResult {
    TrainedModel model;
    /// ||X S - Y||_2 in arctanh space.
    double residual = 0.0;
};

/// One-shot polynomial least squares on normalised data.
[[nodiscard]] LlsResult lls_train(const Dataset &data, const LlsConfig &config);

/// Preprocessing fitted on the training split.
struct Preprocessing {
    bool normalize_inputs = true;
    bool scale_targets = false;

    friend bool operator==(const Preprocessing &, const Preprocessing &) = default;
};

struct TrainerSpec {
    ModelKind method = ModelKind::lls;
    GdConfig gd;
    LlsConfig lls;

    [[nodiscard]] std::size_t degree() const noexcept {
        return method == ModelKind::lls ? lls.degree : gd.degree;
    }
    void set_degree(std::size_t k) noexcept {
        gd.degree = k;
        lls.degree = k;
    }
};

struct FitResult {
    TrainedModel model;
    std::vector<double> loss_history;
    std::size_t epochs = 0;
    bool converged = false;
    double lls_residual = 0.0;
};

/// Fits normalisation on `raw`, trains, and stores the normalisation in the
/// returned model.
[[nodiscard]] FitResult fit(const Dataset &raw, const TrainerSpec &spec,
                            const Preprocessing &prep);

} // namespace sqqnn::train
