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
#include "sqqnn/train.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "sqqnn/errors.hpp"
#include "sqqnn/linalg.hpp"

namespace sqqnn::train {

namespace {

void require_same_length(std::span<const double> a, std::span<const double> b,
                         const char *what) {
    if (a.size() != b.size()) {
        std::ostringstream msg;
        msg << what << ": " << a.size() << " predictions vs " << b.size() << " targets";
        fail(Errc::invalid_argument, msg.str());
    }
    require(!a.empty(), Errc::invalid_argument, std::string(what) + ": empty input");
}

void require_model_dim(const TrainedModel &model, std::size_t actual) {
    if (model.dim != actual) {
        std::ostringstream msg;
        msg << "model expects " << model.dim << " features, input has " << actual;
        fail(Errc::invalid_argument, msg.str());
    }
}

} // namespace

std::string to_string(ModelKind kind) {
    switch (kind) {
    case ModelKind::gd_full:
        return "gd-full";
    case ModelKind::gd_reduced:
        return "gd-reduced";
    case ModelKind::lls:
        return "lls";
    }
    return "unknown";
}

ModelKind parse_model_kind(const std::string &name) {
    if (name == "gd-full") {
        return ModelKind::gd_full;
    }
    if (name == "gd-reduced" || name == "gd") {
        return ModelKind::gd_reduced;
    }
    if (name == "lls") {
        return ModelKind::lls;
    }
    fail(Errc::invalid_argument, "unknown trainer '" + name + "'");
}

std::string to_string(LossKind loss) { return loss == LossKind::mse ? "mse" : "hinge"; }

LossKind parse_loss_kind(const std::string &name) {
    if (name == "mse") {
        return LossKind::mse;
    }
    if (name == "hinge") {
        return LossKind::hinge;
    }
    fail(Errc::invalid_argument, "unknown loss '" + name + "'");
}

double mse_loss(std::span<const double> predictions, std::span<const double> targets) {
    require_same_length(predictions, targets, "mse_loss");
    double acc = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const double d = predictions[i] - targets[i];
        acc += d * d;
    }
    return acc / static_cast<double>(predictions.size());
}

double hinge_loss(std::span<const double> predictions, std::span<const double> targets) {
    require_same_length(predictions, targets, "hinge_loss");
    double acc = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        acc += std::max(0.0, 1.0 - predictions[i] * targets[i]);
    }
    return acc / static_cast<double>(predictions.size());
}

void GdConfig::validate() const {
    require(learning_rate > 0.0 && std::isfinite(learning_rate), Errc::invalid_argument,
            "learning rate must be a positive number");
    require(max_epochs >= 1, Errc::invalid_argument, "max_epochs must be >= 1");
    require(target_loss >= 0.0, Errc::invalid_argument, "target loss must be >= 0");
    require(init_scale >= 0.0, Errc::invalid_argument, "init scale must be >= 0");
    require(degree >= 1, Errc::invalid_argument, "K must be >= 1");
}

void LlsConfig::validate() const {
    require(degree >= 1, Errc::invalid_argument, "K must be >= 1");
    require(epsilon > 0.0 && epsilon < 1.0, Errc::invalid_argument,
            "epsilon must lie in (0, 1)");
    require(!rcond || *rcond >= 0.0, Errc::invalid_argument, "rcond must be >= 0");
}

void TrainedModel::validate() const {
    require(format_version == kFormatVersion, Errc::unsupported_format,
            "unsupported model format version " + std::to_string(format_version));
    auto check = [&](const PolynomialWeightFunction &f, const char *name) {
        if (f.degree() != degree || f.dim() != dim) {
            std::ostringstream msg;
            msg << name << " polynomial has K=" << f.degree() << ", p=" << f.dim()
                << " but the model declares K=" << degree << ", p=" << dim;
            fail(Errc::invalid_argument, msg.str());
        }
    };
    check(beta, "beta");
    if (kind == ModelKind::gd_full) {
        require(alpha.has_value() && gamma.has_value(), Errc::invalid_argument,
                "gd-full model needs alpha and gamma polynomials");
        check(*alpha, "alpha");
        check(*gamma, "gamma");
    } else {
        require(!alpha && !gamma && theta == 0.0 && omega == 0.0, Errc::invalid_argument,
                to_string(kind) + " model carries only the beta polynomial");
    }
    if (normalization.inputs) {
        require(normalization.inputs->dim() == dim, Errc::invalid_argument,
                "input normalisation width differs from the model dimension");
    }
}

qcore::AngleSet angle_set(const TrainedModel &model, std::span<const double> x) {
    require_model_dim(model, x.size());
    qcore::AngleSet a;
    a.beta = features::eval_angle(model.beta, x);
    if (model.kind == ModelKind::gd_full) {
        a.alpha = features::eval_angle(*model.alpha, x);
        a.gamma = features::eval_angle(*model.gamma, x);
        a.theta = model.theta;
        a.omega = model.omega;
    }
    return a;
}

double predict_normalized(const TrainedModel &model, std::span<const double> x) {
    switch (model.kind) {
    case ModelKind::lls:
        require_model_dim(model, x.size());
        return std::tanh(features::eval_angle(model.beta, x));
    case ModelKind::gd_reduced:
        require_model_dim(model, x.size());
        return std::cos(features::eval_angle(model.beta, x));
    case ModelKind::gd_full:
        return std::clamp(qcore::expectation_closed_form(angle_set(model, x)), -1.0, 1.0);
    }
    fail(Errc::invalid_argument, "unknown model kind");
}

double predict(const TrainedModel &model, std::span<const double> x) {
    require_model_dim(model, x.size());
    if (!model.normalization.inputs) {
        return predict_normalized(model, x);
    }
    std::vector<double> scaled(x.begin(), x.end());
    model.normalization.inputs->apply_inplace(scaled);
    return predict_normalized(model, scaled);
}

int predict_class(const TrainedModel &model, std::span<const double> x) {
    return predict(model, x) >= 0.0 ? 1 : -1;
}

double predict_original(const TrainedModel &model, std::span<const double> x) {
    const double y = predict(model, x);
    return model.normalization.target ? model.normalization.target->invert(y) : y;
}

std::vector<double> predict_all(const TrainedModel &model, const Dataset &dataset) {
    require_model_dim(model, dataset.dim());
    std::vector<double> out(dataset.size());
    std::vector<double> scratch(dataset.dim());
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        const auto row = dataset.inputs.row(i);
        if (model.normalization.inputs) {
            std::copy(row.begin(), row.end(), scratch.begin());
            model.normalization.inputs->apply_inplace(scratch);
            out[i] = predict_normalized(model, scratch);
        } else {
            out[i] = predict_normalized(model, row);
        }
    }
    return out;
}

std::vector<double> scaled_targets(const TrainedModel &model, const Dataset &dataset) {
    if (!model.normalization.target) {
        return dataset.targets;
    }
    return features::apply_target_scaling(*model.normalization.target, dataset.targets);
}

GdObjective::GdObjective(const Dataset &data, std::size_t degree, ModelShape shape,
                         LossKind loss)
    : targets_(data.targets), degree_(degree), dim_(data.dim()),
      width_(PolynomialWeightFunction::coefficient_count(degree, data.dim())), shape_(shape),
      loss_(loss) {
    data.require_unit_targets();
    require(degree >= 1, Errc::invalid_argument, "K must be >= 1");
    design_ = features::build_design_matrix(data.inputs, degree);
}

std::size_t GdObjective::parameter_count() const noexcept {
    return shape_ == ModelShape::reduced ? width_ : 3 * width_ + 2;
}

double GdObjective::evaluate(std::span<const double> params, std::span<double> gradient) const {
    require(params.size() == parameter_count(), Errc::invalid_argument,
            "parameter vector has the wrong length");
    const bool want_grad = !gradient.empty();
    if (want_grad) {
        require(gradient.size() == parameter_count(), Errc::invalid_argument,
                "gradient buffer has the wrong length");
        std::fill(gradient.begin(), gradient.end(), 0.0);
    }

    const std::size_t m = width_;
    const bool full = shape_ == ModelShape::full;
    const auto c_alpha = full ? params.subspan(0, m) : std::span<const double>{};
    const auto c_beta = full ? params.subspan(m, m) : params.subspan(0, m);
    const auto c_gamma = full ? params.subspan(2 * m, m) : std::span<const double>{};
    const double theta = full ? params[3 * m] : 0.0;
    const double omega = full ? params[3 * m + 1] : 0.0;

    auto dot = [m](std::span<const double> row, std::span<const double> c) {
        double acc = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            acc += row[j] * c[j];
        }
        return acc;
    };

    const double inv_n = 1.0 / static_cast<double>(targets_.size());
    double total = 0.0;
    for (std::size_t i = 0; i < targets_.size(); ++i) {
        const auto row = design_.row(i);
        qcore::AngleSet a;
        a.beta = dot(row, c_beta);
        if (full) {
            a.alpha = dot(row, c_alpha);
            a.gamma = dot(row, c_gamma);
            a.theta = theta;
            a.omega = omega;
        }
        const auto [y_hat, dy] = qcore::expectation_value_and_gradient(a);
        const double y = targets_[i];

        double dloss = 0.0;
        if (loss_ == LossKind::mse) {
            const double r = y_hat - y;
            total += r * r;
            dloss = 2.0 * r * inv_n;
        } else {
            const double margin = 1.0 - y_hat * y;
            if (margin > 0.0) {
                total += margin;
                dloss = -y * inv_n;
            }
        }
        if (!want_grad || dloss == 0.0) {
            continue;
        }
        if (full) {
            const double ga = dloss * dy.d_alpha;
            const double gb = dloss * dy.d_beta;
            const double gg = dloss * dy.d_gamma;
            for (std::size_t j = 0; j < m; ++j) {
                gradient[j] += ga * row[j];
                gradient[m + j] += gb * row[j];
                gradient[2 * m + j] += gg * row[j];
            }
            gradient[3 * m] += dloss * dy.d_theta;
            gradient[3 * m + 1] += dloss * dy.d_omega;
        } else {
            const double gb = dloss * dy.d_beta;
            for (std::size_t j = 0; j < m; ++j) {
                gradient[j] += gb * row[j];
            }
        }
    }
    return total * inv_n;
}

double GdObjective::loss(std::span<const double> params) const { return evaluate(params, {}); }

TrainedModel GdObjective::to_model(std::span<const double> params) const {
    require(params.size() == parameter_count(), Errc::invalid_argument,
            "parameter vector has the wrong length");
    const std::size_t m = width_;
    auto poly = [&](std::size_t offset) {
        return PolynomialWeightFunction(degree_, dim_,
                                        {params.begin() + static_cast<std::ptrdiff_t>(offset),
                                         params.begin() + static_cast<std::ptrdiff_t>(offset + m)});
    };
    TrainedModel model;
    model.degree = degree_;
    model.dim = dim_;
    if (shape_ == ModelShape::reduced) {
        model.kind = ModelKind::gd_reduced;
        model.beta = poly(0);
    } else {
        model.kind = ModelKind::gd_full;
        model.alpha = poly(0);
        model.beta = poly(m);
        model.gamma = poly(2 * m);
        model.theta = params[3 * m];
        model.omega = params[3 * m + 1];
    }
    return model;
}

GdResult gd_train(const Dataset &data, const GdConfig &config, ModelShape shape) {
    config.validate();
    const GdObjective objective(data, config.degree, shape, config.loss);
    const std::size_t count = objective.parameter_count();
    const std::size_t m = objective.coefficients_per_angle();

    // frozen[i] marks parameters gradient descent must leave alone
    std::vector<bool> frozen(count, !config.trainable.angle_coefficients);
    if (shape == ModelShape::full) {
        frozen[3 * m] = !config.trainable.theta;
        frozen[3 * m + 1] = !config.trainable.omega;
    }

    std::vector<double> params(count, 0.0);
    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> init(-config.init_scale, config.init_scale);
    for (std::size_t i = 0; i < count; ++i) {
        const double draw = config.init_scale > 0.0 ? init(rng) : 0.0;
        if (!frozen[i]) {
            params[i] = draw;
        }
    }

    GdResult result;
    std::vector<double> gradient(count);
    for (std::size_t epoch = 0;; ++epoch) {
        const double loss = objective.evaluate(params, gradient);
        if (!std::isfinite(loss) || loss > config.divergence_limit) {
            throw TrainingDiverged(epoch, loss);
        }
        result.loss_history.push_back(loss);
        if (loss <= config.target_loss) {
            result.converged = true;
            break;
        }
        if (epoch == config.max_epochs) {
            break;
        }
        for (std::size_t i = 0; i < count; ++i) {
            if (!frozen[i]) {
                params[i] -= config.learning_rate * gradient[i];
            }
        }
        ++result.epochs;
    }
    result.model = objective.to_model(params);
    result.model.gd_config = config;
    return result;
}

double clip_label(double y, double epsilon) noexcept {
    if (y == 1.0) {
        return 1.0 - epsilon;
    }
    if (y == -1.0) {
        return -1.0 + epsilon;
    }
    return y;
}

LlsResult lls_train(const Dataset &data, const LlsConfig &config) {
    config.validate();
    data.validate();
    std::vector<double> y(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        y[i] = std::atanh(clip_label(data.targets[i], config.epsilon));
        if (!std::isfinite(y[i])) {
            std::ostringstream msg;
            msg << "label " << data.targets[i] << " at row " << i
                << " has no finite arctanh after clipping";
            fail(Errc::invalid_label, msg.str());
        }
    }
    const linalg::RealMatrix x = features::build_design_matrix(data.inputs, config.degree);
    const double rcond = config.rcond.value_or(linalg::default_rcond(x.rows(), x.cols()));
    std::vector<double> s = linalg::lls_solve(x, y, rcond);

    const std::vector<double> fitted = x * std::span<const double>(s);
    double sq = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        sq += (fitted[i] - y[i]) * (fitted[i] - y[i]);
    }

    LlsResult result;
    result.model.kind = ModelKind::lls;
    result.model.degree = config.degree;
    result.model.dim = data.dim();
    result.model.beta = PolynomialWeightFunction(config.degree, data.dim(), std::move(s));
    result.model.lls_config = config;
    result.residual = std::sqrt(sq);
    return result;
}

FitResult fit(const Dataset &raw, const TrainerSpec &spec, const Preprocessing &prep) {
    raw.validate();
    Dataset prepared = raw;
    NormalizationRecord record;
    if (prep.normalize_inputs) {
        auto [scaled, scaling] = features::normalize_features(raw.inputs);
        prepared.inputs = std::move(scaled);
        record.inputs = std::move(scaling);
    }
    if (prep.scale_targets) {
        record.target = features::fit_target_scaling(raw.targets);
        prepared.targets = features::apply_target_scaling(*record.target, raw.targets);
    }

    FitResult out;
    if (spec.method == ModelKind::lls) {
        LlsResult r = lls_train(prepared, spec.lls);
        out.model = std::move(r.model);
        out.lls_residual = r.residual;
    } else {
        const ModelShape shape =
            spec.method == ModelKind::gd_full ? ModelShape::full : ModelShape::reduced;
        GdResult r = gd_train(prepared, spec.gd, shape);
        out.model = std::move(r.model);
        out.loss_history = std::move(r.loss_history);
        out.epochs = r.epochs;
        out.converged = r.converged;
    }
    out.model.normalization = std::move(record);
    return out;
}

} // namespace sqqnn::train
