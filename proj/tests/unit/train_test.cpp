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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "sqqnn/errors.hpp"
#include "sqqnn/linalg.hpp"
#include "support/oracles.hpp"

namespace {

using namespace sqqnn::train;
using sqqnn::Errc;
using sqqnn::Error;
using sqqnn::data::Dataset;
using sqqnn::linalg::RealMatrix;

Dataset random_dataset(oracle::Gen &g, std::size_t n, std::size_t p, bool labels) {
    Dataset d;
    d.inputs = RealMatrix(n, p);
    for (double &v : d.inputs.data()) {
        v = g.uniform(-1, 1);
    }
    d.targets.resize(n);
    for (double &t : d.targets) {
        t = labels ? g.sign() : g.uniform(-1, 1);
    }
    return d;
}

TEST(Loss, MseExamples) {
    const std::vector<double> p{1.0, 0.0, -0.5};
    const std::vector<double> t{1.0, 1.0, 0.5};
    EXPECT_DOUBLE_EQ(mse_loss(p, t), 2.0 / 3.0);
    EXPECT_EQ(mse_loss(t, t), 0.0);
}

TEST(Loss, HingeExamples) {
    const std::vector<double> p{1.0, -0.5, 0.25};
    const std::vector<double> t{1.0, 1.0, -1.0};
    // max(0, 1 - y*yhat): 0, 1.5, 1.25
    EXPECT_DOUBLE_EQ(hinge_loss(p, t), 2.75 / 3.0);
}

TEST(Loss, LengthMismatchThrows) {
    const std::vector<double> a{1.0}, b{1.0, 2.0};
    EXPECT_THROW((void)mse_loss(a, b), Error);
    EXPECT_THROW((void)hinge_loss(a, b), Error);
}

TEST(Names, RoundTrip) {
    for (ModelKind k : {ModelKind::gd_full, ModelKind::gd_reduced, ModelKind::lls}) {
        EXPECT_EQ(parse_model_kind(to_string(k)), k);
    }
    for (LossKind k : {LossKind::mse, LossKind::hinge}) {
        EXPECT_EQ(parse_loss_kind(to_string(k)), k);
    }
    EXPECT_THROW((void)parse_model_kind("adam"), Error);
}

TEST(GdObjective, ParameterLayout) {
    oracle::Gen g(1);
    const Dataset d = random_dataset(g, 5, 3, false);
    EXPECT_EQ(GdObjective(d, 2, ModelShape::reduced, LossKind::mse).parameter_count(), 7u);
    EXPECT_EQ(GdObjective(d, 2, ModelShape::full, LossKind::mse).parameter_count(), 3u * 7u + 2u);
}

TEST(GdObjective, LossMatchesDirectEvaluation) {
    oracle::Gen g(2);
    const Dataset d = random_dataset(g, 12, 2, false);
    const GdObjective obj(d, 2, ModelShape::full, LossKind::mse);
    const std::vector<double> params = g.vec(obj.parameter_count());
    const std::size_t m = obj.coefficients_per_angle();
    double acc = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto x = d.inputs.row(i);
        const double a = oracle::horner_angle({params.data(), m}, 2, 2, x);
        const double b = oracle::horner_angle({params.data() + m, m}, 2, 2, x);
        const double c = oracle::horner_angle({params.data() + 2 * m, m}, 2, 2, x);
        const auto u = oracle::mul(oracle::rz(c), oracle::mul(oracle::ry(b), oracle::rz(a)));
        const double y = oracle::expectation(u, params[3 * m], params[3 * m + 1]);
        acc += (y - d.targets[i]) * (y - d.targets[i]);
    }
    EXPECT_NEAR(obj.loss(params), acc / static_cast<double>(d.size()), 1e-12);
}

void check_gradient(ModelShape shape, LossKind loss, std::uint64_t seed, int draws) {
    oracle::Gen g(seed);
    for (int t = 0; t < draws; ++t) {
        const std::size_t k = g.size(1, 3);
        const std::size_t p = g.size(1, 3);
        const Dataset d = random_dataset(g, g.size(3, 10), p, loss == LossKind::hinge);
        const GdObjective obj(d, k, shape, loss);
        const std::vector<double> params = g.vec(obj.parameter_count(), -1.5, 1.5);
        std::vector<double> grad(params.size());
        (void)obj.evaluate(params, grad);
        const auto f = [&](std::span<const double> q) { return obj.loss(q); };
        for (std::size_t i = 0; i < params.size(); ++i) {
            const double fd = oracle::central_difference(f, params, i, 1e-6);
            ASSERT_NEAR(grad[i], fd, 1e-6 * std::max(1.0, std::abs(fd)))
                << "draw " << t << " parameter " << i;
        }
    }
}

TEST(GdObjective, ReducedGradientMatchesFiniteDifferences) {
    check_gradient(ModelShape::reduced, LossKind::mse, 11, 150);
}

TEST(GdObjective, FullGradientMatchesFiniteDifferences) {
    check_gradient(ModelShape::full, LossKind::mse, 12, 100);
}

TEST(GdObjective, RejectsOutOfRangeTargets) {
    Dataset d;
    d.inputs = RealMatrix{{0.0}};
    d.targets = {2.0};
    EXPECT_THROW(GdObjective(d, 1, ModelShape::reduced, LossKind::mse), Error);
}

TEST(GdTrain, ZeroGradientLeavesParametersAlone) {
    // cos(0) = 1 matches every target, so the loss and gradient are zero
    Dataset d;
    d.inputs = RealMatrix{{0.3}, {-0.7}};
    d.targets = {1.0, 1.0};
    GdConfig c;
    c.init_scale = 0.0;
    c.max_epochs = 5;
    const GdResult r = gd_train(d, c, ModelShape::reduced);
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(r.epochs, 0u);
    for (double v : r.model.beta.flat()) {
        EXPECT_EQ(v, 0.0);
    }
}

TEST(GdTrain, SmallStepsDescend) {
    oracle::Gen g(21);
    for (int t = 0; t < 20; ++t) {
        const Dataset d = random_dataset(g, 20, 2, false);
        GdConfig c;
        c.learning_rate = 1e-3;
        c.max_epochs = 1;
        c.init_scale = 1.0;
        c.seed = static_cast<std::uint64_t>(t);
        c.degree = 2;
        for (ModelShape s : {ModelShape::reduced, ModelShape::full}) {
            const GdResult r = gd_train(d, c, s);
            ASSERT_EQ(r.loss_history.size(), 2u);
            EXPECT_LE(r.loss_history[1], r.loss_history[0]);
        }
    }
}

TEST(GdTrain, HistoryIndexesUpdates) {
    oracle::Gen g(4);
    const Dataset d = random_dataset(g, 10, 1, false);
    GdConfig c;
    c.max_epochs = 25;
    const GdResult r = gd_train(d, c, ModelShape::reduced);
    EXPECT_EQ(r.epochs, 25u);
    EXPECT_EQ(r.loss_history.size(), 26u);
    const GdObjective obj(d, 1, ModelShape::reduced, LossKind::mse);
    EXPECT_DOUBLE_EQ(obj.loss(r.model.beta.flat()), r.loss_history.back());
}

TEST(GdTrain, DeterministicForSeed) {
    oracle::Gen g(5);
    const Dataset d = random_dataset(g, 10, 2, true);
    GdConfig c;
    c.seed = 77;
    c.max_epochs = 40;
    c.init_scale = 1.0;
    const GdResult a = gd_train(d, c, ModelShape::full);
    const GdResult b = gd_train(d, c, ModelShape::full);
    EXPECT_EQ(a.model, b.model);
    EXPECT_EQ(a.loss_history, b.loss_history);
}

TEST(GdTrain, LearnsAndGateWithFullNeuron) {
    const Dataset d = sqqnn::data::gen_logic_gate(sqqnn::data::LogicGate::and_gate);
    GdConfig c;
    c.learning_rate = 0.5;
    c.init_scale = 1.0;
    c.seed = 1;
    c.max_epochs = 500;
    c.target_loss = 5e-3;
    const GdResult r = gd_train(d, c, ModelShape::full);
    EXPECT_TRUE(r.converged);
    EXPECT_LE(r.loss_history.back(), 5e-3);
    for (std::size_t i = 0; i < d.size(); ++i) {
        EXPECT_EQ(predict_class(r.model, d.inputs.row(i)), static_cast<int>(d.targets[i]));
    }
}

TEST(GdTrain, ReducedModelFitsXorExactly) {
    // cos(pi/2 (x1 + x2)) reproduces XOR on the corners, so a loss near zero is reachable
    TrainedModel m;
    m.kind = ModelKind::gd_reduced;
    m.dim = 2;
    m.beta = sqqnn::features::PolynomialWeightFunction(1, 2, {0.0, std::numbers::pi / 2,
                                                              std::numbers::pi / 2});
    const Dataset d = sqqnn::data::gen_logic_gate(sqqnn::data::LogicGate::xor_gate);
    for (std::size_t i = 0; i < d.size(); ++i) {
        EXPECT_NEAR(predict(m, d.inputs.row(i)), d.targets[i], 1e-12);
    }
}

TEST(GdTrain, ReducedModelCannotFitAnd) {
    // cos of an affine map has an MSE floor of 3/2 - sqrt(2) on the AND corners
    const double floor = 1.5 - std::numbers::sqrt2;
    const Dataset d = sqqnn::data::gen_logic_gate(sqqnn::data::LogicGate::and_gate);
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        GdConfig c;
        c.learning_rate = 0.2;
        c.init_scale = 3.0;
        c.seed = seed;
        c.max_epochs = 3000;
        const GdResult r = gd_train(d, c, ModelShape::reduced);
        EXPECT_GE(r.loss_history.back(), floor - 1e-9);
        best = std::min(best, r.loss_history.back());
    }
    EXPECT_NEAR(best, floor, 1e-4);
}

TEST(GdTrain, FrozenGroupsStayAtZero) {
    oracle::Gen g(6);
    const Dataset d = random_dataset(g, 10, 1, false);
    GdConfig c;
    c.init_scale = 1.0;
    c.max_epochs = 10;
    c.trainable.theta = false;
    c.trainable.omega = false;
    const GdResult r = gd_train(d, c, ModelShape::full);
    EXPECT_EQ(r.model.theta, 0.0);
    EXPECT_EQ(r.model.omega, 0.0);
}

TEST(GdTrain, DivergenceRaises) {
    oracle::Gen g(7);
    const Dataset d = random_dataset(g, 10, 2, false);
    GdConfig c;
    c.learning_rate = 1e308;
    c.init_scale = 1.0;
    c.max_epochs = 50;
    EXPECT_THROW((void)gd_train(d, c, ModelShape::reduced), sqqnn::TrainingDiverged);

    GdConfig tight;
    tight.divergence_limit = 1e-9;
    tight.init_scale = 1.0;
    try {
        (void)gd_train(d, tight, ModelShape::reduced);
        FAIL() << "expected divergence";
    } catch (const sqqnn::TrainingDiverged &e) {
        EXPECT_EQ(e.code(), Errc::training_diverged);
        EXPECT_EQ(e.epoch(), 0u);
    }
}

TEST(GdTrain, InvalidConfig) {
    oracle::Gen g(8);
    const Dataset d = random_dataset(g, 4, 1, false);
    GdConfig c;
    c.learning_rate = 0.0;
    EXPECT_THROW((void)gd_train(d, c, ModelShape::reduced), Error);
    c = GdConfig{};
    c.degree = 0;
    EXPECT_THROW((void)gd_train(d, c, ModelShape::reduced), Error);
}

TEST(GdTrain, HingeLossTrainsSeparableSet) {
    Dataset d;
    d.inputs = RealMatrix{{-1.0}, {-0.5}, {0.5}, {1.0}};
    d.targets = {-1, -1, 1, 1};
    GdConfig c;
    c.loss = LossKind::hinge;
    c.learning_rate = 0.2;
    c.max_epochs = 500;
    c.init_scale = 0.5;
    c.seed = 2;
    const GdResult r = gd_train(d, c, ModelShape::full);
    EXPECT_LT(r.loss_history.back(), r.loss_history.front());
    for (std::size_t i = 0; i < d.size(); ++i) {
        EXPECT_EQ(predict_class(r.model, d.inputs.row(i)), static_cast<int>(d.targets[i]));
    }
}

TEST(Lls, ClipLabel) {
    EXPECT_EQ(clip_label(1.0, 1e-16), std::nextafter(1.0, 0.0));
    EXPECT_EQ(clip_label(-1.0, 1e-16), std::nextafter(-1.0, 0.0));
    EXPECT_EQ(clip_label(0.25, 1e-16), 0.25);
    const double once = clip_label(1.0, 1e-3);
    EXPECT_EQ(clip_label(once, 1e-3), once);
}

TEST(Lls, OneDimensionalExactFit) {
    // tanh(0.5 + 2x) sampled at three points is recovered exactly
    Dataset d;
    d.inputs = RealMatrix{{-0.5}, {0.0}, {0.5}};
    for (std::size_t i = 0; i < 3; ++i) {
        d.targets.push_back(std::tanh(0.5 + 2.0 * d.inputs(i, 0)));
    }
    const LlsResult r = lls_train(d, LlsConfig{});
    EXPECT_NEAR(r.model.beta.flat()[0], 0.5, 1e-12);
    EXPECT_NEAR(r.model.beta.flat()[1], 2.0, 1e-12);
    EXPECT_LT(r.residual, 1e-12);
}

TEST(Lls, MatchesNormalEquations) {
    oracle::Gen g(31);
    for (int t = 0; t < 30; ++t) {
        const std::size_t k = g.size(1, 3);
        const std::size_t p = g.size(1, 3);
        const Dataset d = random_dataset(g, g.size(20, 60), p, true);
        LlsConfig c;
        c.degree = k;
        c.epsilon = 1e-3;
        const LlsResult r = lls_train(d, c);
        const RealMatrix x = sqqnn::features::build_design_matrix(d.inputs, k);
        std::vector<double> y;
        for (double t2 : d.targets) {
            y.push_back(std::atanh(clip_label(t2, 1e-3)));
        }
        const std::vector<double> xs(x.data().begin(), x.data().end());
        const auto s = oracle::normal_equations(xs, x.rows(), x.cols(), y);
        for (std::size_t i = 0; i < s.size(); ++i) {
            EXPECT_NEAR(r.model.beta.flat()[i], s[i], 1e-6 * std::max(1.0, std::abs(s[i])));
        }
    }
}

TEST(Lls, ResidualNonIncreasingInDegree) {
    oracle::Gen g(32);
    const Dataset d = random_dataset(g, 80, 2, true);
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k <= 6; ++k) {
        LlsConfig c;
        c.degree = k;
        c.epsilon = 1e-6;
        const double res = lls_train(d, c).residual;
        EXPECT_LE(res, previous * (1 + 1e-9));
        previous = res;
    }
}

TEST(Lls, RejectsLabelOutsideRange) {
    Dataset d;
    d.inputs = RealMatrix{{0.0}, {1.0}};
    d.targets = {1.0, 1.5};
    try {
        (void)lls_train(d, LlsConfig{});
        FAIL() << "expected invalid label";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), Errc::invalid_label);
    }
    LlsConfig c;
    c.epsilon = 0.0;
    d.targets = {1.0, -1.0};
    EXPECT_THROW((void)lls_train(d, c), Error);
}

TEST(Predict, ZeroModelsAndTies) {
    TrainedModel lls;
    const std::vector<double> x{0.5};
    EXPECT_EQ(predict(lls, x), 0.0);
    EXPECT_EQ(predict_class(lls, x), 1);
    TrainedModel reduced;
    reduced.kind = ModelKind::gd_reduced;
    EXPECT_EQ(predict(reduced, x), 1.0);
}

TEST(Predict, ReducedIsCosineOfAngle) {
    oracle::Gen g(41);
    for (int t = 0; t < 100; ++t) {
        TrainedModel m;
        m.kind = ModelKind::gd_reduced;
        m.degree = 2;
        m.dim = 2;
        m.beta = sqqnn::features::PolynomialWeightFunction(2, 2, g.vec(5, -3, 3));
        const auto x = g.vec(2);
        EXPECT_NEAR(predict(m, x), std::cos(oracle::horner_angle(m.beta.flat(), 2, 2, x)), 1e-12);
    }
}

TEST(Predict, FullIsCircuitExpectation) {
    oracle::Gen g(42);
    for (int t = 0; t < 100; ++t) {
        TrainedModel m;
        m.kind = ModelKind::gd_full;
        m.dim = 1;
        m.alpha = sqqnn::features::PolynomialWeightFunction(1, 1, g.vec(2, -3, 3));
        m.beta = sqqnn::features::PolynomialWeightFunction(1, 1, g.vec(2, -3, 3));
        m.gamma = sqqnn::features::PolynomialWeightFunction(1, 1, g.vec(2, -3, 3));
        m.theta = g.angle();
        m.omega = g.angle();
        const auto x = g.vec(1);
        const auto u = oracle::mul(oracle::rz(m.gamma->flat()[0] + m.gamma->flat()[1] * x[0]),
                                   oracle::mul(oracle::ry(m.beta.flat()[0] + m.beta.flat()[1] * x[0]),
                                               oracle::rz(m.alpha->flat()[0] + m.alpha->flat()[1] * x[0])));
        EXPECT_NEAR(predict(m, x), oracle::expectation(u, m.theta, m.omega), 1e-12);
    }
}

TEST(Predict, DimensionMismatchThrows) {
    TrainedModel m;
    m.dim = 1;
    const std::vector<double> x{0.1, 0.2};
    EXPECT_THROW((void)predict(m, x), Error);
}

TEST(Fit, StoresNormalizationAndPredictsOriginalScale) {
    Dataset d;
    d.inputs = RealMatrix{{10.0}, {20.0}, {30.0}};
    d.targets = {100.0, 150.0, 200.0};
    TrainerSpec spec;
    spec.method = ModelKind::gd_reduced;
    spec.gd.max_epochs = 1;
    const FitResult r = fit(d, spec, Preprocessing{true, true});
    ASSERT_TRUE(r.model.normalization.inputs.has_value());
    ASSERT_TRUE(r.model.normalization.target.has_value());
    EXPECT_EQ(r.model.normalization.inputs->min[0], 10.0);
    EXPECT_EQ(r.model.normalization.target->max, 200.0);
    const auto scaled = scaled_targets(r.model, d);
    EXPECT_DOUBLE_EQ(scaled[0], -1.0);
    EXPECT_DOUBLE_EQ(scaled[2], 1.0);
    const std::vector<double> x{20.0};
    EXPECT_DOUBLE_EQ(predict_original(r.model, x),
                     r.model.normalization.target->invert(predict(r.model, x)));
}

} // namespace
