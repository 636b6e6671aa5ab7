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
#include "sqqnn/linalg.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "sqqnn/errors.hpp"
#include "support/oracles.hpp"

namespace {

using namespace sqqnn::linalg;
using sqqnn::Errc;
using sqqnn::Error;

RealMatrix random_matrix(oracle::Gen &g, std::size_t r, std::size_t c) {
    return RealMatrix(r, c, g.vec(r * c));
}

double max_abs_vec(const std::vector<double> &v) {
    double m = 0.0;
    for (double e : v) {
        m = std::max(m, std::abs(e));
    }
    return m;
}

/// X^T (X s - y) computed with plain loops.
std::vector<double> residual_gradient(const RealMatrix &x, const std::vector<double> &s,
                                      std::span<const double> y) {
    std::vector<double> r(x.rows(), 0.0);
    for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t j = 0; j < x.cols(); ++j) {
            r[i] += x(i, j) * s[j];
        }
        r[i] -= y[i];
    }
    std::vector<double> g(x.cols(), 0.0);
    for (std::size_t j = 0; j < x.cols(); ++j) {
        for (std::size_t i = 0; i < x.rows(); ++i) {
            g[j] += x(i, j) * r[i];
        }
    }
    return g;
}

double residual_norm(const RealMatrix &x, const std::vector<double> &s, std::span<const double> y) {
    double total = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i) {
        double r = -y[i];
        for (std::size_t j = 0; j < x.cols(); ++j) {
            r += x(i, j) * s[j];
        }
        total += r * r;
    }
    return std::sqrt(total);
}

TEST(RealMatrix, ShapeAndAccess) {
    RealMatrix m{{1, 2, 3}, {4, 5, 6}};
    EXPECT_EQ(m.rows(), 2u);
    EXPECT_EQ(m.cols(), 3u);
    EXPECT_EQ(m(1, 2), 6.0);
    EXPECT_EQ(m.transpose()(2, 1), 6.0);
    EXPECT_THROW((RealMatrix{{1, 2}, {3}}), Error);
}

TEST(RealMatrix, ProductMatchesLoops) {
    oracle::Gen g(1);
    const RealMatrix a = random_matrix(g, 5, 3);
    const RealMatrix b = random_matrix(g, 3, 4);
    const RealMatrix c = a * b;
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < 3; ++k) {
                s += a(i, k) * b(k, j);
            }
            EXPECT_NEAR(c(i, j), s, 1e-14);
        }
    }
    EXPECT_THROW((void)(a * a), Error);
}

TEST(Svd, IdentityHasUnitSingularValues) {
    const Svd s = svd(RealMatrix::identity(3));
    ASSERT_EQ(s.sigma.size(), 3u);
    for (double v : s.sigma) {
        EXPECT_NEAR(v, 1.0, 1e-15);
    }
}

TEST(Svd, DiagonalWithZero) {
    const Svd s = svd(RealMatrix{{3, 0}, {0, 0}});
    EXPECT_NEAR(s.sigma[0], 3.0, 1e-15);
    EXPECT_NEAR(s.sigma[1], 0.0, 1e-15);
}

TEST(Svd, ReconstructsRandomMatrices) {
    oracle::Gen g(2);
    for (int t = 0; t < 50; ++t) {
        const std::size_t r = g.size(1, 20);
        const std::size_t c = g.size(1, 20);
        const RealMatrix a = random_matrix(g, r, c);
        const Svd s = svd(a);
        const RealMatrix back = s.u * RealMatrix::diagonal(s.sigma) * s.v.transpose();
        EXPECT_LE(frobenius_norm(back - a), 1e-8 * std::max(1.0, frobenius_norm(a)));
        for (std::size_t i = 0; i + 1 < s.sigma.size(); ++i) {
            EXPECT_GE(s.sigma[i], s.sigma[i + 1]);
            EXPECT_GE(s.sigma[i + 1], 0.0);
        }
        const std::size_t k = s.sigma.size();
        EXPECT_LE(max_abs(s.u.transpose() * s.u - RealMatrix::identity(k)), 1e-10);
        EXPECT_LE(max_abs(s.v.transpose() * s.v - RealMatrix::identity(k)), 1e-10);
    }
}

TEST(Svd, RejectsNonFinite) {
    RealMatrix a(2, 2, 1.0);
    a(0, 1) = std::numeric_limits<double>::quiet_NaN();
    try {
        (void)svd(a);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), Errc::invalid_argument);
    }
}

TEST(Pinv, IdentityAndSingularDiagonal) {
    EXPECT_LE(max_abs(pinv(RealMatrix::identity(4)) - RealMatrix::identity(4)), 1e-15);
    const RealMatrix p = pinv(RealMatrix{{2, 0}, {0, 0}});
    EXPECT_NEAR(p(0, 0), 0.5, 1e-15);
    EXPECT_NEAR(p(1, 1), 0.0, 1e-15);
    EXPECT_THROW((void)pinv(RealMatrix::identity(2), -1.0), Error);
}

TEST(Pinv, LeftInverseOfFullColumnRank) {
    oracle::Gen g(3);
    const RealMatrix a = random_matrix(g, 10, 4);
    EXPECT_LE(max_abs(pinv(a) * a - RealMatrix::identity(4)), 1e-8);
}

TEST(Pinv, PenroseConditions) {
    oracle::Gen g(4);
    for (int t = 0; t < 60; ++t) {
        const std::size_t r = g.size(1, 50);
        const std::size_t c = g.size(1, 20);
        RealMatrix a = random_matrix(g, r, c);
        if (t % 3 == 0 && c > 1) {
            for (std::size_t i = 0; i < r; ++i) {
                a(i, c - 1) = a(i, 0); // rank deficient
            }
        }
        const RealMatrix p = pinv(a);
        const RealMatrix ap = a * p;
        const RealMatrix pa = p * a;
        EXPECT_LE(max_abs(ap * a - a), 1e-8);
        EXPECT_LE(max_abs(pa * p - p), 1e-8);
        EXPECT_LE(max_abs(ap - ap.transpose()), 1e-8);
        EXPECT_LE(max_abs(pa - pa.transpose()), 1e-8);
    }
}

TEST(LlsSolve, MeanOfTargets) {
    const RealMatrix x{{1}, {1}};
    const std::vector<double> y{2, 4};
    const auto s = lls_solve(x, y);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_NEAR(s[0], 3.0, 1e-14);
}

TEST(LlsSolve, ZeroTargetsGiveZero) {
    oracle::Gen g(5);
    const RealMatrix x = random_matrix(g, 6, 3);
    const std::vector<double> y(6, 0.0);
    for (double v : lls_solve(x, y)) {
        EXPECT_EQ(v, 0.0);
    }
}

TEST(LlsSolve, MatchesNormalEquationsOracle) {
    oracle::Gen g(6);
    for (int t = 0; t < 50; ++t) {
        const std::size_t m = g.size(1, 8);
        const std::size_t n = m + g.size(2, 30);
        const RealMatrix x = random_matrix(g, n, m);
        const std::vector<double> y = g.vec(n);
        const auto s = lls_solve(x, y);
        const auto ref = oracle::normal_equations(std::vector<double>(x.data().begin(), x.data().end()), n, m, y);
        for (std::size_t j = 0; j < m; ++j) {
            EXPECT_NEAR(s[j], ref[j], 1e-8);
        }
    }
}

TEST(LlsSolve, FirstOrderOptimality) {
    oracle::Gen g(7);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = g.size(1, 100);
        const std::size_t m = g.size(1, 30);
        const RealMatrix x = random_matrix(g, n, m);
        const std::vector<double> y = g.vec(n, -5, 5);
        const auto s = lls_solve(x, y);
        const std::vector<double> xty = x.transpose() * std::span<const double>(y);
        EXPECT_LE(max_abs_vec(residual_gradient(x, s, y)), 1e-6 * (1.0 + max_abs_vec(xty)));
    }
}

TEST(LlsSolve, NoRandomPerturbationDoesBetter) {
    oracle::Gen g(8);
    const RealMatrix x = random_matrix(g, 40, 6);
    const std::vector<double> y = g.vec(40);
    const auto s = lls_solve(x, y);
    const double best = residual_norm(x, s, y);
    for (int t = 0; t < 100; ++t) {
        auto p = s;
        for (double &e : p) {
            e += g.uniform(-1e-3, 1e-3);
        }
        EXPECT_GE(residual_norm(x, p, y), best - 1e-12);
    }
}

TEST(LlsSolve, MinimumNormWhenRankDeficient) {
    // duplicated column: any split of the weight fits, the minimum-norm one halves it
    const RealMatrix x{{1, 1}, {2, 2}, {3, 3}};
    const std::vector<double> y{2, 4, 6};
    const auto s = lls_solve(x, y);
    EXPECT_NEAR(s[0], 1.0, 1e-12);
    EXPECT_NEAR(s[1], 1.0, 1e-12);
}

TEST(LlsSolve, AgreesWithPinvOfGram) {
    oracle::Gen g(9);
    for (int t = 0; t < 30; ++t) {
        const RealMatrix x = random_matrix(g, 30, 5);
        const std::vector<double> y = g.vec(30);
        const RealMatrix xt = x.transpose();
        const auto viagram = pinv(xt * x) * std::span<const double>(xt * std::span<const double>(y));
        const auto direct = lls_solve(x, y);
        for (std::size_t j = 0; j < 5; ++j) {
            EXPECT_NEAR(direct[j], viagram[j], 1e-6);
        }
    }
}

TEST(LlsSolve, WideSystemsUseMinimumNorm) {
    oracle::Gen g(10);
    const RealMatrix x = random_matrix(g, 3, 7);
    const std::vector<double> y = g.vec(3);
    const auto s = lls_solve(x, y);
    EXPECT_LE(residual_norm(x, s, y), 1e-10);
    const auto p = pinv(x) * std::span<const double>(y);
    for (std::size_t j = 0; j < 7; ++j) {
        EXPECT_NEAR(s[j], p[j], 1e-10);
    }
}

TEST(LlsSolve, RejectsBadArguments) {
    const RealMatrix x{{1}, {1}};
    const std::vector<double> short_y{1};
    EXPECT_THROW((void)lls_solve(x, short_y), Error);
    const std::vector<double> y{1, 2};
    EXPECT_THROW((void)lls_solve(x, y, -1.0), Error);
}

TEST(DefaultRcond, EpsTimesLargerDimension) {
    EXPECT_EQ(default_rcond(10, 3), std::numeric_limits<double>::epsilon() * 10);
    EXPECT_EQ(default_rcond(2, 30), std::numeric_limits<double>::epsilon() * 30);
}

} // namespace
