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

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sqqnn/errors.hpp"

namespace sqqnn::linalg {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMajor>;

ConstMap view(const RealMatrix &a) {
    return ConstMap(a.data().data(), static_cast<Eigen::Index>(a.rows()),
                    static_cast<Eigen::Index>(a.cols()));
}

RealMatrix from_eigen(const Eigen::MatrixXd &m) {
    RealMatrix out(static_cast<std::size_t>(m.rows()),
                   static_cast<std::size_t>(m.cols()));
    Eigen::Map<RowMajor>(out.data().data(), m.rows(), m.cols()) = m;
    return out;
}

void require_usable(const RealMatrix &a, const char *what) {
    if (a.empty()) {
        fail(Errc::invalid_argument, std::string(what) + ": empty matrix");
    }
    if (!a.all_finite()) {
        fail(Errc::invalid_argument, std::string(what) + ": non-finite entry");
    }
}

std::string shape(const RealMatrix &a) {
    std::ostringstream out;
    out << a.rows() << "x" << a.cols();
    return out.str();
}

Eigen::BDCSVD<Eigen::MatrixXd> decompose(const Eigen::MatrixXd &a) {
    Eigen::BDCSVD<Eigen::MatrixXd> dec(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (dec.info() != Eigen::Success) {
        fail(Errc::numeric_failure, "singular value decomposition did not converge");
    }
    return dec;
}

// Reciprocals of the retained singular values, zero for the truncated ones.
Eigen::VectorXd inverted_spectrum(const Eigen::VectorXd &sigma, double rcond) {
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(sigma.size());
    if (sigma.size() == 0) {
        return inv;
    }
    const double cutoff = rcond * sigma(0);
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) > cutoff && sigma(i) > 0.0) {
            inv(i) = 1.0 / sigma(i);
        }
    }
    return inv;
}

} // namespace

RealMatrix::RealMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

RealMatrix::RealMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        fail(Errc::invalid_argument, "matrix entry count does not match its shape");
    }
}

RealMatrix::RealMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
    data_.reserve(rows_ * cols_);
    for (const auto &r : rows) {
        if (r.size() != cols_) {
            fail(Errc::invalid_argument, "ragged matrix literal");
        }
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

RealMatrix RealMatrix::identity(std::size_t n) {
    RealMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        out(i, i) = 1.0;
    }
    return out;
}

RealMatrix RealMatrix::diagonal(std::span<const double> values) {
    RealMatrix out(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        out(i, i) = values[i];
    }
    return out;
}

RealMatrix RealMatrix::transpose() const {
    RealMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            out(c, r) = (*this)(r, c);
        }
    }
    return out;
}

bool RealMatrix::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(),
                       [](double v) { return std::isfinite(v); });
}

RealMatrix operator*(const RealMatrix &a, const RealMatrix &b) {
    if (a.cols() != b.rows()) {
        fail(Errc::invalid_argument,
             "matrix product shape mismatch: " + shape(a) + " * " + shape(b));
    }
    RealMatrix out(a.rows(), b.cols());
    Eigen::Map<RowMajor>(out.data().data(), static_cast<Eigen::Index>(out.rows()),
                         static_cast<Eigen::Index>(out.cols())) = view(a) * view(b);
    return out;
}

std::vector<double> operator*(const RealMatrix &a, std::span<const double> x) {
    if (a.cols() != x.size()) {
        fail(Errc::invalid_argument, "matrix-vector shape mismatch");
    }
    std::vector<double> out(a.rows(), 0.0);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        const auto row = a.row(r);
        double acc = 0.0;
        for (std::size_t c = 0; c < row.size(); ++c) {
            acc += row[c] * x[c];
        }
        out[r] = acc;
    }
    return out;
}

RealMatrix operator-(const RealMatrix &a, const RealMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        fail(Errc::invalid_argument, "matrix difference shape mismatch");
    }
    RealMatrix out = a;
    auto dst = out.data();
    auto src = b.data();
    for (std::size_t i = 0; i < dst.size(); ++i) {
        dst[i] -= src[i];
    }
    return out;
}

double frobenius_norm(const RealMatrix &a) { return view(a).norm(); }

double max_abs(const RealMatrix &a) {
    return a.empty() ? 0.0 : view(a).cwiseAbs().maxCoeff();
}

Svd svd(const RealMatrix &a) {
    require_usable(a, "svd");
    const auto dec = decompose(view(a));
    Svd out;
    out.u = from_eigen(dec.matrixU());
    out.v = from_eigen(dec.matrixV());
    const Eigen::VectorXd &s = dec.singularValues();
    out.sigma.assign(s.data(), s.data() + s.size());
    return out;
}

double default_rcond(std::size_t rows, std::size_t cols) noexcept {
    return std::numeric_limits<double>::epsilon() *
           static_cast<double>(std::max(rows, cols));
}

RealMatrix pinv(const RealMatrix &a, double rcond) {
    if (!(rcond >= 0.0)) {
        fail(Errc::invalid_argument, "pinv: rcond must be non-negative");
    }
    require_usable(a, "pinv");
    const auto dec = decompose(view(a));
    const Eigen::VectorXd inv = inverted_spectrum(dec.singularValues(), rcond);
    const Eigen::MatrixXd p =
        dec.matrixV() * inv.asDiagonal() * dec.matrixU().transpose();
    return from_eigen(p);
}

RealMatrix pinv(const RealMatrix &a) {
    return pinv(a, default_rcond(a.rows(), a.cols()));
}

std::vector<double> lls_solve(const RealMatrix &x, std::span<const double> y,
                              double rcond) {
    if (!(rcond >= 0.0)) {
        fail(Errc::invalid_argument, "lls_solve: rcond must be non-negative");
    }
    require_usable(x, "lls_solve");
    if (y.size() != x.rows()) {
        std::ostringstream msg;
        msg << "lls_solve: design matrix has " << x.rows() << " rows but target has "
            << y.size() << " entries";
        fail(Errc::invalid_argument, msg.str());
    }
    if (!std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); })) {
        fail(Errc::invalid_argument, "lls_solve: non-finite target");
    }

    const Eigen::Map<const Eigen::VectorXd> rhs(y.data(), static_cast<Eigen::Index>(y.size()));
    const auto n = static_cast<Eigen::Index>(x.rows());
    const auto m = static_cast<Eigen::Index>(x.cols());
    Eigen::VectorXd s;
    if (n > m) {
        // Tall system: reduce to the m x m triangular factor first. The
        // singular values of R equal those of X, so truncation is unchanged.
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(view(x));
        Eigen::VectorXd qty = rhs;
        qty.applyOnTheLeft(qr.householderQ().adjoint());
        const Eigen::MatrixXd r = qr.matrixQR().topRows(m).triangularView<Eigen::Upper>();
        const auto dec = decompose(r);
        const Eigen::VectorXd inv = inverted_spectrum(dec.singularValues(), rcond);
        s = dec.matrixV() * (inv.asDiagonal() * (dec.matrixU().transpose() * qty.head(m)));
    } else {
        const auto dec = decompose(view(x));
        const Eigen::VectorXd inv = inverted_spectrum(dec.singularValues(), rcond);
        s = dec.matrixV() * (inv.asDiagonal() * (dec.matrixU().transpose() * rhs));
    }
    return {s.data(), s.data() + s.size()};
}

std::vector<double> lls_solve(const RealMatrix &x, std::span<const double> y) {
    return lls_solve(x, y, default_rcond(x.rows(), x.cols()));
}

} // namespace sqqnn::linalg
