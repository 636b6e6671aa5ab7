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
#include <initializer_list>
#include <span>
#include <vector>

namespace sqqnn::linalg {

/// Dense row-major real matrix.
class RealMatrix {
  public:
    RealMatrix() = default;
    RealMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    RealMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);
    RealMatrix(std::initializer_list<std::initializer_list<double>> rows);

    [[nodiscard]] static RealMatrix identity(std::size_t n);
    [[nodiscard]] static RealMatrix diagonal(std::span<const double> values);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

    [[nodiscard]] double &operator()(std::size_t r, std::size_t c) {
        return data_[r * cols_ + c];
    }
    [[nodiscard]] double operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }

    [[nodiscard]] std::span<double> row(std::size_t r) {
        return {data_.data() + r * cols_, cols_};
    }
    [[nodiscard]] std::span<const double> row(std::size_t r) const {
        return {data_.data() + r * cols_, cols_};
    }

    [[nodiscard]] std::span<const double> data() const noexcept { return data_; }
    [[nodiscard]] std::span<double> data() noexcept { return data_; }

    [[nodiscard]] RealMatrix transpose() const;
    [[nodiscard]] bool all_finite() const noexcept;

    friend bool operator==(const RealMatrix &, const RealMatrix &) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

[[nodiscard]] RealMatrix operator*(const RealMatrix &a, const RealMatrix &b);
[[nodiscard]] std::vector<double> operator*(const RealMatrix &a,
                                            std::span<const double> x);
[[nodiscard]] RealMatrix operator-(const RealMatrix &a, const RealMatrix &b);

[[nodiscard]] double frobenius_norm(const RealMatrix &a);
[[nodiscard]] double max_abs(const RealMatrix &a);

/// Thin singular value decomposition A = U diag(sigma) V^T with
/// min(rows, cols) singular values in non-increasing order.
struct Svd {
    RealMatrix u;
    std::vector<double> sigma;
    RealMatrix v;
};

[[nodiscard]] Svd svd(const RealMatrix &a);

/// Truncation threshold used when rcond is not given: machine epsilon
/// times the larger dimension.
[[nodiscard]] double default_rcond(std::size_t rows, std::size_t cols) noexcept;

/// Moore-Penrose pseudoinverse; singular values at or below
/// rcond * sigma_max are treated as zero.
[[nodiscard]] RealMatrix pinv(const RealMatrix &a, double rcond);
[[nodiscard]] RealMatrix pinv(const RealMatrix &a);

/// Minimum-norm least-squares solution of X S = Y. Applies the
/// pseudoinverse of X directly instead of forming X^T X.
[[nodiscard]] std::vector<double> lls_solve(const RealMatrix &x,
                                            std::span<const double> y,
                                            double rcond);
[[nodiscard]] std::vector<double> lls_solve(const RealMatrix &x,
                                            std::span<const double> y);

} // namespace sqqnn::linalg
