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

#include <array>
#include <complex>
#include <span>

namespace sqqnn::qcore {

using Complex = std::complex<double>;

/// Dense 2x2 complex matrix, row-major.
struct Complex2x2 {
    std::array<Complex, 4> m{Complex{1.0}, Complex{0.0}, Complex{0.0},
                             Complex{1.0}};

    [[nodiscard]] static constexpr Complex2x2 identity() { return {}; }
    [[nodiscard]] static Complex2x2 from(Complex a, Complex b, Complex c,
                                         Complex d) {
        return Complex2x2{{a, b, c, d}};
    }

    [[nodiscard]] Complex &operator()(int row, int col) {
        return m[static_cast<std::size_t>(2 * row + col)];
    }
    [[nodiscard]] const Complex &operator()(int row, int col) const {
        return m[static_cast<std::size_t>(2 * row + col)];
    }

    [[nodiscard]] Complex2x2 adjoint() const;
    [[nodiscard]] double max_abs_diff(const Complex2x2 &other) const;
    [[nodiscard]] bool is_unitary(double tol = 1e-12) const;
};

[[nodiscard]] Complex2x2 operator*(const Complex2x2 &a, const Complex2x2 &b);
[[nodiscard]] Complex2x2 operator*(Complex scalar, const Complex2x2 &a);
[[nodiscard]] Complex2x2 operator+(const Complex2x2 &a, const Complex2x2 &b);
[[nodiscard]] Complex2x2 operator-(const Complex2x2 &a, const Complex2x2 &b);

/// Amplitude pair (a0, a1) = a0|0> + a1|1>.
using Amplitudes = std::array<Complex, 2>;

[[nodiscard]] Amplitudes operator*(const Complex2x2 &a, const Amplitudes &v);

/// Input state cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
struct QubitState {
    double theta = 0.0;
    double phi = 0.0;

    [[nodiscard]] Amplitudes amplitudes() const;
};

/// The five circuit angles of one evaluation: the neuron rotations
/// Rz(gamma) Ry(beta) Rz(alpha), the input-state angle theta and the
/// observable angle omega. All in radians, no range restriction.
struct AngleSet {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double theta = 0.0;
    double omega = 0.0;
};

/// Observable lambda0*P0 + lambda1*P1 where P1 projects onto
/// cos(omega/2)|0> + e^{i varphi} sin(omega/2)|1>.
struct Observable {
    double omega = 0.0;
    double varphi = 0.0;
    double lambda0 = 1.0;
    double lambda1 = -1.0;

    [[nodiscard]] Complex2x2 projector1() const;
    [[nodiscard]] Complex2x2 projector0() const;
    /// lambda0 P0 + lambda1 P1 with the projectors above.
    [[nodiscard]] Complex2x2 matrix() const;
    /// Operator whose expectation the circuit reports: U_O^dag diag(lambda0,
    /// lambda1) U_O. Differs from matrix() when omega is not a multiple of
    /// 2 pi, because the measurement is defined through basis_change().
    [[nodiscard]] Complex2x2 measured_operator() const;
    /// Basis change taking the observable's eigenbasis to the computational
    /// basis, so a Z measurement after it realises the observable.
    [[nodiscard]] Complex2x2 basis_change() const;
};

enum class Axis { x, y, z };

/// Euler triple of one neuron, applied as Rz(gamma) Ry(beta) Rz(alpha).
struct NeuronAngles {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
};

[[nodiscard]] Complex2x2 rotation_gate(Axis axis, double angle);
[[nodiscard]] Complex2x2 neuron_matrix(double alpha, double beta, double gamma);
[[nodiscard]] inline Complex2x2 neuron_matrix(const NeuronAngles &n) {
    return neuron_matrix(n.alpha, n.beta, n.gamma);
}

/// Ordered product N_K ... N_2 N_1 of a neuron chain; neurons[0] acts first.
[[nodiscard]] Complex2x2 effective_neuron(std::span<const NeuronAngles> neurons);

/// <O> for an arbitrary unitary in place of the neuron, via explicit
/// matrix-vector products: 1 - 2 |<1| U_O U |psi>|^2 scaled by the
/// observable's eigenvalues.
[[nodiscard]] double expectation_of_unitary(const Complex2x2 &unitary,
                                            const QubitState &state,
                                            const Observable &obs);

/// Matrix-simulation path. Reads alpha, beta, gamma from `angles`; the input
/// state and the observable come from `state` and `obs`, so theta/omega in
/// `angles` are ignored here.
[[nodiscard]] double expectation_matrix(const AngleSet &angles,
                                        const QubitState &state,
                                        const Observable &obs);

/// Convenience overload building the state and observable from the theta and
/// omega fields with zero phases.
[[nodiscard]] double expectation_matrix(const AngleSet &angles);

/// Closed-form trigonometric expectation with zero phases.
[[nodiscard]] double expectation_closed_form(const AngleSet &angles) noexcept;

/// Partial derivatives of the closed form, in AngleSet field order.
struct AngleGradient {
    double d_alpha = 0.0;
    double d_beta = 0.0;
    double d_gamma = 0.0;
    double d_theta = 0.0;
    double d_omega = 0.0;

    [[nodiscard]] std::array<double, 5> as_array() const {
        return {d_alpha, d_beta, d_gamma, d_theta, d_omega};
    }
};

[[nodiscard]] AngleGradient expectation_gradient(const AngleSet &angles) noexcept;

/// Value and gradient sharing one set of sines and cosines.
struct ExpectationWithGradient {
    double value = 0.0;
    AngleGradient gradient;
};

[[nodiscard]] ExpectationWithGradient
expectation_value_and_gradient(const AngleSet &angles) noexcept;

} // namespace sqqnn::qcore
