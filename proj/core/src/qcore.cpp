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
#include "sqqnn/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sqqnn/errors.hpp"

namespace sqqnn::qcore {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_finite(double angle, const char *what) {
    if (!std::isfinite(angle)) {
        fail(Errc::invalid_argument,
             std::string(what) + " must be a finite angle");
    }
}

} // namespace

Complex2x2 Complex2x2::adjoint() const {
    return from(std::conj(m[0]), std::conj(m[2]), std::conj(m[1]),
                std::conj(m[3]));
}

double Complex2x2::max_abs_diff(const Complex2x2 &other) const {
    double worst = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        worst = std::max(worst, std::abs(m[i] - other.m[i]));
    }
    return worst;
}

bool Complex2x2::is_unitary(double tol) const {
    return (adjoint() * *this).max_abs_diff(identity()) <= tol;
}

Complex2x2 operator*(const Complex2x2 &a, const Complex2x2 &b) {
    return Complex2x2::from(a.m[0] * b.m[0] + a.m[1] * b.m[2],
                            a.m[0] * b.m[1] + a.m[1] * b.m[3],
                            a.m[2] * b.m[0] + a.m[3] * b.m[2],
                            a.m[2] * b.m[1] + a.m[3] * b.m[3]);
}

Complex2x2 operator*(Complex scalar, const Complex2x2 &a) {
    return Complex2x2::from(scalar * a.m[0], scalar * a.m[1], scalar * a.m[2],
                            scalar * a.m[3]);
}

Complex2x2 operator+(const Complex2x2 &a, const Complex2x2 &b) {
    return Complex2x2::from(a.m[0] + b.m[0], a.m[1] + b.m[1], a.m[2] + b.m[2],
                            a.m[3] + b.m[3]);
}

Complex2x2 operator-(const Complex2x2 &a, const Complex2x2 &b) {
    return Complex2x2::from(a.m[0] - b.m[0], a.m[1] - b.m[1], a.m[2] - b.m[2],
                            a.m[3] - b.m[3]);
}

Amplitudes operator*(const Complex2x2 &a, const Amplitudes &v) {
    return {a.m[0] * v[0] + a.m[1] * v[1], a.m[2] * v[0] + a.m[3] * v[1]};
}

Amplitudes QubitState::amplitudes() const {
    return {Complex{std::cos(theta / 2.0)},
            std::exp(kI * phi) * std::sin(theta / 2.0)};
}

Complex2x2 Observable::projector1() const {
    const double c = std::cos(omega / 2.0);
    const double s = std::sin(omega / 2.0);
    return Complex2x2::from(Complex{c * c}, std::exp(-kI * varphi) * c * s,
                            std::exp(kI * varphi) * c * s, Complex{s * s});
}

Complex2x2 Observable::projector0() const {
    return Complex2x2::identity() - projector1();
}

Complex2x2 Observable::matrix() const {
    return Complex{lambda0} * projector0() + Complex{lambda1} * projector1();
}

Complex2x2 Observable::measured_operator() const {
    const Complex2x2 u = basis_change();
    const Complex2x2 eig =
        Complex2x2::from(Complex{lambda0}, Complex{0.0}, Complex{0.0},
                         Complex{lambda1});
    return u.adjoint() * eig * u;
}

Complex2x2 Observable::basis_change() const {
    const double c = std::cos(omega / 2.0);
    const double s = std::sin(omega / 2.0);
    return Complex2x2::from(Complex{c}, -std::exp(-kI * varphi) * s,
                            std::exp(kI * varphi) * s, Complex{c});
}

Complex2x2 rotation_gate(Axis axis, double angle) {
    require_finite(angle, "rotation angle");
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    switch (axis) {
    case Axis::x:
        return Complex2x2::from(Complex{c}, -kI * s, -kI * s, Complex{c});
    case Axis::y:
        return Complex2x2::from(Complex{c}, Complex{-s}, Complex{s}, Complex{c});
    case Axis::z:
        return Complex2x2::from(std::exp(-kI * (angle / 2.0)), Complex{0.0},
                                Complex{0.0}, std::exp(kI * (angle / 2.0)));
    }
    fail(Errc::invalid_argument, "unknown rotation axis");
}

Complex2x2 neuron_matrix(double alpha, double beta, double gamma) {
    return rotation_gate(Axis::z, gamma) * rotation_gate(Axis::y, beta) *
           rotation_gate(Axis::z, alpha);
}

Complex2x2 effective_neuron(std::span<const NeuronAngles> neurons) {
    if (neurons.empty()) {
        fail(Errc::invalid_argument, "effective_neuron needs at least one neuron");
    }
    Complex2x2 total = neuron_matrix(neurons.front());
    for (const NeuronAngles &n : neurons.subspan(1)) {
        total = neuron_matrix(n) * total;
    }
    return total;
}

double expectation_of_unitary(const Complex2x2 &unitary, const QubitState &state,
                              const Observable &obs) {
    require_finite(state.theta, "state theta");
    require_finite(state.phi, "state phi");
    require_finite(obs.omega, "observable omega");
    require_finite(obs.varphi, "observable varphi");
    const Amplitudes out = obs.basis_change() * (unitary * state.amplitudes());
    const double p1 = std::norm(out[1]);
    const double p0 = std::norm(out[0]);
    // normalise away rounding drift so the result stays inside [lambda1, lambda0]
    const double total = p0 + p1;
    return (obs.lambda0 * p0 + obs.lambda1 * p1) / total;
}

double expectation_matrix(const AngleSet &angles, const QubitState &state,
                          const Observable &obs) {
    return expectation_of_unitary(
        neuron_matrix(angles.alpha, angles.beta, angles.gamma), state, obs);
}

double expectation_matrix(const AngleSet &angles) {
    return expectation_matrix(angles, QubitState{angles.theta, 0.0},
                              Observable{angles.omega, 0.0});
}

namespace {

struct Trig {
    double ca, sa, cb, sb, cg, sg, ct, st, cw, sw;

    explicit Trig(const AngleSet &a)
        : ca(std::cos(a.alpha)), sa(std::sin(a.alpha)), cb(std::cos(a.beta)),
          sb(std::sin(a.beta)), cg(std::cos(a.gamma)), sg(std::sin(a.gamma)),
          ct(std::cos(a.theta)), st(std::sin(a.theta)), cw(std::cos(a.omega)),
          sw(std::sin(a.omega)) {}

    [[nodiscard]] double value() const {
        return cb * ct * cw - ca * sb * st * cw - sb * cg * ct * sw +
               sa * sg * st * sw - ca * cb * cg * st * sw;
    }

    [[nodiscard]] AngleGradient gradient() const {
        AngleGradient g;
        g.d_alpha = sa * sb * st * cw + ca * sg * st * sw + sa * cb * cg * st * sw;
        g.d_beta = -sb * ct * cw - ca * cb * st * cw - cb * cg * ct * sw +
                   ca * sb * cg * st * sw;
        g.d_gamma = sb * sg * ct * sw + sa * cg * st * sw + ca * cb * sg * st * sw;
        g.d_theta = -cb * st * cw - ca * sb * ct * cw + sb * cg * st * sw +
                    sa * sg * ct * sw - ca * cb * cg * ct * sw;
        g.d_omega = -cb * ct * sw + ca * sb * st * sw - sb * cg * ct * cw +
                    sa * sg * st * cw - ca * cb * cg * st * cw;
        return g;
    }
};

} // namespace

double expectation_closed_form(const AngleSet &angles) noexcept {
    return Trig(angles).value();
}

AngleGradient expectation_gradient(const AngleSet &angles) noexcept {
    return Trig(angles).gradient();
}

ExpectationWithGradient
expectation_value_and_gradient(const AngleSet &angles) noexcept {
    const Trig t(angles);
    return {t.value(), t.gradient()};
}

} // namespace sqqnn::qcore
