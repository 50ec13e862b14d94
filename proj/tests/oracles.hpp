// Copyright 2026 The msdrive Authors
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

// Independent reference computations used by the tests. Nothing here calls
// into the library except for plain data types.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>

#include "msdrive/linalg.hpp"

namespace oracle {

using msd::ComplexMatrix;
using msd::cplx;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kEta0 = 2.0 * kPi * 1.6;  // rad/us
inline constexpr double kWidth = 0.408;

/// Eigenvalues of a Hermitian 3x3 matrix from its characteristic polynomial,
/// solved with the trigonometric form in extended precision. Ascending.
inline std::array<double, 3> cubic_eigenvalues(const ComplexMatrix& m) {
    using ld = long double;
    using lc = std::complex<long double>;
    auto at = [&](int r, int c) { return lc(m(r, c).real(), m(r, c).imag()); };
    const ld a11 = at(0, 0).real(), a22 = at(1, 1).real(), a33 = at(2, 2).real();
    const lc a12 = at(0, 1), a13 = at(0, 2), a23 = at(1, 2);
    const ld tr = a11 + a22 + a33;
    const ld c1 = a11 * a22 + a11 * a33 + a22 * a33 - std::norm(a12) - std::norm(a13) - std::norm(a23);
    const ld det = a11 * a22 * a33 + 2.0L * (a12 * a23 * std::conj(a13)).real() - a11 * std::norm(a23) -
                   a22 * std::norm(a13) - a33 * std::norm(a12);
    // lambda = x + tr/3 turns x^3 - tr x^2 + c1 x - det into x^3 + p x + q.
    const ld s = tr / 3.0L;
    const ld p = c1 - tr * tr / 3.0L;
    const ld q = -2.0L * tr * tr * tr / 27.0L + tr * c1 / 3.0L - det;
    std::array<double, 3> out{};
    if (std::abs(p) < 1e-300L) {
        const ld x = std::cbrt(-q);
        out = {static_cast<double>(x + s), static_cast<double>(x + s), static_cast<double>(x + s)};
    } else {
        const ld r = 2.0L * std::sqrt(-p / 3.0L);
        ld arg = 3.0L * q / (p * r);
        arg = std::clamp(arg, -1.0L, 1.0L);
        const ld phi = std::acos(arg) / 3.0L;
        for (int k = 0; k < 3; ++k) {
            out[k] = static_cast<double>(r * std::cos(phi - 2.0L * std::numbers::pi_v<long double> * k / 3.0L) + s);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline ComplexMatrix random_hermitian(std::size_t d, std::mt19937_64& rng, double scale = 1.0) {
    std::normal_distribution<double> n(0.0, scale);
    ComplexMatrix m(d);
    for (std::size_t r = 0; r < d; ++r) {
        m(r, r) = n(rng);
        for (std::size_t c = r + 1; c < d; ++c) {
            m(r, c) = cplx(n(rng), n(rng));
            m(c, r) = std::conj(m(r, c));
        }
    }
    return m;
}

/// Five-point central difference.
inline double d1(const std::function<double(double)>& f, double t, double h) {
    return (-f(t + 2 * h) + 8 * f(t + h) - 8 * f(t - h) + f(t - 2 * h)) / (12 * h);
}

inline double d2(const std::function<double(double)>& f, double t, double h) {
    return (-f(t + 2 * h) + 16 * f(t + h) - 30 * f(t) + 16 * f(t - h) - f(t - 2 * h)) / (12 * h * h);
}

inline ComplexMatrix d1(const std::function<ComplexMatrix(double)>& f, double t, double h) {
    ComplexMatrix out = f(t + h) - f(t - h);
    out *= 1.0 / (2 * h);
    return out;
}

/// theta = atan(eta1 / eta2) for single Gaussians, in extended precision.
inline double theta_transfer(double t, double t1, double t2, double width) {
    using ld = long double;
    const ld w = width;
    const ld log_ratio = (ld(t - t2) * ld(t - t2) - ld(t - t1) * ld(t - t1)) / (w * w);
    return static_cast<double>(std::atan(std::exp(log_ratio)));
}

/// Reference 3x3 H0 built directly from the pulse values.
inline ComplexMatrix h0_reference(double eta1, double eta2) {
    ComplexMatrix m(3);
    m(0, 2) = m(2, 0) = eta2;
    m(1, 2) = m(2, 1) = eta1;
    return m;
}

inline double gaussian(double t, double amp, double delay, double width) {
    const double x = (t - delay) / width;
    return amp * std::exp(-x * x);
}

}  // namespace oracle
