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

#include "msdrive/hamiltonians.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "msdrive/error.hpp"

namespace msd {

using namespace three_level;

namespace {

constexpr double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void require_positive_eta(const DerivedAngles& a, const char* where) {
    if (!(a.eta > kUnderflowGuard)) {
        throw Error(ErrorCode::degenerate_control,
                    std::string(where) + ": eta = " + std::to_string(a.eta) + " is below the underflow guard");
    }
}

ComplexMatrix coupling_matrix(double phi1_phi3, double phi2_phi3) {
    ComplexMatrix m(kDim);
    m(kPhi1, kPhi3) = m(kPhi3, kPhi1) = phi1_phi3;
    m(kPhi2, kPhi3) = m(kPhi3, kPhi2) = phi2_phi3;
    return m;
}

}  // namespace

HamiltonianSampler HamiltonianSampler::constant(ComplexMatrix m, std::string basis) {
    const std::size_t d = m.dim();
    return HamiltonianSampler(d, std::move(basis), [m = std::move(m)](double) { return m; });
}

ComplexMatrix h0_matrix(const DerivedAngles& a) {
    return coupling_matrix(a.eta * std::cos(a.theta), a.eta * std::sin(a.theta));
}

HamiltonianSampler build_h0(const ControlWaveform& w) {
    return HamiltonianSampler(kDim, "phi", [w](double t) { return h0_matrix(derived_angles(w, t)); });
}

EigensystemH0 h0_eigensystem(const DerivedAngles& a) {
    require_positive_eta(a, "h0_eigensystem");
    const double c = std::cos(a.theta), s = std::sin(a.theta);
    EigensystemH0 es;
    es.e_minus = -a.eta;
    es.e_zero = 0.0;
    es.e_plus = a.eta;
    es.minus = StateVector{c * kInvSqrt2, s * kInvSqrt2, -kInvSqrt2};
    es.plus = StateVector{c * kInvSqrt2, s * kInvSqrt2, kInvSqrt2};
    es.zero = StateVector{s, -c, 0.0};
    return es;
}

ComplexMatrix build_a0(const DerivedAngles& a) {
    const double c = std::cos(a.theta), s = std::sin(a.theta);
    return ComplexMatrix{
        {c * kInvSqrt2, c * kInvSqrt2, s},
        {s * kInvSqrt2, s * kInvSqrt2, -c},
        {-kInvSqrt2, kInvSqrt2, 0.0},
    };
}

ComplexMatrix build_h1(const DerivedAngles& a) {
    const cplx k = kI * a.theta_dot * kInvSqrt2;
    return ComplexMatrix{
        {-a.eta, 0.0, -k},
        {0.0, a.eta, -k},
        {k, k, 0.0},
    };
}

EigensystemH1 h1_eigensystem(const DerivedAngles& a) {
    EigensystemH1 es{};
    const double s = std::hypot(a.eta, a.theta_dot);
    es.eta = a.eta;
    es.theta_dot = a.theta_dot;
    es.lambda_minus = -s;
    es.lambda_zero = 0.0;
    es.lambda_plus = s;
    es.w = a.eta + s;
    // -eta + s written without cancellation (W Q = thetadot^2).
    es.q = es.w > 0.0 ? a.theta_dot * a.theta_dot / es.w : 0.0;
    es.r = 2.0 * s;
    if (es.r > kUnderflowGuard) {
        const double r = es.r;
        const double k = std::numbers::sqrt2 * a.theta_dot / r;
        es.minus = StateVector{kI * es.w / r, kI * es.q / r, k};
        es.plus = StateVector{kI * es.q / r, kI * es.w / r, -k};
        es.zero = StateVector{-kI * k, kI * k, 2.0 * a.eta / r};
    }
    return es;
}

ComplexMatrix build_a1(const EigensystemH1& es) {
    if (!(es.r > kUnderflowGuard)) {
        throw Error(ErrorCode::degenerate_control, "build_a1: R = 2 sqrt(eta^2 + thetadot^2) vanishes");
    }
    ComplexMatrix m(kDim);
    m.set_column(0, es.minus);
    m.set_column(1, es.plus);
    m.set_column(2, es.zero);
    return m;
}

MsdCouplings msd_couplings(const DerivedAngles& a) {
    const double scale = std::max(a.eta, std::abs(a.theta_dot));
    if (!(2.0 * scale > kUnderflowGuard)) {
        throw Error(ErrorCode::degenerate_control,
                    "build_hm: R = 2 sqrt(eta^2 + thetadot^2) is below the underflow guard");
    }
    // (etadot thetadot - eta thetaddot) / (eta^2 + thetadot^2), i.e. 4(...)/R^2,
    // evaluated with eta and thetadot rescaled to O(1).
    const double e = a.eta / scale, td = a.theta_dot / scale;
    const double x = ((a.eta_dot / scale) * td - e * (a.theta_ddot / scale)) / (e * e + td * td);
    const double v1 = std::sin(a.theta) * x;
    const double v2 = std::cos(a.theta) * x;
    return {a.eta * std::cos(a.theta) + v1, a.eta * std::sin(a.theta) - v2};
}

ComplexMatrix hm_matrix(const DerivedAngles& a) {
    const MsdCouplings c = msd_couplings(a);
    return coupling_matrix(c.phi1_phi3, c.phi2_phi3);
}

HamiltonianSampler build_hm(const ControlWaveform& w) {
    return HamiltonianSampler(kDim, "phi", [w](double t) { return hm_matrix(derived_angles(w, t)); });
}

StateVector msd_dressed_dark_state(const DerivedAngles& a) {
    const double r = 2.0 * std::hypot(a.eta, a.theta_dot);
    if (!(r > kUnderflowGuard)) {
        throw Error(ErrorCode::degenerate_control, "msd_dressed_dark_state: R vanishes");
    }
    const double c = std::cos(a.theta), s = std::sin(a.theta);
    const double k = 2.0 * a.eta / r;
    return StateVector{k * s, -k * c, kI * 2.0 * a.theta_dot / r};
}

}  // namespace msd
