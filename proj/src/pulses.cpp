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

#include "msdrive/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "msdrive/error.hpp"

namespace msd {

double GaussianPulse::value(double t) const {
    const double x = (t - delay) / width;
    return amplitude * std::exp(-x * x);
}

double GaussianPulse::first_derivative(double t) const {
    return value(t) * (-2.0 * (t - delay) / (width * width));
}

double GaussianPulse::second_derivative(double t) const {
    const double w2 = width * width;
    const double u = 2.0 * (t - delay) / w2;
    return value(t) * (u * u - 2.0 / w2);
}

double gaussian(double t, const GaussianPulse& pulse) { return pulse.value(t); }

namespace {

void validate_family(const std::vector<GaussianPulse>& family, const char* name) {
    if (family.empty() || family.size() > 2) {
        throw Error(ErrorCode::invalid_argument,
                    std::string(name) + " must be a sum of one or two Gaussian pulses");
    }
    for (const auto& p : family) {
        if (!(p.width > 0.0)) {
            throw Error(ErrorCode::invalid_argument, std::string(name) + ": pulse width must be > 0");
        }
        if (!(p.amplitude >= 0.0)) {
            throw Error(ErrorCode::invalid_argument,
                        std::string(name) + ": pulse amplitude must be >= 0");
        }
    }
}

// A sum of Gaussians described by log F and the logarithmic derivatives
// F'/F and F''/F, all computed without forming F itself.
struct LogFamily {
    double log_value = -std::numeric_limits<double>::infinity();
    double d1 = 0.0;  // F'/F
    double d2 = 0.0;  // F''/F
    bool zero() const { return std::isinf(log_value); }
};

LogFamily log_family(const std::vector<GaussianPulse>& family, double t) {
    LogFamily out;
    double logs[2];
    std::size_t n = 0;
    for (const auto& p : family) {
        if (p.amplitude <= 0.0) continue;
        const double x = (t - p.delay) / p.width;
        logs[n++] = std::log(p.amplitude) - x * x;
    }
    if (n == 0) return out;
    const double top = *std::max_element(logs, logs + n);
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) sum += std::exp(logs[k] - top);
    out.log_value = top + std::log(sum);

    std::size_t k = 0;
    for (const auto& p : family) {
        if (p.amplitude <= 0.0) continue;
        const double weight = std::exp(logs[k++] - out.log_value);
        const double w2 = p.width * p.width;
        const double u = 2.0 * (t - p.delay) / w2;
        out.d1 += weight * (-u);
        out.d2 += weight * (u * u - 2.0 / w2);
    }
    return out;
}

}  // namespace

ControlWaveform::ControlWaveform(std::vector<GaussianPulse> eta1, std::vector<GaussianPulse> eta2)
    : eta1_(std::move(eta1)), eta2_(std::move(eta2)) {
    validate_family(eta1_, "eta1");
    validate_family(eta2_, "eta2");
}

WaveformSample ControlWaveform::sample(double t) const {
    WaveformSample s{};
    for (const auto& p : eta1_) {
        s.eta1 += p.value(t);
        s.d_eta1 += p.first_derivative(t);
        s.dd_eta1 += p.second_derivative(t);
    }
    for (const auto& p : eta2_) {
        s.eta2 += p.value(t);
        s.d_eta2 += p.first_derivative(t);
        s.dd_eta2 += p.second_derivative(t);
    }
    return s;
}

ControlWaveform transfer_waveform(const TransferParams& p) {
    if (!(p.width > 0.0)) throw Error(ErrorCode::invalid_argument, "transfer_waveform: width must be > 0");
    return ControlWaveform({{p.eta0, p.t1, p.width}}, {{p.eta0, p.t2, p.width}});
}

ControlWaveform superposition_waveform(const SuperpositionParams& p) {
    if (!(p.width > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "superposition_waveform: width must be > 0");
    }
    return ControlWaveform({{p.eta0, p.t3, p.width}},
                           {{p.eta0, p.t4, p.width}, {p.eta0, p.t3, p.width}});
}

DerivedAngles derived_angles(const ControlWaveform& w, double t) {
    const LogFamily f1 = log_family(w.eta1_pulses(), t);
    const LogFamily f2 = log_family(w.eta2_pulses(), t);

    DerivedAngles a{};
    if (f1.zero() && f2.zero()) {
        throw Error(ErrorCode::degenerate_control,
                    "derived_angles: both couplings vanish identically at t = " + std::to_string(t));
    }
    if (f1.zero() || f2.zero()) {
        // One family absent: theta is pinned at 0 or pi/2.
        const LogFamily& f = f1.zero() ? f2 : f1;
        a.theta = f1.zero() ? 0.0 : std::numbers::pi / 2.0;
        a.eta = std::exp(f.log_value);
        a.eta_dot = a.eta * f.d1;
        return a;
    }

    // l = log(eta1/eta2)
    const double l = f1.log_value - f2.log_value;
    const double l_dot = f1.d1 - f2.d1;
    const double l_ddot = (f1.d2 - f1.d1 * f1.d1) - (f2.d2 - f2.d1 * f2.d1);

    a.theta = l > 0.0 ? std::numbers::pi / 2.0 - std::atan(std::exp(-l)) : std::atan(std::exp(l));
    const double sin_cos = 0.5 / std::cosh(l);  // sin(theta) cos(theta)
    const double cos_2theta = -std::tanh(l);
    const double sin2 = 1.0 / (1.0 + std::exp(-2.0 * l));  // sin^2(theta)

    a.theta_dot = l_dot * sin_cos;
    a.theta_ddot = l_ddot * sin_cos + l_dot * cos_2theta * a.theta_dot;

    const double log_eta = std::max(f1.log_value, f2.log_value) + 0.5 * std::log1p(std::exp(-2.0 * std::abs(l)));
    a.eta = std::exp(log_eta);
    a.eta_dot = a.eta * (sin2 * f1.d1 + (1.0 - sin2) * f2.d1);
    return a;
}

}  // namespace msd
