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

// Gaussian control waveforms and the mixing-angle quantities derived from
// them. Units: time in microseconds, couplings in rad/us.

#pragma once

#include <numbers>
#include <vector>

namespace msd {

/// Config files quote frequencies as value/2pi in MHz; internally everything
/// is angular frequency in rad/us (MHz * us = 1).
constexpr double mhz_to_angular(double mhz_over_2pi) { return 2.0 * std::numbers::pi * mhz_over_2pi; }
constexpr double angular_to_mhz(double rad_per_us) { return rad_per_us / (2.0 * std::numbers::pi); }

/// Below this the couplings are treated as underflowed; see derived_angles().
inline constexpr double kUnderflowGuard = 1e-30;

/// amplitude * exp(-((t - delay) / width)^2)
struct GaussianPulse {
    double amplitude;  // rad/us, >= 0
    double delay;      // us
    double width;      // us, > 0

    double value(double t) const;
    double first_derivative(double t) const;
    double second_derivative(double t) const;
};

double gaussian(double t, const GaussianPulse& pulse);

/// Values and time derivatives of both couplings at one instant.
struct WaveformSample {
    double eta1, eta2;
    double d_eta1, d_eta2;
    double dd_eta1, dd_eta2;
};

/// Mixing-angle quantities. theta = arctan(eta1/eta2), eta = sqrt(eta1^2 + eta2^2).
struct DerivedAngles {
    double eta;
    double theta;
    double eta_dot;
    double theta_dot;
    double theta_ddot;
};

/// Each coupling is a sum of one or two Gaussians.
class ControlWaveform {
public:
    ControlWaveform(std::vector<GaussianPulse> eta1, std::vector<GaussianPulse> eta2);

    const std::vector<GaussianPulse>& eta1_pulses() const noexcept { return eta1_; }
    const std::vector<GaussianPulse>& eta2_pulses() const noexcept { return eta2_; }

    WaveformSample sample(double t) const;

private:
    std::vector<GaussianPulse> eta1_;
    std::vector<GaussianPulse> eta2_;
};

struct TransferParams {
    double eta0;   // rad/us
    double t1;     // delay of eta1 (pump), us
    double t2;     // delay of eta2 (Stokes), us
    double width;  // us
};

struct SuperpositionParams {
    double eta0;
    double t3;
    double t4;
    double width;
};

/// eta1 = G(t1), eta2 = G(t2).
ControlWaveform transfer_waveform(const TransferParams& p);
/// eta1 = G(t3), eta2 = G(t4) + G(t3); eta1/eta2 runs from 0 to 1.
ControlWaveform superposition_waveform(const SuperpositionParams& p);

/// Evaluates eta, theta and their derivatives.
///
/// theta and all ratios are formed from log-domain quantities (log-sum-exp
/// over each Gaussian family), so far pulse tails where both couplings
/// underflow still give a well-defined angle. Throws
/// `Error{degenerate_control}` when both families have zero amplitude.
DerivedAngles derived_angles(const ControlWaveform& w, double t);

}  // namespace msd
