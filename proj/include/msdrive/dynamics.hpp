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

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "msdrive/hamiltonians.hpp"
#include "msdrive/linalg.hpp"

namespace msd {

/// Uniform grid t_start + k * (t_end - t_start) / steps, k = 0..steps.
struct TimeGrid {
    double t_start;
    double t_end;
    std::size_t steps;

    double step() const { return (t_end - t_start) / static_cast<double>(steps); }
    double time(std::size_t k) const;
    void validate() const;
};

/// Rates in 1/us.
struct DissipationSpec {
    double kappa = 0.0;      // resonator decay
    double gamma = 0.0;      // NVE relaxation, per ensemble
    double gamma_phi = 0.0;  // NVE dephasing, per ensemble
    void validate() const;
};

struct CollapseOperator {
    ComplexMatrix op;
    double rate;
};

struct Trajectory {
    std::vector<double> times;
    /// populations[k][i] = <k|rho(t_i)|k> for every basis index k.
    std::vector<std::vector<double>> populations;
    std::vector<double> fidelity;     // empty if no target was given
    std::vector<double> mean_photon;  // empty for the three-level system

    struct Diagnostics {
        double max_norm_drift = 0.0;       // closed system: max | ||psi|| - 1 |
        double max_trace_drift = 0.0;      // open system: max |Tr rho - 1|
        double max_hermiticity_error = 0.0;
        double min_eigenvalue = 1.0;
    } diagnostics;
};

struct PropagationOptions {
    /// Fidelity target; if set, Trajectory::fidelity is filled.
    std::optional<StateVector> target;
    /// Called at every grid point including t_start.
    std::function<void(double, const StateVector&)> on_state;
    std::function<void(double, const DensityMatrix&)> on_density;
    /// Fill mean_photon using the hybrid photon-number operator.
    bool record_mean_photon = false;
    /// Evaluate the eigenvalue-based positivity check every n steps (open system).
    std::size_t positivity_check_stride = 1;
};

inline constexpr double kMaxNormDrift = 1e-6;
inline constexpr double kMinEigenvalueFloor = -1e-6;

/// Classic fixed-step RK4 for i psi' = H(t) psi. No renormalization is
/// applied; throws propagation_failure if the norm drifts by more than 1e-6.
Trajectory propagate_schrodinger(const HamiltonianSampler& h, const StateVector& psi0, const TimeGrid& grid,
                                 const PropagationOptions& opt = {});

/// Fixed-step RK4 for d rho/dt = -i[H, rho] + sum_k rate_k D[L_k] rho with
/// D[L] rho = L rho L^dagger - (L^dagger L rho + rho L^dagger L) / 2.
/// Throws propagation_failure on a minimum eigenvalue below -1e-6.
Trajectory propagate_lindblad(const HamiltonianSampler& h, const DensityMatrix& rho0,
                              const std::vector<CollapseOperator>& collapse, const TimeGrid& grid,
                              const PropagationOptions& opt = {});

/// Lindblad propagation on the cavity (x) NVE1 (x) NVE2 space with the
/// standard dissipators: kappa D[a] + sum_j (gamma D[sigma_j^-] + gamma_phi D[sigma_j^z]).
Trajectory propagate_lindblad(const HamiltonianSampler& h, const DensityMatrix& rho0, const DissipationSpec& diss,
                              const TimeGrid& grid, const PropagationOptions& opt = {});

double population(const StateVector& psi, std::size_t k);
double population(const DensityMatrix& rho, std::size_t k);
double fidelity(const DensityMatrix& rho, const StateVector& target);
/// Tr(a^dagger a rho) on the 8-dimensional hybrid space.
double mean_photon_number(const DensityMatrix& rho);

// ---------------------------------------------------------------------------
// NVE ensembles coupled to a transmission line resonator

/// Product basis |n_c, s_1, s_2> with cavity n_c in {0,1} and ensemble
/// s_j in {g=0, e=1}; index = 4 n_c + 2 s_1 + s_2.
namespace hybrid {
inline constexpr std::size_t kDim = 8;
constexpr std::size_t index(std::size_t photons, std::size_t nve1_excited, std::size_t nve2_excited) {
    return 4 * photons + 2 * nve1_excited + nve2_excited;
}
inline constexpr std::size_t k0gg = index(0, 0, 0);
inline constexpr std::size_t k0ge = index(0, 0, 1);  // |phi1>
inline constexpr std::size_t k0eg = index(0, 1, 0);  // |phi2>
inline constexpr std::size_t k1gg = index(1, 0, 0);  // |phi3>

std::string label(std::size_t index);

ComplexMatrix annihilation();        // a (x) I (x) I
ComplexMatrix lowering(int nve);     // sigma_j^- for j = 1, 2
ComplexMatrix pauli_z(int nve);      // |e><e| - |g><g| on ensemble j
ComplexMatrix photon_number();       // a^dagger a
ComplexMatrix excitation_number();   // a^dagger a + sum_j sigma_j^+ sigma_j^-

std::vector<CollapseOperator> collapse_operators(const DissipationSpec& diss);

/// Embeds a three-level state written in {phi1, phi2, phi3}.
StateVector embed(const StateVector& three_level_state);
}  // namespace hybrid

enum class DriveMode { stirap, msd };

const char* to_string(DriveMode mode);

struct HybridSystemSpec {
    double g;       // rad/us
    double omega0;  // rad/us, peak microwave Rabi frequency
    double delta;   // rad/us
    double t1;      // us, delay of the drive on NVE1
    double t2;      // us, delay of the drive on NVE2
    double width;   // us

    /// Effective peak coupling g * Omega0 / Delta.
    double effective_amplitude() const { return g * omega0 / delta; }
    /// Effective couplings as a three-level control waveform.
    ControlWaveform effective_waveform() const;
    /// Warnings for Delta < 5 g or Delta < 5 Omega0.
    std::vector<std::string> dispersive_warnings() const;
};

/// H(t) = sum_j c_j(t) (a sigma_j^+ + a^dagger sigma_j^-). In stirap mode
/// c_j = eta_j = g Omega_{L,j}(t) / Delta; in msd mode c_1 = eta sin(theta) - V2
/// and c_2 = eta cos(theta) + V1.
HamiltonianSampler build_nve_tlr_hamiltonian(const HybridSystemSpec& spec, DriveMode mode);

}  // namespace msd
