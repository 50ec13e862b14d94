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

// Closed-form three-level driving Hamiltonians.
//
// Basis ordering is fixed: index 0 = |phi1>, 1 = |phi2>, 2 = |phi3> (the
// intermediate level). H0 couples phi1<->phi3 with eta*cos(theta) = eta2 and
// phi2<->phi3 with eta*sin(theta) = eta1. The MSD Hamiltonian H_M keeps that
// coupling pattern and only reshapes the two couplings.

#pragma once

#include <functional>
#include <memory>
#include <string>
#include <utility>

#include "msdrive/linalg.hpp"
#include "msdrive/pulses.hpp"

namespace msd {

namespace three_level {
inline constexpr std::size_t kPhi1 = 0;
inline constexpr std::size_t kPhi2 = 1;
inline constexpr std::size_t kPhi3 = 2;
inline constexpr std::size_t kDim = 3;
}  // namespace three_level

/// Time -> Hermitian matrix (rad/us), tagged with the basis it is written in.
class HamiltonianSampler {
public:
    using Function = std::function<ComplexMatrix(double)>;

    HamiltonianSampler(std::size_t dim, std::string basis, Function fn)
        : dim_(dim), basis_(std::move(basis)), fn_(std::move(fn)) {}

    std::size_t dim() const noexcept { return dim_; }
    const std::string& basis() const noexcept { return basis_; }
    ComplexMatrix operator()(double t) const { return fn_(t); }
    ComplexMatrix evaluate(double t) const { return fn_(t); }

    static HamiltonianSampler constant(ComplexMatrix m, std::string basis = "custom");

private:
    std::size_t dim_;
    std::string basis_;
    Function fn_;
};

/// Eigenpairs of H0 in the phi basis: E-/+ = -/+eta, E0 = 0 (the dark state).
struct EigensystemH0 {
    double e_minus, e_zero, e_plus;
    StateVector minus, zero, plus;
};

/// Eigenpairs of H1 written in the {|E->, |E+>, |E0>} basis.
struct EigensystemH1 {
    double lambda_minus, lambda_zero, lambda_plus;
    double w, q, r;  // W = eta + s, Q = -eta + s, R = 2s with s = sqrt(eta^2 + thetadot^2) >= 0
    double eta, theta_dot;
    StateVector minus, zero, plus;
};

/// Off-diagonal couplings of H_M: (phi1,phi3) and (phi2,phi3).
struct MsdCouplings {
    double phi1_phi3;  // eta cos(theta) + V1
    double phi2_phi3;  // eta sin(theta) - V2
};

ComplexMatrix h0_matrix(const DerivedAngles& a);
HamiltonianSampler build_h0(const ControlWaveform& w);

/// Throws degenerate_control when eta <= kUnderflowGuard.
EigensystemH0 h0_eigensystem(const DerivedAngles& a);

/// Columns |E->, |E+>, |E0> in the phi basis.
ComplexMatrix build_a0(const DerivedAngles& a);

/// First interaction-picture Hamiltonian in the {E-, E+, E0} basis.
ComplexMatrix build_h1(const DerivedAngles& a);

EigensystemH1 h1_eigensystem(const DerivedAngles& a);

/// Columns |lambda->, |lambda+>, |lambda0> in the {E-, E+, E0} basis.
/// Throws degenerate_control when R <= kUnderflowGuard.
ComplexMatrix build_a1(const EigensystemH1& es);

MsdCouplings msd_couplings(const DerivedAngles& a);
ComplexMatrix hm_matrix(const DerivedAngles& a);
HamiltonianSampler build_hm(const ControlWaveform& w);

/// The state the MSD Hamiltonian transports without transitions:
/// A0 |lambda0> = (2 i thetadot / R) |phi3> + (2 eta / R) |E0>. It coincides
/// with the dark state |E0> only where thetadot / eta -> 0.
StateVector msd_dressed_dark_state(const DerivedAngles& a);

// ---------------------------------------------------------------------------
// Generic numerical engine (independent of the closed forms above).

inline constexpr double kDefaultDerivativeStep = 1e-4;  // us

/// H_cd = i sum_n (|n'><n| - <n|n'> |n><n|), with |n'> from five-point
/// central differences of phase-aligned eigenvectors at t +/- dt, t +/- 2 dt.
///
/// Throws degenerate_spectrum if the spectrum at any stencil point is
/// flagged degenerate, step_too_large if a stencil eigenvector overlaps its
/// center counterpart by less than 0.9.
ComplexMatrix generic_cd(const HamiltonianSampler& h, double t, double dt = kDefaultDerivativeStep);

/// Frame for the interaction picture built by superadiabatic_iterate().
enum class IterationFrame {
    /// A_j(t) = sum_n |n_j(t)><n_j(t0)|; H_{j+1} is written in the same
    /// basis as H_j and A_j(t0) = I.
    anchored,
    /// A_j(t) = sum_n |n_j(t)><k|, columns in ascending-eigenvalue order;
    /// H_{j+1} is written in the instantaneous eigenbasis of H_j.
    eigenbasis,
};

struct IterationOptions {
    double anchor = 0.0;                        // us; where A_j is anchored
    double derivative_step = kDefaultDerivativeStep;
    double transport_step = 1e-3;               // us; parallel-transport lattice spacing
    IterationFrame frame = IterationFrame::anchored;
};

/// H_{j+1}(t) = A_j^dagger(t) [H_j(t) - K_j(t)] A_j(t), K_j = i dA_j/dt A_j^dagger.
///
/// A_j is kept in the parallel-transport gauge by stepping eigenvectors
/// along a fixed lattice anchor + k * transport_step and aligning phases at
/// each step, so K_j equals generic_cd(H_j). The lattice is cached inside the
/// returned sampler (guarded by a mutex); results depend only on t.
HamiltonianSampler superadiabatic_iterate(const HamiltonianSampler& h, const IterationOptions& opt = {});

/// Parallel-transported eigenvector matrix of `h` at t, anchored at
/// opt.anchor (columns in ascending-eigenvalue order). Exposed for tests.
class TransportedFrame {
public:
    TransportedFrame(HamiltonianSampler h, const IterationOptions& opt);
    ~TransportedFrame();
    TransportedFrame(const TransportedFrame&) = delete;
    TransportedFrame& operator=(const TransportedFrame&) = delete;

    ComplexMatrix at(double t) const;
    const ComplexMatrix& anchor_vectors() const;

private:
    struct State;
    std::unique_ptr<State> state_;
};

/// H0(t) + A0(t) K1(t) A0^dagger(t), with H1 and K1 built by the generic
/// engine from H0 alone. Independent cross-check for build_hm().
HamiltonianSampler superadiabatic_msd_oracle(const HamiltonianSampler& h0, const IterationOptions& opt = {});
HamiltonianSampler superadiabatic_msd_oracle(const ControlWaveform& w, const IterationOptions& opt = {});

}  // namespace msd
