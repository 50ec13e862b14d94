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

#include <gtest/gtest.h>

#include <cmath>

#include "msdrive/dynamics.hpp"
#include "msdrive/error.hpp"
#include "oracles.hpp"

using namespace msd;
using oracle::kEta0;
using oracle::kPi;
using oracle::kWidth;

namespace {

HybridSystemSpec default_hybrid(double t1 = 0.75) {
    return {mhz_to_angular(20.0), mhz_to_angular(16.0), mhz_to_angular(200.0), t1, 0.25, kWidth};
}

HamiltonianSampler zero8() { return HamiltonianSampler::constant(ComplexMatrix(hybrid::kDim)); }

DensityMatrix pure8(std::size_t k) { return DensityMatrix::pure(StateVector::basis(hybrid::kDim, k)); }

const std::size_t kSector[3] = {hybrid::k0ge, hybrid::k0eg, hybrid::k1gg};

ComplexMatrix restrict_to_sector(const ComplexMatrix& h) {
    ComplexMatrix out(3);
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) out(r, c) = h(kSector[r], kSector[c]);
    return out;
}

StateVector final_state(const HamiltonianSampler& h, const StateVector& psi0, const TimeGrid& grid) {
    StateVector last;
    PropagationOptions opt;
    opt.on_state = [&](double, const StateVector& psi) { last = psi; };
    propagate_schrodinger(h, psi0, grid, opt);
    return last;
}

double distance(const StateVector& a, const StateVector& b) { return (a - b).norm(); }

}  // namespace

TEST(TimeGrid, EndpointsAndSpacing) {
    const TimeGrid g{-0.5, 1.5, 20000};
    EXPECT_EQ(g.time(0), -0.5);
    EXPECT_EQ(g.time(20000), 1.5);
    EXPECT_DOUBLE_EQ(g.step(), 1e-4);
    EXPECT_THROW((TimeGrid{0.0, 1.0, 0}.validate()), Error);
    EXPECT_THROW((TimeGrid{1.0, 1.0, 10}.validate()), Error);
}

TEST(Schrodinger, ZeroHamiltonianIsIdentity) {
    const StateVector psi0{0.6, 0.8 * kI, 0.0};
    const Trajectory tr = propagate_schrodinger(HamiltonianSampler::constant(ComplexMatrix(3)), psi0, {0.0, 1.0, 100});
    ASSERT_EQ(tr.times.size(), 101u);
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        EXPECT_EQ(tr.populations[0][i], std::norm(psi0[0]));
        EXPECT_EQ(tr.populations[1][i], std::norm(psi0[1]));
        EXPECT_EQ(tr.populations[2][i], 0.0);
    }
}

TEST(Schrodinger, DarkStateOfStaticH0IsStationary) {
    const DerivedAngles a{1.0, kPi / 4, 0.0, 0.0, 0.0};
    const StateVector dark = h0_eigensystem(a).zero;
    const Trajectory tr = propagate_schrodinger(HamiltonianSampler::constant(h0_matrix(a)), dark, {0.0, 5.0, 5000});
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        EXPECT_NEAR(tr.populations[0][i], 0.5, 1e-12);
        EXPECT_NEAR(tr.populations[1][i], 0.5, 1e-12);
        EXPECT_NEAR(tr.populations[2][i], 0.0, 1e-12);
    }
}

TEST(Schrodinger, RabiOscillationMatchesAnalytic) {
    // Two-level H = (w/2) sigma_x from |0>: P0 = cos^2(w t / 2).
    const double w = 3.0;
    const ComplexMatrix h{{0.0, w / 2}, {w / 2, 0.0}};
    const Trajectory tr = propagate_schrodinger(HamiltonianSampler::constant(h), StateVector::basis(2, 0), {0.0, 2.0, 2000});
    for (std::size_t i = 0; i < tr.times.size(); i += 97) {
        const double c = std::cos(w * tr.times[i] / 2);
        EXPECT_NEAR(tr.populations[0][i], c * c, 1e-10);
    }
}

TEST(Schrodinger, DefaultTransferUnderMsd) {
    const HamiltonianSampler hm = build_hm(transfer_waveform({kEta0, 0.75, 0.25, kWidth}));
    PropagationOptions opt;
    opt.target = StateVector::basis(3, 0);
    const Trajectory tr = propagate_schrodinger(hm, StateVector::basis(3, 1), {-0.5, 1.5, 20000}, opt);
    EXPECT_GE(tr.populations[0].back(), 0.999);
    EXPECT_EQ(tr.fidelity.back(), tr.populations[0].back());
    EXPECT_LE(tr.diagnostics.max_norm_drift, 1e-9 * 20);
}

TEST(Schrodinger, RejectsBadInputs) {
    const HamiltonianSampler h = HamiltonianSampler::constant(ComplexMatrix(3));
    EXPECT_THROW(propagate_schrodinger(h, StateVector{1.0, 1.0, 0.0}, {0.0, 1.0, 10}), Error);
    EXPECT_THROW(propagate_schrodinger(h, StateVector::basis(2, 0), {0.0, 1.0, 10}), Error);
    EXPECT_THROW(propagate_schrodinger(h, StateVector::basis(3, 0), {0.0, 1.0, 0}), Error);
}

TEST(Schrodinger, ReportsNormDrift) {
    const ComplexMatrix h{{0.0, 50.0}, {50.0, 0.0}};
    try {
        propagate_schrodinger(HamiltonianSampler::constant(h), StateVector::basis(2, 0), {0.0, 1.0, 20});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::propagation_failure);
    }
}

TEST(SchrodingerProperty, FourthOrderConvergence) {
    const HamiltonianSampler hm = build_hm(transfer_waveform({kEta0, 0.75, 0.25, kWidth}));
    const StateVector psi0 = StateVector::basis(3, 1);
    const StateVector ref = final_state(hm, psi0, {-0.5, 1.5, 16000});
    const double e1 = distance(final_state(hm, psi0, {-0.5, 1.5, 250}), ref);
    const double e2 = distance(final_state(hm, psi0, {-0.5, 1.5, 500}), ref);
    const double e3 = distance(final_state(hm, psi0, {-0.5, 1.5, 1000}), ref);
    EXPECT_NEAR(e1 / e2, 16.0, 4.0);
    EXPECT_NEAR(e2 / e3, 16.0, 4.0);
}

TEST(SchrodingerProperty, NormDriftPerThousandSteps) {
    for (double t1 : {0.75, 0.9}) {
        const ControlWaveform w = transfer_waveform({kEta0, t1, 0.25, kWidth});
        for (const HamiltonianSampler& h : {build_h0(w), build_hm(w)}) {
            const Trajectory tr = propagate_schrodinger(h, StateVector::basis(3, 1), {-0.5, 1.5, 20000});
            EXPECT_LE(tr.diagnostics.max_norm_drift, 1e-9 * 20.0);
        }
    }
}

TEST(Population, Examples) {
    EXPECT_EQ(population(DensityMatrix::pure(StateVector::basis(3, 1)), 1), 1.0);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(population(DensityMatrix::maximally_mixed(3), k), 1.0 / 3, 1e-16);
    EXPECT_THROW(population(StateVector::basis(3, 0), 3), Error);
    EXPECT_THROW(population(DensityMatrix::maximally_mixed(3), 5), Error);
}

TEST(Fidelity, Examples) {
    const StateVector target{1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0};
    EXPECT_NEAR(fidelity(DensityMatrix::pure(target), target), 1.0, 1e-15);
    EXPECT_NEAR(fidelity(DensityMatrix::maximally_mixed(8), StateVector::basis(8, 1)), 0.125, 1e-16);
}

TEST(MeanPhoton, Examples) {
    EXPECT_EQ(mean_photon_number(pure8(hybrid::k0gg)), 0.0);
    EXPECT_EQ(mean_photon_number(pure8(hybrid::k1gg)), 1.0);
    EXPECT_THROW(mean_photon_number(DensityMatrix::maximally_mixed(3)), Error);
}

TEST(MeanPhoton, EqualsTraceOfNumberOperator) {
    std::mt19937_64 rng(4);
    const ComplexMatrix x = oracle::random_hermitian(8, rng);
    ComplexMatrix rho = x * x;
    rho *= 1.0 / rho.trace().real();
    EXPECT_NEAR(mean_photon_number(DensityMatrix(rho)), (hybrid::photon_number() * rho).trace().real(), 1e-14);
}

TEST(Hybrid, BasisLabelsAndIndices) {
    EXPECT_EQ(hybrid::label(hybrid::k0ge), "0ge");
    EXPECT_EQ(hybrid::label(hybrid::k0eg), "0eg");
    EXPECT_EQ(hybrid::label(hybrid::k1gg), "1gg");
    EXPECT_EQ(hybrid::label(7), "1ee");
    EXPECT_THROW(hybrid::label(8), Error);
}

TEST(Hybrid, OperatorsActOnDeclaredOrdering) {
    const StateVector one = StateVector::basis(8, hybrid::k1gg);
    EXPECT_EQ(hybrid::annihilation() * one, StateVector::basis(8, hybrid::k0gg));
    EXPECT_EQ(hybrid::lowering(1) * StateVector::basis(8, hybrid::k0eg), StateVector::basis(8, hybrid::k0gg));
    EXPECT_EQ(hybrid::lowering(2) * StateVector::basis(8, hybrid::k0ge), StateVector::basis(8, hybrid::k0gg));
    EXPECT_EQ(hybrid::pauli_z(1)(hybrid::k0eg, hybrid::k0eg), cplx(1.0));
    EXPECT_EQ(hybrid::pauli_z(1)(hybrid::k0ge, hybrid::k0ge), cplx(-1.0));
    EXPECT_THROW(hybrid::lowering(3), Error);
}

TEST(Hybrid, EffectiveAmplitudeAndWarnings) {
    const HybridSystemSpec s = default_hybrid();
    EXPECT_NEAR(s.effective_amplitude(), kEta0, 1e-12);
    EXPECT_TRUE(s.dispersive_warnings().empty());
    HybridSystemSpec close = s;
    close.delta = mhz_to_angular(60.0);
    EXPECT_EQ(close.dispersive_warnings().size(), 2u);
}

TEST(NveTlr, ZeroDriveGivesZeroMatrix) {
    HybridSystemSpec s = default_hybrid();
    s.omega0 = 0.0;
    const HamiltonianSampler h = build_nve_tlr_hamiltonian(s, DriveMode::stirap);
    EXPECT_EQ(h(0.5), ComplexMatrix(8));
}

TEST(NveTlr, ChannelOneCouplesCavityToFirstEnsemble) {
    const HybridSystemSpec s = default_hybrid();
    const HamiltonianSampler h = build_nve_tlr_hamiltonian(s, DriveMode::stirap);
    const ControlWaveform w = s.effective_waveform();
    for (double t : {0.1, 0.5, 0.9}) {
        const WaveformSample smp = w.sample(t);
        EXPECT_NEAR(h(t)(hybrid::k1gg, hybrid::k0eg).real(), smp.eta1, 1e-12 * kEta0);
        EXPECT_NEAR(h(t)(hybrid::k1gg, hybrid::k0ge).real(), smp.eta2, 1e-12 * kEta0);
    }
}

TEST(NveTlrProperty, SectorMatchesThreeLevelModel) {
    const HybridSystemSpec s = default_hybrid();
    const ControlWaveform w = s.effective_waveform();
    const HamiltonianSampler h8s = build_nve_tlr_hamiltonian(s, DriveMode::stirap);
    const HamiltonianSampler h8m = build_nve_tlr_hamiltonian(s, DriveMode::msd);
    const HamiltonianSampler h0 = build_h0(w), hm = build_hm(w);
    for (double t = 0.0; t <= 1.2; t += 1e-3) {
        ASSERT_LE(max_abs_diff(restrict_to_sector(h8s(t)), h0(t)), 1e-12 * kEta0) << t;
        ASSERT_LE(max_abs_diff(restrict_to_sector(h8m(t)), hm(t)), 1e-12 * kEta0) << t;
    }
}

TEST(NveTlrProperty, ConservesExcitationNumber) {
    const ComplexMatrix n = hybrid::excitation_number();
    for (DriveMode mode : {DriveMode::stirap, DriveMode::msd}) {
        const HamiltonianSampler h = build_nve_tlr_hamiltonian(default_hybrid(), mode);
        for (double t = 0.0; t <= 1.2; t += 1e-3) {
            const ComplexMatrix m = h(t);
            ASSERT_LE(max_abs(m * n - n * m), 1e-12) << t;
            ASSERT_TRUE(is_hermitian(m, 1e-12));
        }
    }
}

TEST(Lindblad, CavityDecayIsExponential) {
    const double kappa = 0.5;
    const Trajectory tr = propagate_lindblad(zero8(), pure8(hybrid::k1gg), DissipationSpec{kappa, 0.0, 0.0}, {0.0, 4.0, 4000});
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        const double e = std::exp(-kappa * tr.times[i]);
        ASSERT_NEAR(tr.populations[hybrid::k1gg][i], e, 1e-6);
        ASSERT_NEAR(tr.populations[hybrid::k0gg][i], 1.0 - e, 1e-6);
    }
}

TEST(Lindblad, EnsembleRelaxationIsExponential) {
    const double gamma = 0.3;
    const Trajectory tr = propagate_lindblad(zero8(), pure8(hybrid::k0eg), DissipationSpec{0.0, gamma, 0.0}, {0.0, 3.0, 3000});
    for (std::size_t i = 0; i < tr.times.size(); i += 50) {
        ASSERT_NEAR(tr.populations[hybrid::k0eg][i], std::exp(-gamma * tr.times[i]), 1e-6);
    }
}

TEST(Lindblad, DephasingDecaysCoherenceAtTwiceTheRate) {
    // D[sigma_z] damps |g><e| at 2 gamma_phi.
    const double gphi = 0.2;
    const StateVector plus = [] {
        StateVector v(8);
        v[hybrid::k0gg] = v[hybrid::k0ge] = 1.0 / std::sqrt(2.0);
        return v;
    }();
    double last_coherence = 0.0;
    PropagationOptions opt;
    opt.on_density = [&](double, const DensityMatrix& rho) { last_coherence = std::abs(rho(hybrid::k0gg, hybrid::k0ge)); };
    propagate_lindblad(zero8(), DensityMatrix::pure(plus), DissipationSpec{0.0, 0.0, gphi}, {0.0, 2.0, 2000}, opt);
    EXPECT_NEAR(last_coherence, 0.5 * std::exp(-2.0 * gphi * 2.0), 1e-7);
}

TEST(Lindblad, ZeroRatesMatchSchrodinger) {
    const HybridSystemSpec s = default_hybrid();
    const HamiltonianSampler h = build_nve_tlr_hamiltonian(s, DriveMode::msd);
    const TimeGrid g{0.0, 1.2, 12000};
    const Trajectory open = propagate_lindblad(h, pure8(hybrid::k0eg), DissipationSpec{}, g);
    const Trajectory closed = propagate_schrodinger(h, StateVector::basis(8, hybrid::k0eg), g);
    for (std::size_t i = 0; i < open.times.size(); i += 10) {
        for (std::size_t k = 0; k < 8; ++k) ASSERT_NEAR(open.populations[k][i], closed.populations[k][i], 1e-7);
    }
    // Same thing through the three-level model embedded in the product space.
    const Trajectory three = propagate_schrodinger(build_hm(s.effective_waveform()), StateVector::basis(3, 1), g);
    for (std::size_t i = 0; i < open.times.size(); i += 10) {
        for (std::size_t k = 0; k < 3; ++k) ASSERT_NEAR(open.populations[kSector[k]][i], three.populations[k][i], 1e-7);
    }
}

TEST(LindbladProperty, VanishingRatesApproachClosedSystem) {
    const HamiltonianSampler h = build_nve_tlr_hamiltonian(default_hybrid(), DriveMode::msd);
    const TimeGrid g{0.0, 1.2, 12000};
    const Trajectory open = propagate_lindblad(h, pure8(hybrid::k0eg), DissipationSpec{1e-7, 1e-7, 1e-7}, g);
    const Trajectory closed = propagate_schrodinger(h, StateVector::basis(8, hybrid::k0eg), g);
    for (std::size_t i = 0; i < open.times.size(); i += 100) {
        for (std::size_t k = 0; k < 8; ++k) ASSERT_NEAR(open.populations[k][i], closed.populations[k][i], 1e-6);
    }
}

TEST(LindbladProperty, ExcitationConservationWithoutDissipation) {
    const HamiltonianSampler h = build_nve_tlr_hamiltonian(default_hybrid(0.9), DriveMode::stirap);
    const Trajectory tr = propagate_lindblad(h, pure8(hybrid::k0eg), DissipationSpec{}, {0.0, 1.2, 12000});
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        double outside = 0.0;
        for (std::size_t k = 0; k < 8; ++k)
            if (k != hybrid::k0ge && k != hybrid::k0eg && k != hybrid::k1gg) outside += tr.populations[k][i];
        ASSERT_LE(outside, 1e-10) << tr.times[i];
    }
}

TEST(LindbladProperty, DissipationNeverRaisesExcitations) {
    const HamiltonianSampler h = build_nve_tlr_hamiltonian(default_hybrid(), DriveMode::msd);
    const Trajectory tr = propagate_lindblad(h, pure8(hybrid::k0eg), DissipationSpec{4.0, 0.1, 0.3}, {0.0, 1.2, 12000});
    for (std::size_t i = 0; i < tr.times.size(); ++i) {
        for (std::size_t k : {hybrid::index(0, 1, 1), hybrid::index(1, 0, 1), hybrid::index(1, 1, 0), hybrid::index(1, 1, 1)}) {
            ASSERT_LE(tr.populations[k][i], 1e-10);
        }
        double total = 0.0;
        for (std::size_t k = 0; k < 8; ++k) {
            ASSERT_GE(tr.populations[k][i], -1e-9);
            ASSERT_LE(tr.populations[k][i], 1.0 + 1e-9);
            total += tr.populations[k][i];
        }
        ASSERT_NEAR(total, 1.0, 1e-7);
    }
    EXPECT_LE(tr.diagnostics.max_trace_drift, 1e-7);
    EXPECT_LE(tr.diagnostics.max_hermiticity_error, 1e-9);
    EXPECT_GE(tr.diagnostics.min_eigenvalue, -1e-6);
}

TEST(Lindblad, ReportsPositivityViolation) {
    try {
        propagate_lindblad(zero8(), pure8(hybrid::k1gg), DissipationSpec{5000.0, 0.0, 0.0}, {0.0, 0.01, 10});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::propagation_failure);
    }
}

TEST(Lindblad, RejectsBadInputs) {
    EXPECT_THROW(propagate_lindblad(zero8(), pure8(0), DissipationSpec{-1.0, 0.0, 0.0}, {0.0, 1.0, 10}), Error);
    EXPECT_THROW(propagate_lindblad(zero8(), DensityMatrix::maximally_mixed(3), DissipationSpec{}, {0.0, 1.0, 10}),
                 Error);
    const std::vector<CollapseOperator> bad{{ComplexMatrix::identity(2), 1.0}};
    EXPECT_THROW(propagate_lindblad(zero8(), pure8(0), bad, {0.0, 1.0, 10}), Error);
}

TEST(Lindblad, GenericCollapseListOnTwoLevelSystem) {
    // Amplitude damping of a qubit: P1 = exp(-g t).
    const ComplexMatrix lower{{0.0, 1.0}, {0.0, 0.0}};
    const Trajectory tr = propagate_lindblad(HamiltonianSampler::constant(ComplexMatrix(2)),
                                             DensityMatrix::pure(StateVector::basis(2, 1)), {{lower, 0.7}},
                                             {0.0, 1.0, 1000});
    EXPECT_NEAR(tr.populations[1].back(), std::exp(-0.7), 1e-10);
}
