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

#include <cmath>

#include "msdrive/dynamics.hpp"
#include "msdrive/error.hpp"

namespace msd {

namespace hybrid {

namespace {

const ComplexMatrix kId2 = ComplexMatrix::identity(2);
// Two-level lowering |0><1| (cavity: photon 1 -> 0; ensemble: e -> g).
const ComplexMatrix kLower2{{0.0, 1.0}, {0.0, 0.0}};
const ComplexMatrix kZ2{{-1.0, 0.0}, {0.0, 1.0}};

ComplexMatrix on_nve(int nve, const ComplexMatrix& op) {
    if (nve == 1) return tensor(tensor(kId2, op), kId2);
    if (nve == 2) return tensor(tensor(kId2, kId2), op);
    throw Error(ErrorCode::invalid_argument, "ensemble index must be 1 or 2");
}

}  // namespace

std::string label(std::size_t index) {
    if (index >= kDim) throw Error(ErrorCode::invalid_argument, "hybrid basis index out of range");
    std::string s;
    s += static_cast<char>('0' + index / 4);
    s += (index & 2) ? 'e' : 'g';
    s += (index & 1) ? 'e' : 'g';
    return s;
}

ComplexMatrix annihilation() { return tensor(tensor(kLower2, kId2), kId2); }
ComplexMatrix lowering(int nve) { return on_nve(nve, kLower2); }
ComplexMatrix pauli_z(int nve) { return on_nve(nve, kZ2); }

ComplexMatrix photon_number() {
    const ComplexMatrix a = annihilation();
    return adjoint(a) * a;
}

ComplexMatrix excitation_number() {
    ComplexMatrix n = photon_number();
    for (int j = 1; j <= 2; ++j) {
        const ComplexMatrix s = lowering(j);
        n += adjoint(s) * s;
    }
    return n;
}

std::vector<CollapseOperator> collapse_operators(const DissipationSpec& diss) {
    std::vector<CollapseOperator> ops;
    ops.push_back({annihilation(), diss.kappa});
    for (int j = 1; j <= 2; ++j) {
        ops.push_back({lowering(j), diss.gamma});
        ops.push_back({pauli_z(j), diss.gamma_phi});
    }
    return ops;
}

StateVector embed(const StateVector& s) {
    if (s.dim() != three_level::kDim) throw Error(ErrorCode::invalid_argument, "embed: expects a three-level state");
    StateVector out(kDim);
    out[k0ge] = s[three_level::kPhi1];
    out[k0eg] = s[three_level::kPhi2];
    out[k1gg] = s[three_level::kPhi3];
    return out;
}

}  // namespace hybrid

const char* to_string(DriveMode mode) { return mode == DriveMode::stirap ? "stirap" : "msd"; }

ControlWaveform HybridSystemSpec::effective_waveform() const {
    if (!(delta != 0.0)) throw Error(ErrorCode::invalid_argument, "hybrid system: detuning must be nonzero");
    return transfer_waveform({effective_amplitude(), t1, t2, width});
}

std::vector<std::string> HybridSystemSpec::dispersive_warnings() const {
    std::vector<std::string> out;
    if (std::abs(delta) < 5.0 * std::abs(g)) out.emplace_back("dispersive regime questionable: Delta < 5 g");
    if (std::abs(delta) < 5.0 * std::abs(omega0)) {
        out.emplace_back("dispersive regime questionable: Delta < 5 Omega0");
    }
    return out;
}

HamiltonianSampler build_nve_tlr_hamiltonian(const HybridSystemSpec& spec, DriveMode mode) {
    const ControlWaveform w = spec.effective_waveform();
    const ComplexMatrix a = hybrid::annihilation();
    const ComplexMatrix a_dag = adjoint(a);
    // a sigma_j^+ + a^dagger sigma_j^- for each ensemble.
    ComplexMatrix exchange[2];
    for (int j = 0; j < 2; ++j) {
        const ComplexMatrix s = hybrid::lowering(j + 1);
        exchange[j] = a * adjoint(s) + a_dag * s;
    }
    return HamiltonianSampler(hybrid::kDim, "cavity(x)nve1(x)nve2", [w, mode, exchange](double t) {
        double c1, c2;
        if (mode == DriveMode::stirap) {
            const WaveformSample s = w.sample(t);
            c1 = s.eta1;
            c2 = s.eta2;
        } else {
            const MsdCouplings m = msd_couplings(derived_angles(w, t));
            c1 = m.phi2_phi3;
            c2 = m.phi1_phi3;
        }
        return c1 * exchange[0] + c2 * exchange[1];
    });
}

}  // namespace msd
