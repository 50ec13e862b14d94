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

// Numerical superadiabatic iteration. Nothing in here uses the closed-form
// three-level expressions; the only input is a HamiltonianSampler.

#include <cmath>
#include <cstdio>
#include <mutex>
#include <vector>

#include "msdrive/error.hpp"
#include "msdrive/hamiltonians.hpp"

namespace msd {

namespace {

constexpr double kMinContinuityOverlap = 0.9;

Eigensystem nondegenerate_eigh(const HamiltonianSampler& h, double t) {
    Eigensystem es = eigh(h(t));
    if (es.degenerate) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "spectrum is degenerate at t = %.9g us", t);
        throw Error(ErrorCode::degenerate_spectrum, buf);
    }
    return es;
}

void align_or_throw(ComplexMatrix& v, const ComplexMatrix& ref, double t, double step) {
    const double overlap = align_phases(v, ref);
    if (overlap < kMinContinuityOverlap) {
        char buf[192];
        std::snprintf(buf, sizeof buf,
                      "eigenvector continuity lost near t = %.9g us (overlap %.3f over step %.3g us)", t,
                      overlap, step);
        throw Error(ErrorCode::step_too_large, buf);
    }
}

ComplexMatrix symmetrized(const ComplexMatrix& m) {
    ComplexMatrix out = m + adjoint(m);
    out *= 0.5;
    return out;
}

}  // namespace

ComplexMatrix generic_cd(const HamiltonianSampler& h, double t, double dt) {
    if (!(dt > 0.0)) throw Error(ErrorCode::invalid_argument, "generic_cd: dt must be positive");
    const ComplexMatrix center = nondegenerate_eigh(h, t).vectors;
    // Five-point central stencil at t +- dt, t +- 2 dt, each aligned to the center.
    constexpr int kOffsets[4] = {-2, -1, 1, 2};
    constexpr double kWeights[4] = {1.0, -8.0, 8.0, -1.0};
    ComplexMatrix samples[4];
    for (int k = 0; k < 4; ++k) {
        samples[k] = nondegenerate_eigh(h, t + kOffsets[k] * dt).vectors;
        align_or_throw(samples[k], center, t, std::abs(kOffsets[k]) * dt);
    }

    const std::size_t d = h.dim();
    ComplexMatrix cd(d);
    for (std::size_t n = 0; n < d; ++n) {
        const StateVector ket = center.column(n);
        StateVector deriv(d);
        for (int k = 0; k < 4; ++k) deriv += cplx(kWeights[k] / (12.0 * dt)) * samples[k].column(n);
        const cplx berry = inner(ket, deriv);
        deriv -= berry * ket;
        cd += ComplexMatrix::outer(deriv, ket);
    }
    cd *= kI;
    return cd;
}

// ---------------------------------------------------------------------------
// TransportedFrame

struct TransportedFrame::State {
    HamiltonianSampler h;
    IterationOptions opt;
    ComplexMatrix anchor_vectors;
    std::vector<ComplexMatrix> forward;   // anchor + k * step
    std::vector<ComplexMatrix> backward;  // anchor - k * step
    std::mutex mutex;

    State(HamiltonianSampler sampler, const IterationOptions& o) : h(std::move(sampler)), opt(o) {
        if (!(opt.transport_step > 0.0)) {
            throw Error(ErrorCode::invalid_argument, "transport_step must be positive");
        }
        anchor_vectors = nondegenerate_eigh(h, opt.anchor).vectors;
        forward.push_back(anchor_vectors);
        backward.push_back(anchor_vectors);
    }

    const ComplexMatrix& lattice(std::vector<ComplexMatrix>& chain, std::size_t k, double sign) {
        while (chain.size() <= k) {
            const double t = opt.anchor + sign * opt.transport_step * static_cast<double>(chain.size());
            ComplexMatrix v = nondegenerate_eigh(h, t).vectors;
            align_or_throw(v, chain.back(), t, opt.transport_step);
            chain.push_back(std::move(v));
        }
        return chain[k];
    }

    ComplexMatrix at(double t) {
        const double offset = (t - opt.anchor) / opt.transport_step;
        ComplexMatrix ref;
        {
            std::lock_guard lock(mutex);
            if (offset >= 0.0) {
                ref = lattice(forward, static_cast<std::size_t>(std::floor(offset)), 1.0);
            } else {
                ref = lattice(backward, static_cast<std::size_t>(std::floor(-offset)), -1.0);
            }
        }
        ComplexMatrix v = nondegenerate_eigh(h, t).vectors;
        align_or_throw(v, ref, t, opt.transport_step);
        return v;
    }
};

TransportedFrame::TransportedFrame(HamiltonianSampler h, const IterationOptions& opt)
    : state_(std::make_unique<State>(std::move(h), opt)) {}

TransportedFrame::~TransportedFrame() = default;

ComplexMatrix TransportedFrame::at(double t) const { return state_->at(t); }

const ComplexMatrix& TransportedFrame::anchor_vectors() const { return state_->anchor_vectors; }

// ---------------------------------------------------------------------------
// iteration

namespace {

// A_j(t) in the requested frame.
ComplexMatrix frame_unitary(const TransportedFrame& frame, double t, IterationFrame kind) {
    ComplexMatrix v = frame.at(t);
    if (kind == IterationFrame::anchored) return v * adjoint(frame.anchor_vectors());
    return v;
}

HamiltonianSampler iterate_with(const HamiltonianSampler& h, std::shared_ptr<TransportedFrame> frame,
                                const IterationOptions& opt) {
    const std::string basis = opt.frame == IterationFrame::anchored ? h.basis() : "eigenbasis(" + h.basis() + ")";
    return HamiltonianSampler(h.dim(), basis, [h, frame, opt](double t) {
        const ComplexMatrix a = frame_unitary(*frame, t, opt.frame);
        const ComplexMatrix rotated = adjoint(a) * (h(t) - generic_cd(h, t, opt.derivative_step)) * a;
        return symmetrized(rotated);
    });
}

}  // namespace

HamiltonianSampler superadiabatic_iterate(const HamiltonianSampler& h, const IterationOptions& opt) {
    return iterate_with(h, std::make_shared<TransportedFrame>(h, opt), opt);
}

HamiltonianSampler superadiabatic_msd_oracle(const HamiltonianSampler& h0, const IterationOptions& opt) {
    auto frame = std::make_shared<TransportedFrame>(h0, opt);
    const HamiltonianSampler h1 = iterate_with(h0, frame, opt);
    return HamiltonianSampler(h0.dim(), h0.basis(), [h0, h1, frame, opt](double t) {
        const ComplexMatrix b1 = frame_unitary(*frame, t, opt.frame);
        const ComplexMatrix k1 = generic_cd(h1, t, opt.derivative_step);
        return symmetrized(h0(t) + b1 * k1 * adjoint(b1));
    });
}

HamiltonianSampler superadiabatic_msd_oracle(const ControlWaveform& w, const IterationOptions& opt) {
    return superadiabatic_msd_oracle(build_h0(w), opt);
}

}  // namespace msd
