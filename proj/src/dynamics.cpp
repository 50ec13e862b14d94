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

#include "msdrive/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "msdrive/error.hpp"

namespace msd {

double TimeGrid::time(std::size_t k) const {
    // Last point is pinned to t_end exactly.
    if (k == steps) return t_end;
    return t_start + static_cast<double>(k) * step();
}

void TimeGrid::validate() const {
    if (steps == 0) throw Error(ErrorCode::invalid_argument, "time grid: steps must be positive");
    if (!(t_end > t_start)) throw Error(ErrorCode::invalid_argument, "time grid: t_end must exceed t_start");
}

void DissipationSpec::validate() const {
    if (!(kappa >= 0.0) || !(gamma >= 0.0) || !(gamma_phi >= 0.0)) {
        throw Error(ErrorCode::invalid_argument, "dissipation rates must be non-negative");
    }
}

double population(const StateVector& psi, std::size_t k) {
    if (k >= psi.dim()) throw Error(ErrorCode::invalid_argument, "population: basis index out of range");
    return std::norm(psi[k]);
}

double population(const DensityMatrix& rho, std::size_t k) {
    if (k >= rho.dim()) throw Error(ErrorCode::invalid_argument, "population: basis index out of range");
    return rho(k, k).real();
}

double fidelity(const DensityMatrix& rho, const StateVector& target) {
    return inner(target, rho.matrix() * target).real();
}

double mean_photon_number(const DensityMatrix& rho) {
    if (rho.dim() != hybrid::kDim) {
        throw Error(ErrorCode::invalid_argument, "mean_photon_number: expects the 8-dimensional hybrid space");
    }
    double n = 0.0;
    for (std::size_t s = 0; s < 4; ++s) n += rho(4 + s, 4 + s).real();
    return n;
}

namespace {

void record(Trajectory& traj, double t, std::span<const double> pops) {
    traj.times.push_back(t);
    for (std::size_t k = 0; k < pops.size(); ++k) traj.populations[k].push_back(pops[k]);
}

StateVector schrodinger_rhs(const HamiltonianSampler& h, double t, const StateVector& psi) {
    StateVector out = h(t) * psi;
    out *= -kI;
    return out;
}

}  // namespace

Trajectory propagate_schrodinger(const HamiltonianSampler& h, const StateVector& psi0, const TimeGrid& grid,
                                 const PropagationOptions& opt) {
    grid.validate();
    if (psi0.dim() != h.dim()) throw Error(ErrorCode::invalid_argument, "propagate_schrodinger: dimension mismatch");
    if (std::abs(psi0.norm() - 1.0) > 1e-9) {
        throw Error(ErrorCode::invalid_argument, "propagate_schrodinger: initial state is not normalized");
    }
    const std::size_t d = psi0.dim();
    Trajectory traj;
    traj.populations.assign(d, {});
    traj.times.reserve(grid.steps + 1);
    for (auto& p : traj.populations) p.reserve(grid.steps + 1);

    std::vector<double> pops(d);
    auto observe = [&](double t, const StateVector& psi) {
        for (std::size_t k = 0; k < d; ++k) pops[k] = std::norm(psi[k]);
        record(traj, t, pops);
        if (opt.target) traj.fidelity.push_back(std::norm(inner(*opt.target, psi)));
        const double drift = std::abs(psi.norm() - 1.0);
        traj.diagnostics.max_norm_drift = std::max(traj.diagnostics.max_norm_drift, drift);
        if (opt.on_state) opt.on_state(t, psi);
        if (drift > kMaxNormDrift) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "norm drift %.3e at t = %.6g us exceeds 1e-6; reduce the step size",
                          drift, t);
            throw Error(ErrorCode::propagation_failure, buf);
        }
    };

    StateVector psi = psi0;
    observe(grid.time(0), psi);
    for (std::size_t k = 0; k < grid.steps; ++k) {
        const double t = grid.time(k);
        const double dt = grid.time(k + 1) - t;
        const StateVector k1 = schrodinger_rhs(h, t, psi);
        const StateVector k2 = schrodinger_rhs(h, t + dt / 2, psi + (dt / 2) * k1);
        const StateVector k3 = schrodinger_rhs(h, t + dt / 2, psi + (dt / 2) * k2);
        const StateVector k4 = schrodinger_rhs(h, t + dt, psi + dt * k3);
        psi += (dt / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        observe(grid.time(k + 1), psi);
    }
    return traj;
}

namespace {

struct PreparedCollapse {
    ComplexMatrix op, op_dag, op_dag_op;
    double rate;
};

ComplexMatrix lindblad_rhs(const ComplexMatrix& h, const ComplexMatrix& rho,
                           const std::vector<PreparedCollapse>& collapse) {
    ComplexMatrix out = h * rho - rho * h;
    out *= -kI;
    for (const auto& c : collapse) {
        ComplexMatrix term = c.op * rho * c.op_dag;
        ComplexMatrix anti = c.op_dag_op * rho + rho * c.op_dag_op;
        anti *= 0.5;
        term -= anti;
        term *= c.rate;
        out += term;
    }
    return out;
}

}  // namespace

Trajectory propagate_lindblad(const HamiltonianSampler& h, const DensityMatrix& rho0,
                              const std::vector<CollapseOperator>& collapse, const TimeGrid& grid,
                              const PropagationOptions& opt) {
    grid.validate();
    const std::size_t d = rho0.dim();
    if (d != h.dim()) throw Error(ErrorCode::invalid_argument, "propagate_lindblad: dimension mismatch");
    if (opt.record_mean_photon && d != hybrid::kDim) {
        throw Error(ErrorCode::invalid_argument, "propagate_lindblad: mean photon number needs the hybrid space");
    }
    std::vector<PreparedCollapse> prepared;
    for (const auto& c : collapse) {
        if (c.op.dim() != d) throw Error(ErrorCode::invalid_argument, "collapse operator dimension mismatch");
        if (!(c.rate >= 0.0)) throw Error(ErrorCode::invalid_argument, "collapse rates must be non-negative");
        if (c.rate == 0.0) continue;
        ComplexMatrix dag = adjoint(c.op);
        ComplexMatrix dag_op = dag * c.op;
        prepared.push_back({c.op, std::move(dag), std::move(dag_op), c.rate});
    }

    Trajectory traj;
    traj.populations.assign(d, {});
    std::vector<double> pops(d);
    const std::size_t stride = std::max<std::size_t>(1, opt.positivity_check_stride);

    auto observe = [&](std::size_t k, double t, const DensityMatrix& rho) {
        for (std::size_t i = 0; i < d; ++i) pops[i] = rho(i, i).real();
        record(traj, t, pops);
        if (opt.target) traj.fidelity.push_back(fidelity(rho, *opt.target));
        if (opt.record_mean_photon) traj.mean_photon.push_back(mean_photon_number(rho));
        auto& diag = traj.diagnostics;
        diag.max_trace_drift = std::max(diag.max_trace_drift, std::abs(rho.matrix().trace() - 1.0));
        diag.max_hermiticity_error =
            std::max(diag.max_hermiticity_error, max_abs_diff(rho.matrix(), adjoint(rho.matrix())));
        if (k % stride == 0 || k == grid.steps) {
            const double lowest = rho.check().min_eigenvalue;
            diag.min_eigenvalue = std::min(diag.min_eigenvalue, lowest);
            if (lowest < kMinEigenvalueFloor) {
                char buf[160];
                std::snprintf(buf, sizeof buf,
                              "positivity violated: eigenvalue %.3e at t = %.6g us; reduce the step size", lowest, t);
                throw Error(ErrorCode::propagation_failure, buf);
            }
        }
        if (opt.on_density) opt.on_density(t, rho);
    };

    DensityMatrix rho = rho0;
    observe(0, grid.time(0), rho);
    for (std::size_t k = 0; k < grid.steps; ++k) {
        const double t = grid.time(k);
        const double dt = grid.time(k + 1) - t;
        const ComplexMatrix h0 = h(t);
        const ComplexMatrix hm = h(t + dt / 2);
        const ComplexMatrix h1 = h(t + dt);
        const ComplexMatrix& r = rho.matrix();
        const ComplexMatrix k1 = lindblad_rhs(h0, r, prepared);
        const ComplexMatrix k2 = lindblad_rhs(hm, r + (dt / 2) * k1, prepared);
        const ComplexMatrix k3 = lindblad_rhs(hm, r + (dt / 2) * k2, prepared);
        const ComplexMatrix k4 = lindblad_rhs(h1, r + dt * k3, prepared);
        rho.matrix() += (dt / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        observe(k + 1, grid.time(k + 1), rho);
    }
    return traj;
}

Trajectory propagate_lindblad(const HamiltonianSampler& h, const DensityMatrix& rho0, const DissipationSpec& diss,
                              const TimeGrid& grid, const PropagationOptions& opt) {
    diss.validate();
    if (rho0.dim() != hybrid::kDim) {
        throw Error(ErrorCode::invalid_argument, "propagate_lindblad: expects the 8-dimensional hybrid space");
    }
    return propagate_lindblad(h, rho0, hybrid::collapse_operators(diss), grid, opt);
}

}  // namespace msd
