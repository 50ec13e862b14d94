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

#include "msdrive/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "msdrive/error.hpp"

namespace msd {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* op) {
    if (a != b) {
        throw Error(ErrorCode::invalid_argument,
                    std::string(op) + ": dimension mismatch (" + std::to_string(a) + " vs " +
                        std::to_string(b) + ")");
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : dim_(rows.size()), data_() {
    data_.reserve(dim_ * dim_);
    for (const auto& row : rows) {
        if (row.size() != dim_) {
            throw Error(ErrorCode::invalid_argument, "ComplexMatrix: rows must form a square array");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::outer(const StateVector& ket, const StateVector& bra) {
    require_same_dim(ket.dim(), bra.dim(), "outer");
    ComplexMatrix m(ket.dim());
    for (std::size_t r = 0; r < ket.dim(); ++r)
        for (std::size_t c = 0; c < ket.dim(); ++c) m(r, c) = ket[r] * std::conj(bra[c]);
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    require_same_dim(dim_, rhs.dim_, "operator+");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    require_same_dim(dim_, rhs.dim_, "operator-");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& x : data_) x *= s;
    return *this;
}

StateVector ComplexMatrix::column(std::size_t col) const {
    StateVector v(dim_);
    for (std::size_t r = 0; r < dim_; ++r) v[r] = (*this)(r, col);
    return v;
}

void ComplexMatrix::set_column(std::size_t col, const StateVector& v) {
    require_same_dim(dim_, v.dim(), "set_column");
    for (std::size_t r = 0; r < dim_; ++r) (*this)(r, col) = v[r];
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(cplx s, ComplexMatrix m) { return m *= s; }
ComplexMatrix operator*(ComplexMatrix m, cplx s) { return m *= s; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    require_same_dim(lhs.dim(), rhs.dim(), "operator*");
    const std::size_t d = lhs.dim();
    ComplexMatrix out(d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t k = 0; k < d; ++k) {
            const cplx a = lhs(r, k);
            if (a == cplx{}) continue;
            for (std::size_t c = 0; c < d; ++c) out(r, c) += a * rhs(k, c);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// StateVector

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw Error(ErrorCode::invalid_argument, "basis index " + std::to_string(index) +
                                                     " out of range for dimension " +
                                                     std::to_string(dim));
    }
    StateVector v(dim);
    v[index] = 1.0;
    return v;
}

double StateVector::norm() const {
    double s = 0.0;
    for (const auto& a : amp_) s += std::norm(a);
    return std::sqrt(s);
}

StateVector& StateVector::operator+=(const StateVector& rhs) {
    require_same_dim(dim(), rhs.dim(), "operator+");
    for (std::size_t i = 0; i < amp_.size(); ++i) amp_[i] += rhs.amp_[i];
    return *this;
}

StateVector& StateVector::operator-=(const StateVector& rhs) {
    require_same_dim(dim(), rhs.dim(), "operator-");
    for (std::size_t i = 0; i < amp_.size(); ++i) amp_[i] -= rhs.amp_[i];
    return *this;
}

StateVector& StateVector::operator*=(cplx s) {
    for (auto& a : amp_) a *= s;
    return *this;
}

StateVector operator+(StateVector lhs, const StateVector& rhs) { return lhs += rhs; }
StateVector operator-(StateVector lhs, const StateVector& rhs) { return lhs -= rhs; }
StateVector operator*(cplx s, StateVector v) { return v *= s; }

StateVector operator*(const ComplexMatrix& m, const StateVector& v) {
    require_same_dim(m.dim(), v.dim(), "matrix-vector product");
    StateVector out(v.dim());
    for (std::size_t r = 0; r < m.dim(); ++r) {
        cplx acc = 0.0;
        for (std::size_t c = 0; c < m.dim(); ++c) acc += m(r, c) * v[c];
        out[r] = acc;
    }
    return out;
}

cplx inner(const StateVector& a, const StateVector& b) {
    require_same_dim(a.dim(), b.dim(), "inner");
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
    return DensityMatrix(ComplexMatrix::outer(psi, psi));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    ComplexMatrix m = ComplexMatrix::identity(dim);
    m *= 1.0 / static_cast<double>(dim);
    return DensityMatrix(std::move(m));
}

DensityMatrix::Diagnostics DensityMatrix::check() const {
    Diagnostics d{};
    d.hermiticity_error = max_abs_diff(m_, adjoint(m_));
    d.trace_error = std::abs(m_.trace() - 1.0);
    // Symmetrize before diagonalizing so the eigensolver sees an exactly
    // Hermitian input; the asymmetry itself is reported above.
    ComplexMatrix h = m_ + adjoint(m_);
    h *= 0.5;
    d.min_eigenvalue = eigh(h).values.front();
    return d;
}

// ---------------------------------------------------------------------------
// free functions

ComplexMatrix adjoint(const ComplexMatrix& m) {
    ComplexMatrix out(m.dim());
    for (std::size_t r = 0; r < m.dim(); ++r)
        for (std::size_t c = 0; c < m.dim(); ++c) out(c, r) = std::conj(m(r, c));
    return out;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t da = a.dim(), db = b.dim();
    ComplexMatrix out(da * db);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j) {
            const cplx aij = a(i, j);
            for (std::size_t k = 0; k < db; ++k)
                for (std::size_t l = 0; l < db; ++l) out(i * db + k, j * db + l) = aij * b(k, l);
        }
    return out;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
    StateVector out(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t k = 0; k < b.dim(); ++k) out[i * b.dim() + k] = a[i] * b[k];
    return out;
}

double norm_inf(const ComplexMatrix& m) {
    double best = 0.0;
    for (std::size_t r = 0; r < m.dim(); ++r) {
        double row = 0.0;
        for (std::size_t c = 0; c < m.dim(); ++c) row += std::abs(m(r, c));
        best = std::max(best, row);
    }
    return best;
}

double max_abs(const ComplexMatrix& m) {
    double best = 0.0;
    for (const auto& x : m.data()) best = std::max(best, std::abs(x));
    return best;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a.dim(), b.dim(), "max_abs_diff");
    double best = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        best = std::max(best, std::abs(a.data()[i] - b.data()[i]));
    return best;
}

double max_offdiag_abs(const ComplexMatrix& m) {
    double best = 0.0;
    for (std::size_t r = 0; r < m.dim(); ++r)
        for (std::size_t c = 0; c < m.dim(); ++c)
            if (r != c) best = std::max(best, std::abs(m(r, c)));
    return best;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
    if (!(tol > 0.0)) throw Error(ErrorCode::invalid_argument, "is_unitary: tol must be positive");
    return max_abs_diff(adjoint(m) * m, ComplexMatrix::identity(m.dim())) <= tol;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    return max_abs_diff(m, adjoint(m)) <= tol;
}

// ---------------------------------------------------------------------------
// eigh

namespace {

double offdiag_frobenius(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c)
            if (r != c) s += std::norm(a(r, c));
    return std::sqrt(s);
}

// One complex Jacobi rotation zeroing a(p,q). The rotation is a phase on
// column q (making a(p,q) real) followed by the real symmetric rotation.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const cplx apq = a(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) return;
    const cplx phase = apq / mag;  // e^{i phi}
    const cplx phase_c = std::conj(phase);

    const double app = a(p, p).real();
    const double aqq = a(q, q).real();
    const double theta = (aqq - app) / (2.0 * mag);
    double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0.0) t = -t;
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    const std::size_t d = a.dim();
    // A <- A G, with G[:,p] = c e_p - s e^{-i phi} e_q, G[:,q] = s e_p + c e^{-i phi} e_q
    for (std::size_t r = 0; r < d; ++r) {
        const cplx arp = a(r, p), arq = a(r, q);
        a(r, p) = c * arp - s * phase_c * arq;
        a(r, q) = s * arp + c * phase_c * arq;
        const cplx vrp = v(r, p), vrq = v(r, q);
        v(r, p) = c * vrp - s * phase_c * vrq;
        v(r, q) = s * vrp + c * phase_c * vrq;
    }
    // A <- G^dagger A
    for (std::size_t col = 0; col < d; ++col) {
        const cplx apc = a(p, col), aqc = a(q, col);
        a(p, col) = c * apc - s * phase * aqc;
        a(q, col) = s * apc + c * phase * aqc;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
}

void fix_gauge(StateVector& v) {
    double biggest = 0.0;
    for (std::size_t i = 0; i < v.dim(); ++i) biggest = std::max(biggest, std::abs(v[i]));
    if (biggest == 0.0) return;
    std::size_t pick = 0;
    for (std::size_t i = 0; i < v.dim(); ++i) {
        if (std::abs(v[i]) >= biggest * (1.0 - 1e-12)) {
            pick = i;
            break;
        }
    }
    const cplx phase = std::conj(v[pick]) / std::abs(v[pick]);
    v *= phase;
    v[pick] = std::abs(v[pick]);
}

}  // namespace

Eigensystem eigh(const ComplexMatrix& m) {
    const std::size_t d = m.dim();
    if (d == 0) throw Error(ErrorCode::invalid_argument, "eigh: empty matrix");
    if (d > kMaxDim) throw Error(ErrorCode::invalid_argument, "eigh: dimension exceeds 8");

    const double scale = norm_inf(m);
    double worst = 0.0;
    std::size_t wr = 0, wc = 0;
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = r; c < d; ++c) {
            const double e = std::abs(m(r, c) - std::conj(m(c, r)));
            if (e > worst) {
                worst = e;
                wr = r;
                wc = c;
            }
        }
    if (worst > 1e-10 * std::max(1.0, scale)) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "eigh: matrix is not Hermitian, |M(%zu,%zu) - conj(M(%zu,%zu))| = %.3e", wr,
                      wc, wc, wr, worst);
        throw Error(ErrorCode::not_hermitian, buf);
    }

    ComplexMatrix a = m;
    for (std::size_t i = 0; i < d; ++i) a(i, i) = a(i, i).real();
    ComplexMatrix v = ComplexMatrix::identity(d);

    const double target = 1e-14 * scale;
    for (int sweep = 0; sweep < 100 && scale > 0.0; ++sweep) {
        if (offdiag_frobenius(a) <= target) break;
        for (std::size_t p = 0; p + 1 < d; ++p)
            for (std::size_t q = p + 1; q < d; ++q) rotate(a, v, p, q);
    }

    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

    Eigensystem out;
    out.values.resize(d);
    out.vectors = ComplexMatrix(d);
    for (std::size_t k = 0; k < d; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        StateVector col = v.column(order[k]);
        fix_gauge(col);
        out.vectors.set_column(k, col);
    }
    for (std::size_t k = 0; k + 1 < d; ++k) {
        if (out.values[k + 1] - out.values[k] < 1e-10 * scale) out.degenerate = true;
    }
    return out;
}

double align_phases(ComplexMatrix& vectors, const ComplexMatrix& reference) {
    require_same_dim(vectors.dim(), reference.dim(), "align_phases");
    double worst = 1.0;
    for (std::size_t k = 0; k < vectors.dim(); ++k) {
        const cplx ov = inner(reference.column(k), vectors.column(k));
        const double mag = std::abs(ov);
        worst = std::min(worst, mag);
        if (mag == 0.0) continue;
        const cplx phase = std::conj(ov) / mag;
        for (std::size_t r = 0; r < vectors.dim(); ++r) vectors(r, k) *= phase;
    }
    return worst;
}

}  // namespace msd
