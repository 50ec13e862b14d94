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

// Dense complex linear algebra for the small (d <= 8) Hilbert spaces used
// throughout the simulator.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace msd {

using cplx = std::complex<double>;
inline constexpr cplx kI{0.0, 1.0};
inline constexpr std::size_t kMaxDim = 8;

class StateVector;

/// Square complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);
    /// Rows given as nested initializer lists; must be square.
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const double> values);
    static ComplexMatrix outer(const StateVector& ket, const StateVector& bra);

    std::size_t dim() const noexcept { return dim_; }

    cplx& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
    const cplx& operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

    std::span<const cplx> data() const noexcept { return data_; }
    std::span<cplx> data() noexcept { return data_; }

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(cplx s);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

    StateVector column(std::size_t col) const;
    void set_column(std::size_t col, const StateVector& v);
    cplx trace() const;

private:
    std::size_t dim_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(cplx s, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, cplx s);

class StateVector {
public:
    StateVector() = default;
    explicit StateVector(std::size_t dim) : amp_(dim) {}
    StateVector(std::initializer_list<cplx> amplitudes) : amp_(amplitudes) {}

    static StateVector basis(std::size_t dim, std::size_t index);

    std::size_t dim() const noexcept { return amp_.size(); }
    cplx& operator[](std::size_t i) { return amp_[i]; }
    const cplx& operator[](std::size_t i) const { return amp_[i]; }
    std::span<const cplx> data() const noexcept { return amp_; }
    std::span<cplx> data() noexcept { return amp_; }

    double norm() const;

    StateVector& operator+=(const StateVector& rhs);
    StateVector& operator-=(const StateVector& rhs);
    StateVector& operator*=(cplx s);

    friend bool operator==(const StateVector&, const StateVector&) = default;

private:
    std::vector<cplx> amp_;
};

StateVector operator+(StateVector lhs, const StateVector& rhs);
StateVector operator-(StateVector lhs, const StateVector& rhs);
StateVector operator*(cplx s, StateVector v);
StateVector operator*(const ComplexMatrix& m, const StateVector& v);

/// <a|b>, conjugate-linear in the first argument.
cplx inner(const StateVector& a, const StateVector& b);

/// Density operator. Construction does not validate; use `check()` for the
/// Hermiticity / trace / positivity diagnostics.
class DensityMatrix {
public:
    DensityMatrix() = default;
    explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {}

    static DensityMatrix pure(const StateVector& psi);
    static DensityMatrix maximally_mixed(std::size_t dim);

    std::size_t dim() const noexcept { return m_.dim(); }
    const ComplexMatrix& matrix() const noexcept { return m_; }
    ComplexMatrix& matrix() noexcept { return m_; }
    cplx operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

    struct Diagnostics {
        double hermiticity_error;  // max |rho - rho^dagger|
        double trace_error;        // |Tr rho - 1|
        double min_eigenvalue;
    };
    Diagnostics check() const;

private:
    ComplexMatrix m_;
};

ComplexMatrix adjoint(const ComplexMatrix& m);

/// Kronecker product; the first factor is the slowest-varying index.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
StateVector tensor(const StateVector& a, const StateVector& b);

/// Induced infinity norm (max absolute row sum).
double norm_inf(const ComplexMatrix& m);
/// Largest entrywise modulus.
double max_abs(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double max_offdiag_abs(const ComplexMatrix& m);

bool is_unitary(const ComplexMatrix& m, double tol);
bool is_hermitian(const ComplexMatrix& m, double tol);

struct Eigensystem {
    std::vector<double> values;   // ascending
    ComplexMatrix vectors;        // column k pairs with values[k]
    bool degenerate = false;      // some gap < 1e-10 * ||M||_inf
};

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
///
/// Each eigenvector's phase is fixed so that its largest-magnitude component
/// is real and positive; near-ties (within 1e-12 relative) go to the lowest
/// index. Throws `Error{not_hermitian}` naming the worst entry if
/// max |M - M^dagger| exceeds 1e-10 * max(1, ||M||_inf).
Eigensystem eigh(const ComplexMatrix& m);

/// Phase-align each column of `vectors` so that <reference_k|v_k> is real
/// and positive. Returns the smallest |<reference_k|v_k>| seen.
double align_phases(ComplexMatrix& vectors, const ComplexMatrix& reference);

}  // namespace msd
