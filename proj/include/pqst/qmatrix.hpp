// Copyright 2026 The pqst Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace pqst {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const Complex> diag);
    /// |psi><psi|
    static ComplexMatrix outer(std::span<const Complex> psi);

    std::size_t dim() const noexcept { return dim_; }

    Complex& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * dim_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const noexcept {
        return data_[i * dim_ + j];
    }

    std::span<Complex> data() noexcept { return data_; }
    std::span<const Complex> data() const noexcept { return data_; }

    ComplexMatrix adjoint() const;
    Complex trace() const noexcept;
    bool all_finite() const noexcept;
    /// max_ij |m_ij|
    double max_abs() const noexcept;
    /// max_ij |m_ij - conj(m_ji)|
    double hermiticity_error() const noexcept;

    void set_zero() noexcept;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex s) noexcept;

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

  private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

/// out = a * b, with out preallocated and not aliasing a or b.
void multiply_into(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& out);
/// out = a * a^dagger, with out preallocated and not aliasing a.
void gram_into(const ComplexMatrix& a, ComplexMatrix& out);

/// max_ij |a_ij - b_ij|
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tolerances for the density-matrix invariants.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

/// Hermitian, positive semidefinite, unit-trace matrix.
class DensityMatrix {
  public:
    /// Validates the invariants, throwing InvalidState on violation.
    explicit DensityMatrix(ComplexMatrix mat);
    /// Same, with relaxed tolerances (used for averaged estimates).
    DensityMatrix(ComplexMatrix mat, double hermitian_tol, double trace_tol);

    /// Wraps a matrix that is a density matrix by construction. No checks.
    static DensityMatrix unchecked(ComplexMatrix mat) noexcept {
        return DensityMatrix(std::move(mat), Unchecked{});
    }

    /// I / dim
    static DensityMatrix maximally_mixed(std::size_t dim);
    static DensityMatrix pure(std::span<const Complex> psi);

    const ComplexMatrix& matrix() const noexcept { return mat_; }
    std::size_t dim() const noexcept { return mat_.dim(); }
    const Complex& operator()(std::size_t i, std::size_t j) const noexcept { return mat_(i, j); }

    /// Tr(rho^2)
    double purity() const noexcept;

  private:
    struct Unchecked {};
    DensityMatrix(ComplexMatrix mat, Unchecked) noexcept : mat_(std::move(mat)) {}

    ComplexMatrix mat_;
};

/// Unit-norm complex vector.
class StateVector {
  public:
    /// Throws InvalidState unless the norm is 1 within 1e-12.
    explicit StateVector(std::vector<Complex> amplitudes);

    std::size_t dim() const noexcept { return amps_.size(); }
    std::span<const Complex> amplitudes() const noexcept { return amps_; }
    const Complex& operator[](std::size_t i) const noexcept { return amps_[i]; }

  private:
    std::vector<Complex> amps_;
};

/// Q * diag(r_ii / |r_ii|) for the QR factorisation h = QR. Haar-distributed
/// when h has i.i.d. standard complex Gaussian entries.
ComplexMatrix qr_haar_correct(const ComplexMatrix& h);

/// Allocation-free QR with phase correction, reusable across calls of equal dim.
class HaarQr {
  public:
    explicit HaarQr(std::size_t dim);

    /// Overwrites u with the corrected unitary factor of h.
    void apply(const ComplexMatrix& h, ComplexMatrix& u);

  private:
    std::size_t dim_;
    ComplexMatrix work_;
    std::vector<Complex> reflectors_;  // column k holds the k-th Householder vector
    std::vector<Complex> diag_;
    std::vector<Complex> tmp_;
};

struct HermitianEigen {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // columns are eigenvectors
};

/// Throws NotHermitian if max |m - m^dagger| exceeds 1e-10 (scaled by max |m| when larger than one).
HermitianEigen hermitian_eig(const ComplexMatrix& m);

/// Principal square root of a PSD matrix; eigenvalues in [-1e-10, 0) are clamped to 0.
ComplexMatrix hermitian_sqrt(const ComplexMatrix& m);

/// (Tr sqrt(sqrt(a) b sqrt(a)))^2 clamped to [0, 1].
double fidelity(const DensityMatrix& a, const DensityMatrix& b);

/// Sum_ij |a_ij - b_ij|^2
double frobenius_sq_distance(const DensityMatrix& a, const DensityMatrix& b);

/// Re <psi|rho|psi> clamped to [0, 1].
double expectation(const DensityMatrix& rho, const StateVector& psi);

}  // namespace pqst
