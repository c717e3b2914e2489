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

#include "pqst/qmatrix.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "pqst/errors.hpp"

namespace pqst {

namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw DimensionMismatch(std::string(what) + ": dimensions " + std::to_string(a) +
                                " and " + std::to_string(b) + " differ");
    }
}

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
    const auto n = static_cast<Eigen::Index>(m.dim());
    Eigen::MatrixXcd out(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            out(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
    }
    return out;
}

// V diag(f(lambda)) V^dagger
template <typename F>
ComplexMatrix spectral_apply(const HermitianEigen& eig, F&& f) {
    const std::size_t n = eig.vectors.dim();
    ComplexMatrix out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double w = f(eig.values[k]);
        if (w == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const Complex vik = eig.vectors(i, k) * w;
            for (std::size_t j = 0; j < n; ++j) {
                out(i, j) += vik * std::conj(eig.vectors(j, k));
            }
        }
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : ComplexMatrix(rows.size()) {
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != dim_) throw DimensionMismatch("ComplexMatrix: rows must form a square");
        std::size_t j = 0;
        for (const auto& v : row) (*this)(i, j++) = v;
        ++i;
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
    ComplexMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> psi) {
    ComplexMatrix m(psi.size());
    for (std::size_t i = 0; i < psi.size(); ++i) {
        for (std::size_t j = 0; j < psi.size(); ++j) m(i, j) = psi[i] * std::conj(psi[j]);
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    }
    return out;
}

Complex ComplexMatrix::trace() const noexcept {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

bool ComplexMatrix::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

double ComplexMatrix::max_abs() const noexcept {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
}

double ComplexMatrix::hermiticity_error() const noexcept {
    double m = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = i; j < dim_; ++j) {
            m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
        }
    }
    return m;
}

void ComplexMatrix::set_zero() noexcept { std::fill(data_.begin(), data_.end(), Complex{}); }

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_dim(dim_, other.dim_, "ComplexMatrix +=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_dim(dim_, other.dim_, "ComplexMatrix -=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) noexcept {
    for (auto& z : data_) z *= s;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.dim());
    multiply_into(a, b, out);
    return out;
}

void multiply_into(const ComplexMatrix& a, const ComplexMatrix& b, ComplexMatrix& out) {
    require_same_dim(a.dim(), b.dim(), "multiply");
    const std::size_t n = a.dim();
    out.set_zero();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
        }
    }
}

void gram_into(const ComplexMatrix& a, ComplexMatrix& out) {
    const std::size_t n = a.dim();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            Complex s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += a(i, k) * std::conj(a(j, k));
            out(i, j) = s;
            if (i != j) out(j, i) = std::conj(s);
        }
        out(i, i) = out(i, i).real();
    }
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a.dim(), b.dim(), "max_abs_diff");
    double m = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k) {
        m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
    }
    return m;
}

// ---------------------------------------------------------------------------
// DensityMatrix / StateVector

DensityMatrix::DensityMatrix(ComplexMatrix mat) : DensityMatrix(std::move(mat), kHermitianTol, kTraceTol) {}

DensityMatrix::DensityMatrix(ComplexMatrix mat, double hermitian_tol, double trace_tol)
    : mat_(std::move(mat)) {
    if (mat_.dim() == 0) throw InvalidState("density matrix must have dim >= 1");
    if (!mat_.all_finite()) throw InvalidState("density matrix has non-finite entries");
    if (const double h = mat_.hermiticity_error(); h > hermitian_tol) {
        throw InvalidState("density matrix is not Hermitian (error " + std::to_string(h) + ")");
    }
    if (const double t = std::abs(mat_.trace() - 1.0); t > trace_tol) {
        throw InvalidState("density matrix trace differs from 1 by " + std::to_string(t));
    }
    const auto eig = hermitian_eig(mat_);
    if (eig.values.front() < -kPsdTol) {
        throw InvalidState("density matrix has negative eigenvalue " +
                           std::to_string(eig.values.front()));
    }
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
    auto m = ComplexMatrix::identity(dim);
    m *= 1.0 / static_cast<double>(dim);
    return unchecked(std::move(m));
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> psi) {
    return DensityMatrix(ComplexMatrix::outer(psi));
}

double DensityMatrix::purity() const noexcept {
    double p = 0.0;
    for (const auto& z : mat_.data()) p += std::norm(z);
    return p;
}

StateVector::StateVector(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {
    double n2 = 0.0;
    for (const auto& a : amps_) n2 += std::norm(a);
    if (amps_.empty() || std::abs(std::sqrt(n2) - 1.0) > 1e-12) {
        throw InvalidState("state vector must have unit norm");
    }
}

// ---------------------------------------------------------------------------
// QR with phase correction

HaarQr::HaarQr(std::size_t dim)
    : dim_(dim), work_(dim), reflectors_(dim * dim), diag_(dim), tmp_(dim) {}

void HaarQr::apply(const ComplexMatrix& h, ComplexMatrix& u) {
    require_same_dim(h.dim(), dim_, "qr_haar_correct");
    const std::size_t n = dim_;
    work_ = h;
    auto v = [&](std::size_t i, std::size_t k) -> Complex& { return reflectors_[i * n + k]; };

    // Householder triangularisation: work_ <- H_{n-1} ... H_0 h = R.
    for (std::size_t k = 0; k < n; ++k) {
        double norm2 = 0.0;
        for (std::size_t i = k; i < n; ++i) norm2 += std::norm(work_(i, k));
        const double norm = std::sqrt(norm2);
        if (norm == 0.0) {
            for (std::size_t i = k; i < n; ++i) v(i, k) = 0.0;
            diag_[k] = 0.0;
            continue;
        }
        const Complex x0 = work_(k, k);
        const double ax0 = std::abs(x0);
        const Complex phase = ax0 > 0.0 ? x0 / ax0 : Complex(1.0);
        const Complex alpha = -phase * norm;

        v(k, k) = x0 - alpha;
        double vnorm2 = std::norm(v(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            v(i, k) = work_(i, k);
            vnorm2 += std::norm(v(i, k));
        }
        const double inv = 1.0 / std::sqrt(vnorm2);
        for (std::size_t i = k; i < n; ++i) v(i, k) *= inv;

        work_(k, k) = alpha;
        for (std::size_t i = k + 1; i < n; ++i) work_(i, k) = 0.0;
        for (std::size_t j = k + 1; j < n; ++j) {
            Complex s = 0.0;
            for (std::size_t i = k; i < n; ++i) s += std::conj(v(i, k)) * work_(i, j);
            s *= 2.0;
            for (std::size_t i = k; i < n; ++i) work_(i, j) -= v(i, k) * s;
        }
        diag_[k] = alpha;
    }

    for (std::size_t k = 0; k < n; ++k) {
        const double r = std::abs(diag_[k]);
        if (!(r >= 1e-300)) {
            throw DegenerateDecomposition("QR factor has vanishing diagonal entry r_" +
                                          std::to_string(k) + std::to_string(k));
        }
        diag_[k] /= r;
    }

    // Backward accumulation of Q = H_0 H_1 ... H_{n-1}.
    u = ComplexMatrix::identity(n);
    for (std::size_t kk = n; kk-- > 0;) {
        for (std::size_t j = kk; j < n; ++j) {
            Complex s = 0.0;
            for (std::size_t i = kk; i < n; ++i) s += std::conj(v(i, kk)) * u(i, j);
            tmp_[j] = 2.0 * s;
        }
        for (std::size_t i = kk; i < n; ++i) {
            const Complex vi = v(i, kk);
            for (std::size_t j = kk; j < n; ++j) u(i, j) -= vi * tmp_[j];
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) u(i, j) *= diag_[j];
    }
}

ComplexMatrix qr_haar_correct(const ComplexMatrix& h) {
    if (!h.all_finite()) throw DegenerateDecomposition("qr_haar_correct: non-finite input");
    HaarQr qr(h.dim());
    ComplexMatrix u(h.dim());
    qr.apply(h, u);
    return u;
}

// ---------------------------------------------------------------------------
// Spectral functions

HermitianEigen hermitian_eig(const ComplexMatrix& m) {
    const double tol = 1e-10 * std::max(1.0, m.max_abs());
    if (const double h = m.hermiticity_error(); h > tol) {
        throw NotHermitian("hermitian_eig: asymmetry " + std::to_string(h));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m));
    if (solver.info() != Eigen::Success) throw NotHermitian("hermitian_eig: solver did not converge");

    HermitianEigen out;
    const std::size_t n = m.dim();
    out.values.resize(n);
    out.vectors = ComplexMatrix(n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = solver.eigenvalues()(static_cast<Eigen::Index>(k));
        for (std::size_t i = 0; i < n; ++i) {
            out.vectors(i, k) =
                solver.eigenvectors()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
        }
    }
    return out;
}

ComplexMatrix hermitian_sqrt(const ComplexMatrix& m) {
    const auto eig = hermitian_eig(m);
    if (eig.values.front() < -kPsdTol) {
        throw NotPSD("hermitian_sqrt: eigenvalue " + std::to_string(eig.values.front()));
    }
    return spectral_apply(eig, [](double l) { return l > 0.0 ? std::sqrt(l) : 0.0; });
}

double fidelity(const DensityMatrix& a, const DensityMatrix& b) {
    require_same_dim(a.dim(), b.dim(), "fidelity");
    const ComplexMatrix sa = hermitian_sqrt(a.matrix());
    ComplexMatrix inner = sa * b.matrix() * sa;
    // Restore exact symmetry lost to rounding.
    inner = 0.5 * (inner + inner.adjoint());
    const auto eig = hermitian_eig(inner);
    double tr = 0.0;
    for (double l : eig.values) tr += l > 0.0 ? std::sqrt(l) : 0.0;
    return std::clamp(tr * tr, 0.0, 1.0);
}

double frobenius_sq_distance(const DensityMatrix& a, const DensityMatrix& b) {
    require_same_dim(a.dim(), b.dim(), "frobenius_sq_distance");
    double s = 0.0;
    for (std::size_t k = 0; k < a.matrix().data().size(); ++k) {
        s += std::norm(a.matrix().data()[k] - b.matrix().data()[k]);
    }
    return s;
}

double expectation(const DensityMatrix& rho, const StateVector& psi) {
    require_same_dim(rho.dim(), psi.dim(), "expectation");
    Complex s = 0.0;
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        Complex row = 0.0;
        for (std::size_t j = 0; j < rho.dim(); ++j) row += rho(i, j) * psi[j];
        s += std::conj(psi[i]) * row;
    }
    return std::clamp(s.real(), 0.0, 1.0);
}

}  // namespace pqst
