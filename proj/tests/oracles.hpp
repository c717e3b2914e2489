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

// Reference implementations for the tests. Deliberately naive and written
// without the library's linear algebra: nested vectors, Gram-Schmidt, explicit
// Kronecker products and full matrix products.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Mat = std::vector<std::vector<C>>;

inline Mat zeros(std::size_t n) { return Mat(n, std::vector<C>(n, 0.0)); }

inline Mat eye(std::size_t n) {
    Mat m = zeros(n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
    return m;
}

inline Mat mul(const Mat& a, const Mat& b) {
    const std::size_t n = a.size();
    Mat c = zeros(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) c[i][j] += a[i][k] * b[k][j];
    return c;
}

inline Mat dagger(const Mat& a) {
    const std::size_t n = a.size();
    Mat d = zeros(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) d[i][j] = std::conj(a[j][i]);
    return d;
}

inline Mat add(const Mat& a, const Mat& b, double sb = 1.0) {
    Mat c = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) c[i][j] += sb * b[i][j];
    return c;
}

inline C trace(const Mat& a) {
    C t = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
    return t;
}

inline Mat kron(const Mat& a, const Mat& b) {
    const std::size_t n = a.size(), m = b.size();
    Mat k = zeros(n * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t p = 0; p < m; ++p)
                for (std::size_t q = 0; q < m; ++q) k[i * m + p][j * m + q] = a[i][j] * b[p][q];
    return k;
}

// Classical Gram-Schmidt on the columns of h. The resulting R has a positive
// real diagonal, so Q is already the phase-corrected factor.
inline Mat gram_schmidt_q(const Mat& h) {
    const std::size_t n = h.size();
    Mat q = zeros(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<C> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = h[i][j];
        for (std::size_t k = 0; k < j; ++k) {
            C dot = 0.0;
            for (std::size_t i = 0; i < n; ++i) dot += std::conj(q[i][k]) * h[i][j];
            for (std::size_t i = 0; i < n; ++i) v[i] -= dot * q[i][k];
        }
        double norm = 0.0;
        for (const C& z : v) norm += std::norm(z);
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < n; ++i) q[i][j] = v[i] / norm;
    }
    return q;
}

// rho(x) by the recipe: G and H from the four row-major blocks of x,
// U = Q of H, W = (U + I) G, rho = W W^dagger / Tr.
inline Mat rho_of(const std::vector<double>& x, std::size_t d) {
    const std::size_t b = d * d;
    Mat g = zeros(d), h = zeros(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const std::size_t k = i * d + j;
            g[i][j] = C(x[k], x[b + k]);
            h[i][j] = C(x[2 * b + k], x[3 * b + k]);
        }
    const Mat w = mul(add(gram_schmidt_q(h), eye(d)), g);
    Mat rho = mul(w, dagger(w));
    const double tr = trace(rho).real();
    for (auto& row : rho)
        for (C& z : row) z /= tr;
    return rho;
}

// Single-qubit eigenprojector: axis in "XYZ", bit 0 = +1 eigenvalue.
inline Mat qubit_projector(char axis, int bit) {
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<C> v;
    switch (axis) {
        case 'X': v = {s, bit == 0 ? s : -s}; break;
        case 'Y': v = {s, bit == 0 ? C(0, s) : C(0, -s)}; break;
        default: v = bit == 0 ? std::vector<C>{1.0, 0.0} : std::vector<C>{0.0, 1.0}; break;
    }
    Mat p = zeros(2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) p[i][j] = v[i] * std::conj(v[j]);
    return p;
}

// Effect for outcome l of a Pauli string; qubit 0 is the leftmost tensor factor.
inline Mat pauli_effect(const std::string& basis, std::size_t l) {
    const std::size_t q = basis.size();
    Mat e = {{1.0}};
    for (std::size_t k = 0; k < q; ++k) e = kron(e, qubit_projector(basis[k], static_cast<int>((l >> (q - 1 - k)) & 1)));
    return e;
}

struct Setting {
    std::string basis;
    std::vector<std::uint64_t> counts;
};

// sum over settings and outcomes of c ln Re Tr(E rho), using full matrix products.
inline double log_likelihood(const Mat& rho, const std::vector<Setting>& settings) {
    double total = 0.0;
    for (const auto& s : settings) {
        for (std::size_t l = 0; l < s.counts.size(); ++l) {
            if (s.counts[l] == 0) continue;
            const double p = trace(mul(pauli_effect(s.basis, l), rho)).real();
            if (p <= 1e-300) return -INFINITY;
            total += static_cast<double>(s.counts[l]) * std::log(p);
        }
    }
    return total;
}

// The density-matrix ACF written with explicit adjoints and matrix products.
inline std::vector<double> acf(const std::vector<Mat>& chain, std::size_t max_lag) {
    const std::size_t n = chain.size(), d = chain.front().size();
    Mat mean = zeros(d);
    for (const auto& r : chain) mean = add(mean, r);
    for (auto& row : mean)
        for (C& z : row) z /= static_cast<double>(n);
    std::vector<double> c(max_lag + 1, 0.0);
    for (std::size_t l = 0; l <= max_lag; ++l)
        for (std::size_t k = 0; k < n - max_lag; ++k)
            c[l] += trace(mul(dagger(add(chain[k], mean, -1.0)), add(chain[k + l], mean, -1.0))).real();
    const double c0 = c[0];
    for (double& v : c) v /= c0;
    return c;
}

inline double frobenius_sq(const Mat& a, const Mat& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) s += std::norm(a[i][j] - b[i][j]);
    return s;
}

}  // namespace oracle
