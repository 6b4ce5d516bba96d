#pragma once

// Brute-force dense-matrix simulator used as an independent oracle for
// the statevector kernels: full 2^n x 2^n unitaries from Kronecker
// products, applied by plain matrix-vector products.

#include <complex>
#include <random>
#include <vector>

#include "qlth/statevector.hpp"

namespace oracle {

using Complex = std::complex<double>;
using CMat = std::vector<std::vector<Complex>>;
using CVec = std::vector<Complex>;

inline CMat identity(std::size_t n) {
    CMat m(n, CVec(n));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1.0;
    return m;
}

inline CMat kron(const CMat &a, const CMat &b) {
    const std::size_t ra = a.size(), ca = a[0].size();
    const std::size_t rb = b.size(), cb = b[0].size();
    CMat out(ra * rb, CVec(ca * cb));
    for (std::size_t i = 0; i < ra; ++i)
        for (std::size_t j = 0; j < ca; ++j)
            for (std::size_t k = 0; k < rb; ++k)
                for (std::size_t l = 0; l < cb; ++l)
                    out[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
    return out;
}

inline CMat mat2_to_dense(const qlth::Mat2 &u) {
    return {{u.at(0, 0), u.at(0, 1)}, {u.at(1, 0), u.at(1, 1)}};
}

// Qubit 0 is the most significant bit, so it is the first Kronecker
// factor.
inline CMat single_qubit_full(int n_qubits, int qubit, const qlth::Mat2 &u) {
    CMat full = {{1.0}};
    for (int q = 0; q < n_qubits; ++q) {
        full = kron(full, q == qubit ? mat2_to_dense(u) : identity(2));
    }
    return full;
}

inline CMat cnot_full(int n_qubits, int control, int target) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    const std::size_t sc = dim >> (control + 1);
    const std::size_t st = dim >> (target + 1);
    CMat out(dim, CVec(dim));
    for (std::size_t j = 0; j < dim; ++j) {
        const std::size_t i = (j & sc) ? (j ^ st) : j;
        out[i][j] = 1.0;
    }
    return out;
}

inline CVec matvec(const CMat &m, const CVec &v) {
    CVec out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < v.size(); ++j) acc += m[i][j] * v[j];
        out[i] = acc;
    }
    return out;
}

inline CVec random_state(int n_qubits, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CVec v(std::size_t{1} << n_qubits);
    double norm = 0.0;
    for (auto &a : v) {
        a = Complex{gauss(rng), gauss(rng)};
        norm += std::norm(a);
    }
    norm = std::sqrt(norm);
    for (auto &a : v) a /= norm;
    return v;
}

inline double max_abs_diff(const CVec &a, const std::vector<Complex> &b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

} // namespace oracle
