// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "bellvol/basis.hpp"
#include "bellvol/correlators.hpp"

namespace bellvol {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
};

inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 v) { return std::sqrt(dot(v, v)); }
inline Vec3 normalized(Vec3 v) {
    double m = norm(v);
    return {v.x / m, v.y / m, v.z / m};
}

// Reflection through the x-z plane. This is the (antiunitary-induced) map that
// relates the two parties' Bloch vectors for the singlet-class state used here.
inline Vec3 reflect_y(Vec3 v) { return {v.x, -v.y, v.z}; }

// Measurement directions for the first party: a_1 = x, and each subsequent
// a_i orthogonal to the running sum a_1 + ... + a_{i-1}. The running sum then
// grows like sqrt(i), which is what drives the product bound to n!.
// Deterministic tie-breaking: project (z, y, x) candidates in that order onto
// the plane orthogonal to the running sum and take the first non-degenerate.
inline std::vector<Vec3> construct_alice_directions(int n) {
    if (n <= 0) throw std::invalid_argument("construct_alice_directions: n must be positive");
    std::vector<Vec3> a;
    a.reserve(static_cast<std::size_t>(n));
    a.push_back({1.0, 0.0, 0.0});
    Vec3 sum = a[0];
    const Vec3 candidates[3] = {{0.0, 0.0, 1.0}, {0.0, 1.0, 0.0}, {1.0, 0.0, 0.0}};
    for (int i = 2; i <= n; ++i) {
        Vec3 next{};
        if (norm(sum) < 1e-12) {
            next = {1.0, 0.0, 0.0};
        } else {
            const Vec3 s = normalized(sum);
            for (const Vec3& c : candidates) {
                Vec3 p = c - dot(c, s) * s;
                if (norm(p) > 1e-8) {
                    next = normalized(p);
                    break;
                }
            }
        }
        a.push_back(next);
        sum = sum + next;
    }
    return a;
}

// b_j proportional to R_y(V_A u_j), where V_A u_j = sum_i u_j(i) a_i.
inline std::vector<Vec3> bob_directions(const std::vector<Vec3>& alice, const OrthogonalBasis& basis) {
    if (static_cast<int>(alice.size()) != basis.n)
        throw std::invalid_argument("bob_directions: direction count and basis dimension differ");
    std::vector<Vec3> b;
    b.reserve(alice.size());
    for (int j = 1; j <= basis.n; ++j) {
        const auto& u = basis.u(j);
        Vec3 w{};
        for (int i = 1; i <= basis.n; ++i)
            w = w + static_cast<double>(u[static_cast<std::size_t>(i) - 1]) * alice[static_cast<std::size_t>(i) - 1];
        w = reflect_y(w);
        if (norm(w) < 1e-12)
            throw std::runtime_error("bob_directions: degenerate setup, V_A u_j vanishes");
        b.push_back(normalized(w));
    }
    return b;
}

struct MeasurementSetup {
    int n = 0;
    std::vector<Vec3> alice;
    std::vector<Vec3> bob;

    bool directions_unit(double tol = 1e-9) const {
        for (const auto& v : alice)
            if (std::abs(norm(v) - 1.0) > tol) return false;
        for (const auto& v : bob)
            if (std::abs(norm(v) - 1.0) > tol) return false;
        return true;
    }
};

// The canonical product-bound-saturating setup for dimension n.
inline MeasurementSetup saturating_setup(int n) {
    MeasurementSetup s;
    s.n = n;
    s.alice = construct_alice_directions(n);
    s.bob = bob_directions(s.alice, build_basis(n));
    return s;
}

// Correlators for the maximally entangled two-qubit state:
// c_ij = a_i . R_y(b_j). Marginals vanish for this state.
inline CorrelatorMatrix correlators_epr(const MeasurementSetup& setup) {
    if (setup.n <= 0 || static_cast<int>(setup.alice.size()) != setup.n ||
        static_cast<int>(setup.bob.size()) != setup.n)
        throw std::invalid_argument("correlators_epr: inconsistent setup");
    CorrelatorMatrix c = CorrelatorMatrix::zero(setup.n);
    for (int i = 1; i <= setup.n; ++i)
        for (int j = 1; j <= setup.n; ++j)
            c.at(i, j) = dot(setup.alice[static_cast<std::size_t>(i) - 1],
                             reflect_y(setup.bob[static_cast<std::size_t>(j) - 1]));
    return c;
}

// Reduced state of the first party, as a Bloch vector (||r|| <= 1).
struct BlochState {
    Vec3 r{};
    bool valid(double tol = 1e-12) const { return norm(r) <= 1.0 + tol; }
};

// One party's moment matrix: R_ik = a_i.a_k + i (a_i x a_k).r.
// Hermitian with unit diagonal for unit direction vectors.
struct MomentMatrix {
    int n = 0;
    std::vector<std::complex<double>> entries; // row-major

    std::complex<double>& at(int i, int k) {
        return entries[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n) + static_cast<std::size_t>(k - 1)];
    }
    std::complex<double> at(int i, int k) const {
        return entries[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n) + static_cast<std::size_t>(k - 1)];
    }
};

inline MomentMatrix moment_matrix(const std::vector<Vec3>& alice, const BlochState& state) {
    MomentMatrix m;
    m.n = static_cast<int>(alice.size());
    m.entries.assign(static_cast<std::size_t>(m.n) * static_cast<std::size_t>(m.n), {});
    for (int i = 1; i <= m.n; ++i)
        for (int k = 1; k <= m.n; ++k) {
            const Vec3& ai = alice[static_cast<std::size_t>(i) - 1];
            const Vec3& ak = alice[static_cast<std::size_t>(k) - 1];
            m.at(i, k) = {dot(ai, ak), dot(cross(ai, ak), state.r)};
        }
    return m;
}

inline void require_hermitian(const MomentMatrix& m, double tol = 1e-12) {
    for (int i = 1; i <= m.n; ++i)
        for (int k = i; k <= m.n; ++k)
            if (std::abs(m.at(i, k) - std::conj(m.at(k, i))) > tol)
                throw std::invalid_argument("matrix is not Hermitian");
}

// Minimum eigenvalue of R - c c^T for a real column c. Nonnegative whenever
// the correlator column is realizable from the state behind R; this is the
// positivity block of the Schur complement of the joint moment matrix.
inline double schur_gap(const MomentMatrix& m, const std::vector<double>& c_column) {
    if (static_cast<int>(c_column.size()) != m.n)
        throw std::invalid_argument("schur_gap: column length and matrix dimension differ");
    require_hermitian(m);
    Eigen::MatrixXcd mat(m.n, m.n);
    for (int i = 1; i <= m.n; ++i)
        for (int k = 1; k <= m.n; ++k)
            mat(i - 1, k - 1) = m.at(i, k) - c_column[static_cast<std::size_t>(i) - 1] *
                                                 c_column[static_cast<std::size_t>(k) - 1];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(mat, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

// sum_j (u_j/||u_j||)^T R (u_j/||u_j||) == n for any Hermitian R with unit
// diagonal, because sum_j u_j u_j^T / ||u_j||^2 is the identity. Only the real
// part contributes: each quadratic form in a real vector kills the
// antisymmetric imaginary part.
inline double quadratic_sum(const MomentMatrix& m, const OrthogonalBasis& basis) {
    if (m.n != basis.n) throw std::invalid_argument("quadratic_sum: dimensions differ");
    for (int i = 1; i <= m.n; ++i)
        if (std::abs(m.at(i, i) - 1.0) > 1e-12)
            throw std::invalid_argument("quadratic_sum: diagonal entries must equal 1");
    double total = 0.0;
    for (int j = 1; j <= basis.n; ++j) {
        const auto& u = basis.u(j);
        double form = 0.0;
        for (int i = 1; i <= basis.n; ++i)
            for (int k = 1; k <= basis.n; ++k)
                form += static_cast<double>(u[static_cast<std::size_t>(i) - 1]) *
                        static_cast<double>(u[static_cast<std::size_t>(k) - 1]) * m.at(i, k).real();
        total += form / static_cast<double>(basis.norm_squared(j));
    }
    return total;
}

} // namespace bellvol
