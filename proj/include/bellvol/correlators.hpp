// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "bellvol/basis.hpp"

namespace bellvol {

// Joint correlators c_ij = <A_i B_j>, i indexing one party's settings (rows)
// and j the other's (columns). Row-major storage.
struct CorrelatorMatrix {
    int n = 0;
    std::vector<double> entries;

    static CorrelatorMatrix zero(int n) {
        if (n <= 0) throw std::invalid_argument("CorrelatorMatrix: n must be positive");
        CorrelatorMatrix c;
        c.n = n;
        c.entries.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
        return c;
    }

    double& at(int i, int j) {
        return entries[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j - 1)];
    }
    double at(int i, int j) const {
        return entries[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j - 1)];
    }

    // column j as a vector over i = 1..n
    std::vector<double> column(int j) const {
        std::vector<double> col(static_cast<std::size_t>(n));
        for (int i = 1; i <= n; ++i) col[static_cast<std::size_t>(i) - 1] = at(i, j);
        return col;
    }

    bool within_bounds(double tol = 1e-9) const {
        for (double v : entries)
            if (!(std::abs(v) <= 1.0 + tol)) return false;
        return true;
    }
};

inline void require_same_dimension(const CorrelatorMatrix& c, const OrthogonalBasis& basis) {
    if (c.n != basis.n) throw std::invalid_argument("correlator matrix and basis dimensions differ");
    if (c.entries.size() != static_cast<std::size_t>(c.n) * static_cast<std::size_t>(c.n))
        throw std::invalid_argument("correlator matrix storage does not match its dimension");
}

inline double basis_dot_column(const OrthogonalBasis& basis, const CorrelatorMatrix& c, int j) {
    const auto& u = basis.u(j);
    double dot = 0.0;
    for (int i = 1; i <= basis.n; ++i)
        dot += static_cast<double>(u[static_cast<std::size_t>(i) - 1]) * c.at(i, j);
    return dot;
}

// B_n = prod_j (u_j . c_j): the product of projections of correlator columns
// onto the basis directions. Bounded by n! for quantum correlations.
inline double bell_multiplicative(const CorrelatorMatrix& c, const OrthogonalBasis& basis) {
    require_same_dimension(c, basis);
    double product = 1.0;
    for (int j = 1; j <= basis.n; ++j) product *= basis_dot_column(basis, c, j);
    return product;
}

// B'_n = sum_j (u_j . c_j), the additive counterpart; for n = 2 this is the
// familiar two-setting expression bounded by 2*sqrt(2).
inline double bell_additive(const CorrelatorMatrix& c, const OrthogonalBasis& basis) {
    require_same_dimension(c, basis);
    double sum = 0.0;
    for (int j = 1; j <= basis.n; ++j) sum += basis_dot_column(basis, c, j);
    return sum;
}

} // namespace bellvol
