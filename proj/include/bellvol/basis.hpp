// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bellvol/bigint.hpp"

namespace bellvol {

// The integer basis u_1..u_n of R^n used throughout:
//   u_j(l) = 1 for l <= j, -j for l = j+1, 0 for l > j+1   (j < n)
//   u_n    = (1, 1, ..., 1)
// Pairwise orthogonal by construction; ||u_j||^2 = j + j^2 for j < n and n for j = n.
struct OrthogonalBasis {
    int n = 0;
    std::vector<std::vector<long long>> vectors; // vectors[j-1] is u_j, length n

    const std::vector<long long>& u(int j) const { return vectors[static_cast<std::size_t>(j) - 1]; }

    long long norm_squared(int j) const {
        if (j < n) return static_cast<long long>(j) + static_cast<long long>(j) * j;
        return n;
    }
};

inline OrthogonalBasis build_basis(int n) {
    if (n <= 0) throw std::invalid_argument("build_basis: n must be positive");
    OrthogonalBasis basis;
    basis.n = n;
    basis.vectors.assign(static_cast<std::size_t>(n), std::vector<long long>(static_cast<std::size_t>(n), 0));
    for (int j = 1; j < n; ++j) {
        auto& u = basis.vectors[static_cast<std::size_t>(j) - 1];
        for (int l = 1; l <= j; ++l) u[static_cast<std::size_t>(l) - 1] = 1;
        u[static_cast<std::size_t>(j)] = -j;
    }
    for (int l = 0; l < n; ++l) basis.vectors[static_cast<std::size_t>(n) - 1][static_cast<std::size_t>(l)] = 1;
    return basis;
}

// prod_j ||u_j||^2 == (n!)^2, exactly; kept in exact arithmetic because the
// value overflows 64 bits already at n = 13.
inline BigUint norm_product_squared(const OrthogonalBasis& basis) {
    BigUint p = BigUint::one();
    for (int j = 1; j <= basis.n; ++j) p.mul_u32(static_cast<std::uint32_t>(basis.norm_squared(j)));
    return p;
}

} // namespace bellvol
