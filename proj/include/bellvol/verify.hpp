// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "bellvol/basis.hpp"
#include "bellvol/classical.hpp"
#include "bellvol/correlators.hpp"
#include "bellvol/quantum.hpp"
#include "bellvol/rng.hpp"

namespace bellvol {

struct CheckResult {
    std::string name;
    bool pass = false;
    double observed = 0.0;  // the extreme value seen
    double tolerance = 0.0; // the bound it was held against
    std::string detail;
};

namespace verify_detail {

inline Vec3 random_unit(Philox& rng) {
    const double z = 2.0 * rng.next_double() - 1.0;
    const double phi = 2.0 * std::acos(-1.0) * rng.next_double();
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {s * std::cos(phi), s * std::sin(phi), z};
}

inline MomentMatrix random_unit_diagonal_hermitian(int n, Philox& rng) {
    MomentMatrix m;
    m.n = n;
    m.entries.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), {});
    for (int i = 1; i <= n; ++i) {
        m.at(i, i) = 1.0;
        for (int k = i + 1; k <= n; ++k) {
            const double re = 2.0 * rng.next_double() - 1.0;
            const double im = 2.0 * rng.next_double() - 1.0;
            m.at(i, k) = {re, im};
            m.at(k, i) = {re, -im};
        }
    }
    return m;
}

// even-number product form of the deterministic strategy value, kept as an
// independent route to the closed form used by fd_value
inline BigUint fd_value_even_product(int n) {
    const int ic = fd_cutoff(n);
    const int tail = n - ic - 1;
    BigUint v = BigUint::one();
    for (int k = 2; k <= ic; k += 2) {
        v.mul_u32(static_cast<std::uint32_t>(k));
        v.mul_u32(static_cast<std::uint32_t>(k));
    }
    if (tail > 0) v.mul_pow_u32(static_cast<std::uint32_t>(ic), static_cast<std::uint64_t>(tail));
    v.mul_u32(static_cast<std::uint32_t>(n - ic));
    return v;
}

} // namespace verify_detail

inline CheckResult check_basis_identities(int n_max = 12) {
    CheckResult r{"basis-identities", true, 0.0, 0.0,
                  "orthogonality and norm product in exact integer arithmetic, n = 1.." + std::to_string(n_max)};
    for (int n = 1; n <= n_max; ++n) {
        const OrthogonalBasis basis = build_basis(n);
        for (int j = 1; j <= n; ++j) {
            for (int k = j + 1; k <= n; ++k) {
                long long dot = 0;
                for (int l = 0; l < n; ++l)
                    dot += basis.u(j)[static_cast<std::size_t>(l)] * basis.u(k)[static_cast<std::size_t>(l)];
                if (dot != 0) {
                    r.pass = false;
                    r.observed = std::max(r.observed, std::abs(static_cast<double>(dot)));
                }
            }
            long long norm_sq = 0;
            for (int l = 0; l < n; ++l)
                norm_sq += basis.u(j)[static_cast<std::size_t>(l)] * basis.u(j)[static_cast<std::size_t>(l)];
            if (norm_sq != basis.norm_squared(j)) r.pass = false;
        }
        BigUint expected = BigUint::one();
        for (int k = 2; k <= n; ++k) {
            expected.mul_u32(static_cast<std::uint32_t>(k));
            expected.mul_u32(static_cast<std::uint32_t>(k));
        }
        if (norm_product_squared(basis) != expected) r.pass = false;
    }
    return r;
}

inline CheckResult check_saturation(int n_max = 8, double tol = 1e-9) {
    CheckResult r{"product-saturation", true, 0.0, tol,
                  "relative deviation of the product value from n!, n = 2.." + std::to_string(n_max)};
    for (int n = 2; n <= n_max; ++n) {
        const OrthogonalBasis basis = build_basis(n);
        const CorrelatorMatrix c = correlators_epr(saturating_setup(n));
        double factorial = 1.0;
        for (int k = 2; k <= n; ++k) factorial *= k;
        const double rel = std::abs(bell_multiplicative(c, basis) - factorial) / factorial;
        r.observed = std::max(r.observed, rel);
    }
    r.pass = r.observed <= tol;
    return r;
}

inline CheckResult check_quadratic_sum(int trials = 1000, std::uint64_t seed = 1, double tol = 1e-9) {
    CheckResult r{"quadratic-sum-identity", true, 0.0, tol,
                  "sum of normalized basis quadratic forms vs dimension, random Hermitian unit-diagonal, sizes up to 16"};
    Philox rng(seed, 201);
    for (int t = 0; t < trials; ++t) {
        const int n = 1 + t % 16;
        const OrthogonalBasis basis = build_basis(n);
        const MomentMatrix m = verify_detail::random_unit_diagonal_hermitian(n, rng);
        r.observed = std::max(r.observed, std::abs(quadratic_sum(m, basis) - static_cast<double>(n)));
    }
    r.pass = r.observed <= tol;
    return r;
}

inline CheckResult check_schur_gaps(int trials = 1000, std::uint64_t seed = 1, double tol = 1e-9) {
    CheckResult r{"schur-gap-positivity", true, 0.0, tol,
                  "minimum eigenvalue of R - c c^T over random states and directions, n <= 8"};
    Philox rng(seed, 202);
    double min_gap = 0.0;
    for (int t = 0; t < trials; ++t) {
        const int n = 2 + t % 7;
        MeasurementSetup setup;
        setup.n = n;
        for (int i = 0; i < n; ++i) setup.alice.push_back(verify_detail::random_unit(rng));
        for (int j = 0; j < n; ++j) setup.bob.push_back(verify_detail::random_unit(rng));
        const CorrelatorMatrix epr = correlators_epr(setup);
        // mix the maximally entangled state with product noise: correlators
        // scale by p while the reduced state picks up a Bloch vector (1-p) r'
        const double p = (t % 2 == 0) ? 1.0 : rng.next_double();
        BlochState state;
        if (p < 1.0) {
            const double len = rng.next_double();
            const Vec3 dir = verify_detail::random_unit(rng);
            state.r = ((1.0 - p) * len) * dir;
        }
        const MomentMatrix m = moment_matrix(setup.alice, state);
        for (int j = 1; j <= n; ++j) {
            std::vector<double> column = epr.column(j);
            for (double& v : column) v *= p;
            min_gap = std::min(min_gap, schur_gap(m, column));
        }
    }
    r.observed = min_gap;
    r.pass = min_gap >= -tol;
    return r;
}

inline CheckResult check_laplacian_quadratic(int points = 100, std::uint64_t seed = 1, double tol = 1e-10) {
    const double h = 0.125; // central differences are exact for the quadratic case
    CheckResult r{"laplacian-quadratic-exact", true, 0.0, tol,
                  "n = 2 Laplacian at h = 0.125 over random interior points"};
    Philox rng(seed, 203);
    std::vector<double> mu(2);
    for (int t = 0; t < points; ++t) {
        for (double& v : mu) v = (2.0 * rng.next_double() - 1.0) * (1.0 - h) * 0.999;
        r.observed = std::max(r.observed, std::abs(laplacian_numeric(mu, h)));
    }
    r.pass = r.observed <= tol;
    return r;
}

inline CheckResult check_laplacian_harmonic(int points = 100, std::uint64_t seed = 1, double tol = 1e-4) {
    const double h = 1e-3;
    CheckResult r{"laplacian-harmonic", true, 0.0, tol,
                  "Laplacian magnitude at h = 1e-3 over random interior points, n = 2..6"};
    Philox rng(seed, 204);
    for (int n = 2; n <= 6; ++n) {
        std::vector<double> mu(static_cast<std::size_t>(n));
        for (int t = 0; t < points; ++t) {
            for (double& v : mu) v = (2.0 * rng.next_double() - 1.0) * (1.0 - h) * 0.999;
            r.observed = std::max(r.observed, std::abs(laplacian_numeric(mu, h)));
        }
    }
    r.pass = r.observed <= tol;
    return r;
}

inline CheckResult check_fd_forms(int n_max = 300) {
    CheckResult r{"fd-closed-forms", true, 0.0, 0.0,
                  "closed form vs even-product form (exact), and vs the evaluated strategy for n <= 12"};
    for (int n = 1; n <= n_max; ++n)
        if (fd_value(n) != verify_detail::fd_value_even_product(n)) r.pass = false;
    for (int n = 1; n <= 12; ++n) {
        const LocalStrategy s = fd_strategy(n);
        const double direct = std::abs(eval_P(s.mu));
        const double closed = fd_value(n).to_double();
        r.observed = std::max(r.observed, std::abs(direct - closed));
    }
    r.pass = r.pass && r.observed == 0.0;
    return r;
}

inline CheckResult check_fd_log_agreement(int n_max = 300, double tol = 1e-9) {
    CheckResult r{"fd-log-agreement", true, 0.0, tol,
                  "log of the exact value vs the lgamma route, n = 4.." + std::to_string(n_max)};
    for (int n = 4; n <= n_max; ++n)
        r.observed = std::max(r.observed, std::abs(fd_value(n).log_natural() - fd_log(n)));
    r.pass = r.observed <= tol;
    return r;
}

inline CheckResult check_ratio_limit(double tol = 0.02) {
    CheckResult r{"ratio-limit", true, 0.0, tol,
                  "FD/n! at n = 10000 against the asymptotic value sqrt(pi/(2e))"};
    r.observed = std::abs(ratio_fd_to_factorial(10000) - ratio_limit_reference());
    r.pass = r.observed <= tol;
    return r;
}

inline std::vector<CheckResult> run_property_suite(int n_max = 8, int trials = 1000, std::uint64_t seed = 1) {
    return {
        check_basis_identities(),
        check_saturation(n_max),
        check_quadratic_sum(trials, seed),
        check_schur_gaps(trials, seed),
        check_laplacian_quadratic(100, seed),
        check_laplacian_harmonic(100, seed),
        check_fd_forms(),
        check_fd_log_agreement(),
        check_ratio_limit(),
    };
}

} // namespace bellvol
