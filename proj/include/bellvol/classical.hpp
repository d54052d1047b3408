// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bellvol/bigint.hpp"

namespace bellvol {

// P_n(mu) = (sum_i mu_i) * prod_{j=1}^{n-1} (sum_{i<=j} mu_i - j mu_{j+1}).
// This is the local-strategy value of the product expression when the second
// party always answers +1 and the first answers +1 with probability (1+mu_i)/2.
inline double eval_P(std::span<const double> mu) {
    const std::size_t n = mu.size();
    if (n == 0) throw std::invalid_argument("eval_P: empty bias vector");
    double total = 0.0;
    for (double v : mu) total += v;
    double result = total;
    double prefix = 0.0;
    for (std::size_t j = 1; j < n; ++j) {
        prefix += mu[j - 1];
        result *= prefix - static_cast<double>(j) * mu[j];
    }
    return result;
}

// Central-difference Laplacian of P_n. P_n is harmonic, so this should vanish
// up to discretization and roundoff. Requires every |mu_i| < 1 - h so the
// displaced points stay inside the open cube.
inline double laplacian_numeric(std::span<const double> mu, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("laplacian_numeric: h must be positive");
    for (double v : mu)
        if (!(std::abs(v) < 1.0 - h))
            throw std::domain_error("laplacian_numeric: displaced point leaves the open cube");
    const double base = eval_P(mu);
    std::vector<double> work(mu.begin(), mu.end());
    double total = 0.0;
    for (std::size_t k = 0; k < work.size(); ++k) {
        const double orig = work[k];
        work[k] = orig + h;
        const double up = eval_P(work);
        work[k] = orig - h;
        const double down = eval_P(work);
        work[k] = orig;
        total += (up - 2.0 * base + down) / (h * h);
    }
    return total;
}

// Greatest even integer <= n - sqrt(n). The switch point of the deterministic
// strategy family below; exact for perfect squares because IEEE sqrt is.
inline int fd_cutoff(int n) {
    if (n <= 0) throw std::invalid_argument("fd_cutoff: n must be positive");
    int ic = static_cast<int>(std::floor(static_cast<double>(n) - std::sqrt(static_cast<double>(n))));
    if (ic % 2 != 0) --ic;
    return std::max(ic, 0);
}

struct LocalStrategy {
    std::vector<double> mu;    // first party's biases, entries in [-1, 1]
    std::vector<int> bob_signs; // second party's fixed answers, +-1
};

// Deterministic strategy: alternate -1, +1 up to the cutoff, then all +1;
// the second party always answers +1.
inline LocalStrategy fd_strategy(int n) {
    const int ic = fd_cutoff(n);
    LocalStrategy s;
    s.mu.resize(static_cast<std::size_t>(n));
    s.bob_signs.assign(static_cast<std::size_t>(n), 1);
    for (int i = 1; i <= n; ++i)
        s.mu[static_cast<std::size_t>(i) - 1] = (i <= ic) ? ((i % 2 == 0) ? 1.0 : -1.0) : 1.0;
    return s;
}

// |P_n| at the deterministic strategy, in closed form:
//   2^ic * ((ic/2)!)^2 * ic^(n-ic-1) * (n-ic),  with 0^0 == 1.
// Exact arbitrary-precision value; zero when ic == 0 and n >= 2.
inline BigUint fd_value(int n) {
    const int ic = fd_cutoff(n);
    const int tail = n - ic - 1;
    BigUint v = BigUint::one();
    v.mul_pow_u32(2u, static_cast<std::uint64_t>(ic));
    for (int k = 1; k <= ic / 2; ++k) {
        v.mul_u32(static_cast<std::uint32_t>(k));
        v.mul_u32(static_cast<std::uint32_t>(k));
    }
    if (tail > 0) v.mul_pow_u32(static_cast<std::uint32_t>(ic), static_cast<std::uint64_t>(tail));
    v.mul_u32(static_cast<std::uint32_t>(n - ic));
    return v;
}

// log of fd_value via lgamma, usable far beyond exact-arithmetic sizes.
inline double fd_log(int n) {
    const int ic = fd_cutoff(n);
    const int tail = n - ic - 1;
    if (ic == 0 && n >= 2) throw std::domain_error("fd_log: strategy value is zero");
    double log_value = static_cast<double>(ic) * std::log(2.0) + 2.0 * std::lgamma(ic / 2 + 1.0) +
                       std::log(static_cast<double>(n - ic));
    if (tail > 0) log_value += static_cast<double>(tail) * std::log(static_cast<double>(ic));
    return log_value;
}

// FD_n / n!, evaluated in the log domain so it stays finite for any n.
// Tends to sqrt(pi/(2e)) ~ 0.7602 from below (with a ~2/sqrt(n) sawtooth).
inline double ratio_fd_to_factorial(int n) {
    if (n < 4) throw std::invalid_argument("ratio_fd_to_factorial: requires n >= 4");
    return std::exp(fd_log(n) - std::lgamma(static_cast<double>(n) + 1.0));
}

inline double ratio_limit_reference() {
    return std::sqrt(std::acos(-1.0) / (2.0 * std::exp(1.0)));
}

struct MaximizeResult {
    std::vector<double> mu;
    double value = 0.0;
};

namespace detail {

inline double abs_P(const std::vector<double>& mu) { return std::abs(eval_P(mu)); }

// Coordinate-wise pattern search with shrinking steps. Deterministic.
inline void refine_candidate(std::vector<double>& mu, double& best, double initial_step, int max_sweeps) {
    double step = initial_step;
    for (int sweep = 0; sweep < max_sweeps && step > 1e-13; ++sweep) {
        bool improved = false;
        for (std::size_t k = 0; k < mu.size(); ++k) {
            const double orig = mu[k];
            for (double delta : {step, -step}) {
                const double cand = std::clamp(orig + delta, -1.0, 1.0);
                if (cand == mu[k]) continue;
                const double saved = mu[k];
                mu[k] = cand;
                const double v = abs_P(mu);
                if (v > best + 1e-15) {
                    best = v;
                    improved = true;
                } else {
                    mu[k] = saved;
                }
            }
        }
        if (!improved) step *= 0.5;
    }
}

inline bool lexicographic_less(const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return false;
}

} // namespace detail

// Global maximum of |P_n| over the closed cube [-1,1]^n. The maximum lies on
// the boundary (P_n is harmonic and non-constant), so each of the 2n faces is
// scanned on a closed grid, every vertex is enumerated exactly, and the best
// candidates are polished by pattern search. Faces are processed in a fixed
// order and ties break toward the lexicographically smaller maximizer, so the
// result is deterministic and independent of any parallel partitioning.
inline MaximizeResult maximize_P(int n, int resolution = 11, int refinements = 200, int cap = 6) {
    if (n <= 0) throw std::invalid_argument("maximize_P: n must be positive");
    if (n > cap)
        throw std::invalid_argument(
            "maximize_P: n exceeds the exhaustive-search cap (" + std::to_string(cap) +
            "); for large n use fd_value/fd_log, which give a closed-form lower bound");
    if (resolution < 2) throw std::invalid_argument("maximize_P: resolution must be at least 2");

    MaximizeResult best;
    best.mu.assign(static_cast<std::size_t>(n), -1.0);
    best.value = detail::abs_P(best.mu);

    auto consider = [&](const std::vector<double>& mu, double value) {
        if (value > best.value ||
            (value == best.value && detail::lexicographic_less(mu, best.mu))) {
            best.value = value;
            best.mu = mu;
        }
    };

    // exact vertex sweep
    std::vector<double> point(static_cast<std::size_t>(n));
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        for (int k = 0; k < n; ++k) point[static_cast<std::size_t>(k)] = (mask >> k) & 1 ? 1.0 : -1.0;
        consider(point, detail::abs_P(point));
    }

    const double spacing = 2.0 / static_cast<double>(resolution - 1);
    std::vector<double> axis(static_cast<std::size_t>(resolution));
    for (int t = 0; t < resolution; ++t) axis[static_cast<std::size_t>(t)] = -1.0 + spacing * t;
    axis[static_cast<std::size_t>(resolution) - 1] = 1.0;

    for (int face_coord = 0; face_coord < n; ++face_coord) {
        for (double face_sign : {-1.0, 1.0}) {
            std::vector<double> face_best_mu;
            double face_best = -1.0;
            std::vector<int> idx(static_cast<std::size_t>(n) - 1, 0);
            const std::size_t free_dims = static_cast<std::size_t>(n) - 1;
            while (true) {
                std::size_t pos = 0;
                for (int k = 0; k < n; ++k) {
                    if (k == face_coord) {
                        point[static_cast<std::size_t>(k)] = face_sign;
                    } else {
                        point[static_cast<std::size_t>(k)] = axis[static_cast<std::size_t>(idx[pos])];
                        ++pos;
                    }
                }
                const double v = detail::abs_P(point);
                if (v > face_best || (v == face_best && detail::lexicographic_less(point, face_best_mu))) {
                    face_best = v;
                    face_best_mu = point;
                }
                std::size_t carry = 0;
                while (carry < free_dims) {
                    if (++idx[carry] < resolution) break;
                    idx[carry] = 0;
                    ++carry;
                }
                if (carry == free_dims) break;
            }
            if (!face_best_mu.empty()) {
                detail::refine_candidate(face_best_mu, face_best, spacing, refinements);
                consider(face_best_mu, face_best);
            }
        }
    }
    return best;
}

} // namespace bellvol
