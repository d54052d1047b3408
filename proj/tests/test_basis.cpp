// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "bellvol/basis.hpp"
#include "bellvol/correlators.hpp"
#include "bellvol/rng.hpp"

using namespace bellvol;

namespace {

// Expanded product form computed factor by factor from prefix sums; written
// independently of bell_multiplicative and used as its oracle.
double bell_expanded(const CorrelatorMatrix& c) {
    const int n = c.n;
    double last = 0.0;
    for (int i = 1; i <= n; ++i) last += c.at(i, n);
    double result = last;
    for (int j = 1; j <= n - 1; ++j) {
        double prefix = 0.0;
        for (int i = 1; i <= j; ++i) prefix += c.at(i, j);
        result *= prefix - static_cast<double>(j) * c.at(j + 1, j);
    }
    return result;
}

CorrelatorMatrix tsirelson_two_setting() {
    // the two-setting correlators at the quantum boundary: all entries
    // 1/sqrt(2), except c_21 = -1/sqrt(2)
    CorrelatorMatrix c = CorrelatorMatrix::zero(2);
    const double v = 1.0 / std::sqrt(2.0);
    c.at(1, 1) = v;
    c.at(1, 2) = v;
    c.at(2, 1) = -v;
    c.at(2, 2) = v;
    return c;
}

CorrelatorMatrix random_correlators(int n, Philox& rng) {
    CorrelatorMatrix c = CorrelatorMatrix::zero(n);
    for (double& v : c.entries) v = 2.0 * rng.next_double() - 1.0;
    return c;
}

} // namespace

TEST_CASE("basis vectors match the defining pattern", "[basis]") {
    const auto b1 = build_basis(1);
    REQUIRE(b1.vectors == std::vector<std::vector<long long>>{{1}});

    const auto b2 = build_basis(2);
    REQUIRE(b2.vectors == std::vector<std::vector<long long>>{{1, -1}, {1, 1}});

    const auto b3 = build_basis(3);
    REQUIRE(b3.vectors == std::vector<std::vector<long long>>{{1, -1, 0}, {1, 1, -2}, {1, 1, 1}});

    CHECK_THROWS_AS(build_basis(0), std::invalid_argument);
    CHECK_THROWS_AS(build_basis(-2), std::invalid_argument);
}

TEST_CASE("orthogonality and squared norms are exact", "[basis]") {
    for (int n = 1; n <= 12; ++n) {
        const auto basis = build_basis(n);
        for (int j = 1; j <= n; ++j) {
            long long norm_sq = 0;
            for (int l = 0; l < n; ++l) norm_sq += basis.u(j)[l] * basis.u(j)[l];
            REQUIRE(norm_sq == basis.norm_squared(j));
            for (int k = j + 1; k <= n; ++k) {
                long long dot = 0;
                for (int l = 0; l < n; ++l) dot += basis.u(j)[l] * basis.u(k)[l];
                REQUIRE(dot == 0);
            }
        }
    }
}

TEST_CASE("norm product equals the squared factorial", "[basis]") {
    CHECK(norm_product_squared(build_basis(1)) == BigUint::from_u64(1));
    CHECK(norm_product_squared(build_basis(3)) == BigUint::from_u64(36));
    CHECK(norm_product_squared(build_basis(5)) == BigUint::from_u64(14400));
    for (int n = 1; n <= 12; ++n) {
        BigUint expected = BigUint::one();
        for (int k = 2; k <= n; ++k) {
            expected.mul_u32(static_cast<std::uint32_t>(k));
            expected.mul_u32(static_cast<std::uint32_t>(k));
        }
        REQUIRE(norm_product_squared(build_basis(n)) == expected);
    }
}

TEST_CASE("product value at the two-setting quantum boundary", "[correlators]") {
    const auto basis = build_basis(2);
    const auto c = tsirelson_two_setting();
    CHECK_THAT(bell_multiplicative(c, basis), Catch::Matchers::WithinAbs(2.0, 1e-12));
    CHECK_THAT(bell_additive(c, basis), Catch::Matchers::WithinAbs(2.0 * std::sqrt(2.0), 1e-12));
}

TEST_CASE("degenerate and mismatched inputs", "[correlators]") {
    const auto basis = build_basis(3);
    CHECK(bell_multiplicative(CorrelatorMatrix::zero(3), basis) == 0.0);
    CHECK(bell_additive(CorrelatorMatrix::zero(3), basis) == 0.0);
    CHECK_THROWS_AS(bell_multiplicative(CorrelatorMatrix::zero(2), basis), std::invalid_argument);
    CHECK_THROWS_AS(bell_additive(CorrelatorMatrix::zero(4), basis), std::invalid_argument);
}

TEST_CASE("product form agrees with the expanded form", "[correlators]") {
    Philox rng(12345, 0);
    for (int t = 0; t < 1000; ++t) {
        const int n = 1 + t % 8;
        const auto basis = build_basis(n);
        const auto c = random_correlators(n, rng);
        const double prod = bell_multiplicative(c, basis);
        const double expanded = bell_expanded(c);
        REQUIRE(std::abs(prod - expanded) <=
                1e-12 * std::max({1.0, std::abs(prod), std::abs(expanded)}));
    }
}

TEST_CASE("bounds check helper", "[correlators]") {
    auto c = CorrelatorMatrix::zero(2);
    CHECK(c.within_bounds());
    c.at(1, 2) = 1.0 + 1e-6;
    CHECK_FALSE(c.within_bounds());
    CHECK(c.within_bounds(1e-3));
}

TEST_CASE("product bounded by the scaled additive value for nonnegative factors", "[correlators]") {
    // arithmetic-geometric mean comparison: |B_n| <= (B'_n / n)^n whenever
    // every factor u_j . c_j is nonnegative; enforced by flipping column signs
    Philox rng(777, 0);
    const int n = 4;
    const auto basis = build_basis(n);
    for (int t = 0; t < 200; ++t) {
        auto c = random_correlators(n, rng);
        for (int j = 1; j <= n; ++j) {
            if (basis_dot_column(basis, c, j) < 0.0)
                for (int i = 1; i <= n; ++i) c.at(i, j) = -c.at(i, j);
        }
        const double product = bell_multiplicative(c, basis);
        const double additive = bell_additive(c, basis);
        REQUIRE(product >= -1e-12);
        const double bound = std::pow(additive / n, n);
        REQUIRE(std::abs(product) <= bound + 1e-12 * std::max(1.0, bound));
    }
}
