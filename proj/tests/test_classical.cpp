// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

#include "bellvol/classical.hpp"
#include "bellvol/rng.hpp"

using namespace bellvol;
using Catch::Matchers::WithinAbs;

namespace {

// Oracle: the strategy polynomial evaluated through an explicit partial-sum
// table rather than a running prefix.
double eval_P_oracle(const std::vector<double>& mu) {
    const std::size_t n = mu.size();
    std::vector<double> partial(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) partial[i + 1] = partial[i] + mu[i];
    double result = partial[n];
    for (std::size_t j = 1; j < n; ++j) result *= partial[j] - static_cast<double>(j) * mu[j];
    return result;
}

// Oracle: the even-number product form of the deterministic strategy value,
// 2^ic ((ic/2)!)^2 = (2 * 4 * ... * ic)^2, assembled as a plain u64 (valid to n ~ 20).
std::uint64_t fd_value_oracle_u64(int n) {
    const int ic = fd_cutoff(n);
    std::uint64_t v = 1;
    for (int k = 2; k <= ic; k += 2) v *= static_cast<std::uint64_t>(k) * static_cast<std::uint64_t>(k);
    for (int t = 0; t < n - ic - 1; ++t) v *= static_cast<std::uint64_t>(ic);
    return v * static_cast<std::uint64_t>(n - ic);
}

} // namespace

TEST_CASE("strategy polynomial values", "[classical]") {
    CHECK(eval_P(std::vector<double>{1.0, 0.0}) == 1.0);
    CHECK(eval_P(std::vector<double>{-1.0, 1.0, 1.0, 1.0}) == -16.0);
    for (int n = 2; n <= 6; ++n)
        CHECK(eval_P(std::vector<double>(static_cast<std::size_t>(n), 1.0)) == 0.0);
    CHECK(eval_P(std::vector<double>{0.5}) == 0.5);
    CHECK_THROWS_AS(eval_P(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("strategy polynomial properties", "[classical]") {
    Philox rng(31337, 0);
    for (int t = 0; t < 500; ++t) {
        const int n = 1 + t % 8;
        std::vector<double> mu(static_cast<std::size_t>(n));
        for (double& v : mu) v = 2.0 * rng.next_double() - 1.0;

        const double value = eval_P(mu);
        REQUIRE_THAT(value, WithinAbs(eval_P_oracle(mu), 1e-12 * std::max(1.0, std::abs(value))));

        std::vector<double> negated(mu);
        for (double& v : negated) v = -v;
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        REQUIRE_THAT(eval_P(negated), WithinAbs(sign * value, 1e-12 * std::max(1.0, std::abs(value))));
    }
}

TEST_CASE("numeric Laplacian vanishes", "[classical]") {
    SECTION("quadratic case is exact at coarse steps") {
        Philox rng(41, 0);
        std::vector<double> mu(2);
        for (double h : {0.5, 0.125}) {
            for (int t = 0; t < 100; ++t) {
                for (double& v : mu) v = (2.0 * rng.next_double() - 1.0) * (1.0 - h) * 0.999;
                REQUIRE_THAT(laplacian_numeric(mu, h), WithinAbs(0.0, 1e-10));
            }
        }
    }
    SECTION("cubic case at a fine step") {
        const std::vector<double> mu{0.3, -0.2, 0.5};
        REQUIRE_THAT(laplacian_numeric(mu, 1e-3), WithinAbs(0.0, 1e-6));
    }
    SECTION("general interior points") {
        Philox rng(42, 0);
        const double h = 1e-3;
        std::vector<double> mu(5);
        for (int t = 0; t < 100; ++t) {
            for (double& v : mu) v = (2.0 * rng.next_double() - 1.0) * (1.0 - h) * 0.999;
            REQUIRE_THAT(laplacian_numeric(mu, h), WithinAbs(0.0, 1e-4));
        }
    }
    SECTION("step must keep displaced points inside the cube") {
        CHECK_THROWS_AS(laplacian_numeric(std::vector<double>{0.999, 0.0}, 1e-2), std::domain_error);
        CHECK_THROWS_AS(laplacian_numeric(std::vector<double>{0.0, 0.0}, 0.0), std::invalid_argument);
    }
}

TEST_CASE("strategy cutoff", "[classical]") {
    CHECK(fd_cutoff(1) == 0);
    CHECK(fd_cutoff(2) == 0);
    CHECK(fd_cutoff(4) == 2);
    CHECK(fd_cutoff(5) == 2);
    CHECK(fd_cutoff(9) == 6);
    CHECK(fd_cutoff(12) == 8);
    CHECK(fd_cutoff(10000) == 9900);
    CHECK_THROWS_AS(fd_cutoff(0), std::invalid_argument);
    for (int n = 1; n <= 300; ++n) {
        const int ic = fd_cutoff(n);
        const double x = n - std::sqrt(static_cast<double>(n));
        REQUIRE(ic % 2 == 0);
        REQUIRE(ic >= 0);
        REQUIRE(static_cast<double>(ic) <= x);
        REQUIRE(static_cast<double>(ic + 2) > x);
    }
}

TEST_CASE("deterministic strategy layout", "[classical]") {
    const auto s4 = fd_strategy(4);
    CHECK(s4.mu == std::vector<double>{-1.0, 1.0, 1.0, 1.0});
    CHECK(s4.bob_signs == std::vector<int>{1, 1, 1, 1});
    const auto s2 = fd_strategy(2);
    CHECK(s2.mu == std::vector<double>{1.0, 1.0});
    const auto s9 = fd_strategy(9);
    CHECK(s9.mu == std::vector<double>{-1.0, 1.0, -1.0, 1.0, -1.0, 1.0, 1.0, 1.0, 1.0});
}

TEST_CASE("deterministic strategy value", "[classical]") {
    const std::vector<std::pair<int, std::uint64_t>> frozen{
        {1, 1},  {2, 0},  {3, 0},      {4, 16},       {5, 48},        {6, 128},
        {7, 3072}, {8, 16384}, {9, 248832}, {12, 301989888}};
    for (const auto& [n, expected] : frozen)
        CHECK(fd_value(n) == BigUint::from_u64(expected));

    for (int n = 1; n <= 20; ++n) {
        CHECK(fd_value(n) == BigUint::from_u64(fd_value_oracle_u64(n)));
        if (n <= 12) {
            const double direct = std::abs(eval_P(fd_strategy(n).mu));
            CHECK(fd_value(n).to_double() == direct);
        }
    }
}

TEST_CASE("log route matches exact arithmetic", "[classical]") {
    CHECK_THROWS_AS(fd_log(2), std::domain_error);
    CHECK_THROWS_AS(fd_log(3), std::domain_error);
    CHECK(fd_log(1) == 0.0);
    for (int n = 4; n <= 300; ++n)
        REQUIRE_THAT(fd_log(n), WithinAbs(fd_value(n).log_natural(), 1e-9));
}

TEST_CASE("ratio to the factorial", "[classical]") {
    CHECK_THROWS_AS(ratio_fd_to_factorial(3), std::invalid_argument);
    CHECK_THAT(ratio_fd_to_factorial(4), WithinAbs(2.0 / 3.0, 1e-12));

    for (int n = 4; n <= 20; ++n) {
        // exact-rational reference within u64 range
        const double exact = static_cast<double>(fd_value_oracle_u64(n)) /
                             static_cast<double>(BigUint::factorial(static_cast<unsigned>(n)).to_double());
        const double via_logs = ratio_fd_to_factorial(n);
        REQUIRE_THAT(via_logs / exact, WithinAbs(1.0, 1e-9));
    }

    const double at_ten_thousand = ratio_fd_to_factorial(10000);
    CHECK_THAT(at_ten_thousand, WithinAbs(ratio_limit_reference(), 0.02));
    CHECK(at_ten_thousand < ratio_limit_reference()); // approaches from below
}

TEST_CASE("cube maximizer reproduces frozen optima", "[classical][maximize]") {
    // frozen from an independent brute-force search (dense face grids plus
    // multi-start pattern refinement)
    const auto r1 = maximize_P(1);
    CHECK_THAT(r1.value, WithinAbs(1.0, 1e-9));

    const auto r2 = maximize_P(2);
    CHECK_THAT(r2.value, WithinAbs(1.0, 1e-6));

    const auto r3 = maximize_P(3);
    CHECK_THAT(r3.value, WithinAbs(4.0, 1e-6));

    const auto r4 = maximize_P(4);
    CHECK_THAT(r4.value, WithinAbs(16.0, 1e-6));

    const auto r5 = maximize_P(5);
    CHECK_THAT(r5.value, WithinAbs(69.74250344928765, 1e-5));

    const auto r6 = maximize_P(6);
    CHECK_THAT(r6.value, WithinAbs(512.0, 1e-6));

    for (const auto& r : {r1, r2, r3, r4, r5, r6}) {
        REQUIRE_THAT(std::abs(eval_P(r.mu)), WithinAbs(r.value, 1e-9));
        for (double v : r.mu) REQUIRE(std::abs(v) <= 1.0);
    }
}

TEST_CASE("maximizer brackets the deterministic value and the quantum bound", "[classical][maximize]") {
    for (int n = 1; n <= 6; ++n) {
        const double fd = fd_value(n).to_double();
        const double best = maximize_P(n).value;
        double factorial = 1.0;
        for (int k = 2; k <= n; ++k) factorial *= k;
        REQUIRE(fd <= best + 1e-9);
        REQUIRE(best <= factorial + 1e-9);
    }
}

TEST_CASE("maximizer guardrails", "[classical][maximize]") {
    CHECK_THROWS_AS(maximize_P(7), std::invalid_argument);
    CHECK_THROWS_WITH(maximize_P(7), Catch::Matchers::ContainsSubstring("fd_"));
    CHECK_THROWS_AS(maximize_P(0), std::invalid_argument);
    CHECK_THROWS_AS(maximize_P(2, 1), std::invalid_argument);
    CHECK_NOTHROW(maximize_P(7, 5, 50, 7)); // raising the cap is allowed
}
