// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>

#include "bellvol/bigint.hpp"

using bellvol::BigUint;

TEST_CASE("construction and decimal printing", "[bigint]") {
    CHECK(BigUint{}.is_zero());
    CHECK(BigUint::from_u64(0).to_string() == "0");
    CHECK(BigUint::from_u64(1).to_string() == "1");
    CHECK(BigUint::from_u64(999999999).to_string() == "999999999");
    CHECK(BigUint::from_u64(1000000000).to_string() == "1000000000");
    CHECK(BigUint::from_u64(4294967296ull).to_string() == "4294967296");
    CHECK(BigUint::from_u64(18446744073709551615ull).to_string() == "18446744073709551615");
}

TEST_CASE("scalar multiplication carries across limbs", "[bigint]") {
    BigUint v = BigUint::from_u64(0xFFFFFFFFull);
    v.mul_u32(0xFFFFFFFFu); // (2^32-1)^2 = 18446744065119617025
    CHECK(v.to_string() == "18446744065119617025");
    BigUint z = BigUint::from_u64(12345);
    z.mul_u32(0);
    CHECK(z.is_zero());
}

TEST_CASE("factorials match known values", "[bigint]") {
    CHECK(BigUint::factorial(0).to_string() == "1");
    CHECK(BigUint::factorial(1).to_string() == "1");
    CHECK(BigUint::factorial(12).to_string() == "479001600");
    CHECK(BigUint::factorial(20).to_string() == "2432902008176640000");
    CHECK(BigUint::factorial(25).to_string() == "15511210043330985984000000");
    CHECK(BigUint::factorial(12).to_double() == 479001600.0);
}

TEST_CASE("power helper with zero-exponent convention", "[bigint]") {
    BigUint v = BigUint::one();
    v.mul_pow_u32(0u, 0); // 0^0 == 1: no factor applied
    CHECK(v.to_string() == "1");
    v.mul_pow_u32(3u, 4);
    CHECK(v.to_string() == "81");
}

TEST_CASE("ordering", "[bigint]") {
    CHECK(BigUint::from_u64(5) < BigUint::from_u64(6));
    CHECK(BigUint::from_u64(4294967296ull) < BigUint::factorial(20));
    CHECK(BigUint::factorial(10) == BigUint::from_u64(3628800));
    CHECK(BigUint::factorial(10) != BigUint::from_u64(3628801));
}

TEST_CASE("natural log agrees with lgamma", "[bigint]") {
    for (int n : {10, 50, 100, 300}) {
        const double expected = std::lgamma(static_cast<double>(n) + 1.0);
        CHECK(std::abs(BigUint::factorial(static_cast<unsigned>(n)).log_natural() - expected) < 1e-9);
    }
    CHECK_THROWS_AS(BigUint{}.log_natural(), std::domain_error);
}
