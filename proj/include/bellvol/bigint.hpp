// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bellvol {

// Unsigned arbitrary-precision integer, little-endian base-2^32 limbs.
// Only the scalar operations the factorial/strategy-value paths need:
// multiply by a 32-bit scalar, exponentiate a scalar, compare, print,
// and extract a natural logarithm. No limb is ever zero-padded at the top.
class BigUint {
  public:
    BigUint() = default;

    static BigUint from_u64(std::uint64_t v) {
        BigUint r;
        if (v) r.limbs_.push_back(static_cast<std::uint32_t>(v));
        if (v >> 32) r.limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
        return r;
    }

    static BigUint one() { return from_u64(1); }

    bool is_zero() const { return limbs_.empty(); }

    BigUint& mul_u32(std::uint32_t m) {
        if (m == 0 || is_zero()) {
            limbs_.clear();
            return *this;
        }
        std::uint64_t carry = 0;
        for (auto& limb : limbs_) {
            std::uint64_t p = static_cast<std::uint64_t>(limb) * m + carry;
            limb = static_cast<std::uint32_t>(p);
            carry = p >> 32;
        }
        if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
        return *this;
    }

    // *this *= base^exp, with 0^0 == 1
    BigUint& mul_pow_u32(std::uint32_t base, std::uint64_t exp) {
        for (std::uint64_t k = 0; k < exp; ++k) mul_u32(base);
        return *this;
    }

    static BigUint factorial(unsigned n) {
        BigUint r = one();
        for (unsigned k = 2; k <= n; ++k) r.mul_u32(k);
        return r;
    }

    friend bool operator==(const BigUint& a, const BigUint& b) { return a.limbs_ == b.limbs_; }
    friend bool operator!=(const BigUint& a, const BigUint& b) { return !(a == b); }

    friend bool operator<(const BigUint& a, const BigUint& b) {
        if (a.limbs_.size() != b.limbs_.size()) return a.limbs_.size() < b.limbs_.size();
        for (std::size_t i = a.limbs_.size(); i-- > 0;)
            if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i];
        return false;
    }

    // Natural log; the top 96 bits carry the mantissa so the result is
    // accurate to ~1 ulp of the double mantissa regardless of magnitude.
    double log_natural() const {
        if (is_zero()) throw std::domain_error("log of zero");
        const std::size_t k = limbs_.size();
        double top = 0.0;
        std::size_t used = k < 3 ? k : 3;
        for (std::size_t i = 0; i < used; ++i)
            top = top * 4294967296.0 + static_cast<double>(limbs_[k - 1 - i]);
        constexpr double ln_2_32 = 22.18070977791824990; // 32 * ln 2
        return std::log(top) + static_cast<double>(k - used) * ln_2_32;
    }

    // Lossy conversion; overflows to +inf for very large values.
    double to_double() const {
        double r = 0.0;
        for (std::size_t i = limbs_.size(); i-- > 0;) r = r * 4294967296.0 + limbs_[i];
        return r;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::vector<std::uint32_t> work(limbs_);
        std::string out;
        while (!work.empty()) {
            std::uint64_t rem = 0;
            for (std::size_t i = work.size(); i-- > 0;) {
                std::uint64_t cur = (rem << 32) | work[i];
                work[i] = static_cast<std::uint32_t>(cur / 1000000000u);
                rem = cur % 1000000000u;
            }
            while (!work.empty() && work.back() == 0) work.pop_back();
            std::string chunk = std::to_string(rem);
            if (work.empty()) {
                out.insert(0, chunk);
            } else {
                out.insert(0, std::string(9 - chunk.size(), '0') + chunk);
            }
        }
        return out;
    }

  private:
    std::vector<std::uint32_t> limbs_;
};

} // namespace bellvol
