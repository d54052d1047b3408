// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>

namespace bellvol {

// Philox4x32-10 counter-based generator. Chosen over <random> engines because
// the full output stream is bit-exact across platforms and standard library
// implementations, and substreams are free: (seed, stream) index a pairwise
// independent sequence, so parallel trials never share state.
//
// Matches the published reference vectors:
//   ctr 0, key 0        -> 6627e8d5 e169c58d bc57ac4c 9b00dbd8
//   ctr ~0, key ~0      -> 408f276d 41c83b0e a20bc7c6 6d5451fd
class Philox {
  public:
    explicit Philox(std::uint64_t seed, std::uint64_t stream = 0) {
        key_[0] = static_cast<std::uint32_t>(seed);
        key_[1] = static_cast<std::uint32_t>(seed >> 32);
        ctr_ = {0, 0, static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    }

    std::uint32_t next_u32() {
        if (have_ == 0) refill();
        return block_[4 - have_--];
    }

    std::uint64_t next_u64() {
        std::uint64_t lo = next_u32();
        return lo | (static_cast<std::uint64_t>(next_u32()) << 32);
    }

    // uniform in [0, 1) with 53 random bits
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [0, n); modulo bias is < n / 2^64, negligible for n < 2^32
    std::uint32_t next_below(std::uint32_t n) {
        return static_cast<std::uint32_t>(next_u64() % n);
    }

    int next_sign() { return (next_u32() & 1u) ? 1 : -1; }

    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key) {
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = 0xD2511F53ull * ctr[0];
            const std::uint64_t p1 = 0xCD9E8D57ull * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
                   static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
                   static_cast<std::uint32_t>(p0)};
            key[0] += 0x9E3779B9u;
            key[1] += 0xBB67AE85u;
        }
        return ctr;
    }

  private:
    void refill() {
        block_ = block(ctr_, key_);
        have_ = 4;
        if (++ctr_[0] == 0) ++ctr_[1]; // 64-bit block counter; streams live in ctr[2..3]
    }

    std::array<std::uint32_t, 4> ctr_{};
    std::array<std::uint32_t, 2> key_{};
    std::array<std::uint32_t, 4> block_{};
    int have_ = 0;
};

} // namespace bellvol
