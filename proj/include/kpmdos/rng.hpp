// Copyright 2026 The kpmdos Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Philox4x32-10 counter-based generator.
 *
 * A generator is addressed by (seed, stream). The seed is the Philox key and
 * the stream occupies the upper 64 bits of the 128-bit counter, so distinct
 * streams of the same seed never overlap. Stream ids are built with
 * `stream_id(domain, a, b)`:
 *
 *   domain 1  random-circuit replica `a`
 *   domain 2  shot batch of replica `a`, moment `b`
 *   domain 3  free for callers (benchmarks, tests)
 *
 * All draws are bit-reproducible across platforms; no std distribution is
 * involved.
 */

#pragma once

#include <array>
#include <cstdint>

namespace kpmdos {

enum class StreamDomain : std::uint64_t {
    Replica = 1,
    ShotBatch = 2,
    User = 3,
};

constexpr std::uint64_t stream_id(StreamDomain domain, std::uint64_t a,
                                  std::uint64_t b = 0) {
    return (static_cast<std::uint64_t>(domain) << 56U) ^
           ((a & 0xFFFFFFFFULL) << 24U) ^ (b & 0xFFFFFFULL);
}

class Philox {
  public:
    using result_type = std::uint64_t;

    explicit Philox(std::uint64_t seed, std::uint64_t stream = 0)
        : key_{static_cast<std::uint32_t>(seed),
               static_cast<std::uint32_t>(seed >> 32U)},
          stream_{stream} {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()() {
        if (lane_ == 2) {
            refill();
        }
        return buffer_[lane_++];
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11U) * 0x1.0p-53; }

    /// Uniform integer in [0, n), n > 0. Rejection-free multiply-shift.
    std::uint64_t below(std::uint64_t n) {
        const unsigned __int128 prod =
            static_cast<unsigned __int128>((*this)()) * n;
        return static_cast<std::uint64_t>(prod >> 64U);
    }

  private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53U;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57U;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9U;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85U;

    void refill() {
        std::array<std::uint32_t, 4> ctr{
            static_cast<std::uint32_t>(counter_),
            static_cast<std::uint32_t>(counter_ >> 32U),
            static_cast<std::uint32_t>(stream_),
            static_cast<std::uint32_t>(stream_ >> 32U)};
        std::array<std::uint32_t, 2> key = key_;
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32U) ^ ctr[1] ^ key[0],
                   static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32U) ^ ctr[3] ^ key[1],
                   static_cast<std::uint32_t>(p0)};
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        buffer_[0] = (static_cast<std::uint64_t>(ctr[1]) << 32U) | ctr[0];
        buffer_[1] = (static_cast<std::uint64_t>(ctr[3]) << 32U) | ctr[2];
        ++counter_;
        lane_ = 0;
    }

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int lane_ = 2;
};

} // namespace kpmdos
