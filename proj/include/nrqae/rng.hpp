// Copyright 2026 The nrqae Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace nrqae {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// A stream is identified by a 64-bit key and a 64-bit stream id; the
/// remaining 64 counter bits index blocks within the stream. Streams with
/// different ids never overlap, so trials and circuit terms can draw in any
/// order or in parallel and still reproduce. Satisfies
/// UniformRandomBitGenerator.
class Philox4x32 {
   public:
    using result_type = std::uint32_t;

    Philox4x32(std::uint64_t key, std::uint64_t stream)
        : key_{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)},
          stream_(stream) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        if (index_ == 4) {
            block_ = generate(block_counter_++);
            index_ = 0;
        }
        return block_[index_++];
    }

   private:
    std::array<std::uint32_t, 4> generate(std::uint64_t block) const {
        std::array<std::uint32_t, 4> ctr{static_cast<std::uint32_t>(block),
                                         static_cast<std::uint32_t>(block >> 32),
                                         static_cast<std::uint32_t>(stream_),
                                         static_cast<std::uint32_t>(stream_ >> 32)};
        std::array<std::uint32_t, 2> k = key_;
        for (int round = 0; round < 10; round++) {
            const std::uint64_t p0 = std::uint64_t{0xD2511F53} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{0xCD9E8D57} * ctr[2];
            ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ k[0], static_cast<std::uint32_t>(p1),
                   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ k[1], static_cast<std::uint32_t>(p0)};
            k[0] += 0x9E3779B9;
            k[1] += 0xBB67AE85;
        }
        return ctr;
    }

    std::array<std::uint32_t, 2> key_;
    std::uint64_t stream_;
    std::uint64_t block_counter_ = 0;
    std::array<std::uint32_t, 4> block_{};
    int index_ = 4;
};

/// SplitMix64 finalizer; used to fold structured stream coordinates into a
/// single 64-bit stream id.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Seed plus trial index. Concrete generators are derived per (depth, term,
/// attempt) so that every sampled quantity has its own substream.
struct RngStream {
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;

    Philox4x32 substream(std::uint64_t depth, std::uint64_t term, std::uint64_t attempt = 0) const {
        std::uint64_t id = mix64(trial);
        id = mix64(id ^ depth);
        id = mix64(id ^ (term << 8) ^ (attempt << 16));
        return Philox4x32(seed, id);
    }
};

}  // namespace nrqae
