// Copyright 2026 The hardy-realist Authors
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

#ifndef HARDY_RNG_H
#define HARDY_RNG_H

#include <cstdint>
#include <limits>

namespace hardy {

/// SplitMix64 finalizer (Steele, Lea & Flood 2014). Bijective on 64-bit words.
constexpr uint64_t splitmix64_mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Counter-based SplitMix64 generator. Output n is splitmix64_mix(seed + (n + 1) * gamma),
/// so streams are bit-identical on every platform. Satisfies
/// UniformRandomBitGenerator, but simulation code draws through uniform01()
/// rather than <random> distributions, whose output is implementation-defined.
class SplitMix64 {
   public:
    using result_type = uint64_t;
    static constexpr uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    explicit constexpr SplitMix64(uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<uint64_t>::max(); }

    constexpr result_type operator()() {
        state_ += kGamma;
        return splitmix64_mix(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    constexpr double uniform01() {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

   private:
    uint64_t state_;
};

/// Seed of shard `index` under `master_seed`.
constexpr uint64_t derive_seed(uint64_t master_seed, uint64_t index) {
    return splitmix64_mix(splitmix64_mix(master_seed) ^ splitmix64_mix(index + SplitMix64::kGamma));
}

}  // namespace hardy

#endif
