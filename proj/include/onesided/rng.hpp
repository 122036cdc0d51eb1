// Copyright 2026 The onesided Authors
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

#include <cstddef>
#include <cstdint>
#include <limits>

namespace onesided {

/**
 * Counter-based random stream. Output k of a stream is a pure function of
 * (key, k), so a stream is a plain value: copying it forks the sequence,
 * and split(i) derives an independent child keyed by i. Sampled trials use
 * RngStream(seed).split(trial_index), which makes every trial reproducible
 * regardless of scheduling.
 */
class RngStream {
  public:
    using result_type = std::uint64_t;

    explicit RngStream(std::uint64_t seed) : key_(mix(seed ^ kSeedSalt)) {}

    [[nodiscard]] RngStream split(std::uint64_t index) const {
        RngStream child(0);
        child.key_ = mix(key_ ^ mix(index + kSplitSalt));
        return child;
    }

    result_type operator()() { return mix(key_ + kGolden * ++counter_); }

    /// Uniform double in [0, 1) built from the top 53 bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). n must be positive.
    std::size_t below(std::size_t n);

    /// Standard normal variate (Box-Muller).
    double normal();

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() {
        return std::numeric_limits<result_type>::max();
    }

  private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
    static constexpr std::uint64_t kSeedSalt = 0x6a09e667f3bcc909ULL;
    static constexpr std::uint64_t kSplitSalt = 0xbb67ae8584caa73bULL;

    // SplitMix64 finalizer.
    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace onesided
