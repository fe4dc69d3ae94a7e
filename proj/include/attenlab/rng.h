/*
 * SPDX-FileCopyrightText: <text>Copyright 2026 The attenlab authors</text>
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 * This file is part of attenlab.
 */

#pragma once

#include <cstdint>
#include <limits>

namespace attenlab {

/// Counter-based random source. Every (seed, stream, index) triple maps to
/// an independent sequence, so traces can be generated in any order.
class CounterRng {
  public:
    using result_type = std::uint64_t;

    CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
        : key_(mix(mix(seed ^ 0x243f6a8885a308d3ULL) + stream) ^ mix(index + 0x13198a2e03707344ULL)) {}

    explicit CounterRng(std::uint64_t key) : key_(mix(key)) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return mix(key_ + kGolden * ++counter_); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z += kGolden;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

  private:
    static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Named substreams drawn from the master seed.
enum class Stream : std::uint64_t {
    key = 1,
    plaintext = 2,
    algorithmic_noise = 3,
    scope_noise = 4,
    em_noise = 5,
    detector_jitter = 6,
};

inline CounterRng make_rng(std::uint64_t seed, Stream stream, std::uint64_t index = 0) {
    return CounterRng(seed, static_cast<std::uint64_t>(stream), index);
}

} // namespace attenlab
