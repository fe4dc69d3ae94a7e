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

#include "attenlab/aes.h"
#include "attenlab/rng.h"

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace attenlab::leakage {

/// One encryption occupies a frame of this many clock cycles: an idle
/// cycle holding state 0, the 14 rounds, and a trailing idle cycle.
constexpr int kCyclesPerFrame = 16;

struct LeakageParams {
    double current_per_hd = 4e-6;      // A per toggled bit
    double baseline_current = 120e-6;  // A, static and clock-tree draw
    int samples_per_round = 16;
    double gaussian_noise_sigma = 10e-6; // A, per-cycle algorithmic noise
    double scope_noise_sigma = 75e-6;    // A, per-sample measurement noise
    double em_scale = 3.125e-9;          // s, multiplies d(supply)/dt
    double em_noise_sigma = 105e-6;      // A-equivalent
    std::uint64_t rng_seed = 0;

    void validate() const;
};

struct CurrentWaveform {
    double dt = 0.0;
    std::vector<double> samples;

    std::size_t size() const { return samples.size(); }
    double time(std::size_t i) const { return static_cast<double>(i) * dt; }
};

/// Register toggles per cycle of the frame.
std::array<int, kCyclesPerFrame> cycle_hamming_distances(const aes::StateTrace &trace);

/// Per-sample crypto current for one encryption. `rng` supplies the
/// algorithmic noise (one draw per cycle).
CurrentWaveform synthesize_crypto_current(const aes::StateTrace &trace, const LeakageParams &params,
                                          double aes_clock_hz, CounterRng &rng);

/// Same, with the noise stream derived from `params.rng_seed` and `index`.
CurrentWaveform synthesize_crypto_current(const aes::StateTrace &trace, const LeakageParams &params,
                                          double aes_clock_hz, std::uint64_t index = 0);

/// AC-coupled EM probe stand-in: scaled first difference plus noise.
CurrentWaveform derive_em_proxy(const CurrentWaveform &supply, const LeakageParams &params, CounterRng &rng);
CurrentWaveform derive_em_proxy(const CurrentWaveform &supply, const LeakageParams &params,
                                std::uint64_t index = 0);

/// Mean frame current over uniformly random state transitions.
double expected_mean_current(const LeakageParams &params);

} // namespace attenlab::leakage
