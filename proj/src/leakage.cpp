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

#include "attenlab/leakage.h"

#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>

namespace attenlab::leakage {

namespace {

int block_hd(const aes::Block &a, const aes::Block &b) {
    int hd = 0;
    for (int i = 0; i < 16; ++i)
        hd += std::popcount(static_cast<unsigned>(a[i] ^ b[i]));
    return hd;
}

} // namespace

void LeakageParams::validate() const {
    if (samples_per_round < 1)
        throw std::invalid_argument("samples_per_round must be at least 1");
    if (!(current_per_hd > 0.0))
        throw std::invalid_argument("current_per_hd must be positive");
    if (gaussian_noise_sigma < 0.0 || scope_noise_sigma < 0.0 || em_noise_sigma < 0.0)
        throw std::invalid_argument("noise sigmas must be non-negative");
    if (baseline_current < 0.0)
        throw std::invalid_argument("baseline_current must be non-negative");
}

std::array<int, kCyclesPerFrame> cycle_hamming_distances(const aes::StateTrace &trace) {
    std::array<int, kCyclesPerFrame> hd{};
    for (int r = 1; r <= aes::kRounds; ++r)
        hd[r] = block_hd(trace.round_states[r - 1], trace.round_states[r]);
    return hd;
}

CurrentWaveform synthesize_crypto_current(const aes::StateTrace &trace, const LeakageParams &params,
                                          double aes_clock_hz, CounterRng &rng) {
    if (!(aes_clock_hz > 0.0))
        throw std::invalid_argument("AES clock must be positive");
    const int spr = params.samples_per_round;
    CurrentWaveform w;
    w.dt = 1.0 / (aes_clock_hz * spr);
    w.samples.resize(static_cast<std::size_t>(kCyclesPerFrame) * spr);
    const auto hd = cycle_hamming_distances(trace);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (int c = 0; c < kCyclesPerFrame; ++c) {
        double i = params.baseline_current + params.current_per_hd * hd[c];
        if (params.gaussian_noise_sigma > 0.0)
            i += params.gaussian_noise_sigma * noise(rng);
        i = std::max(i, 0.0);
        std::fill_n(w.samples.begin() + c * spr, spr, i);
    }
    return w;
}

CurrentWaveform synthesize_crypto_current(const aes::StateTrace &trace, const LeakageParams &params,
                                          double aes_clock_hz, std::uint64_t index) {
    auto rng = make_rng(params.rng_seed, Stream::algorithmic_noise, index);
    return synthesize_crypto_current(trace, params, aes_clock_hz, rng);
}

CurrentWaveform derive_em_proxy(const CurrentWaveform &supply, const LeakageParams &params, CounterRng &rng) {
    CurrentWaveform em;
    em.dt = supply.dt;
    em.samples.resize(supply.size());
    std::normal_distribution<double> noise(0.0, 1.0);
    const double gain = supply.dt > 0.0 ? params.em_scale / supply.dt : 0.0;
    for (std::size_t i = 0; i < supply.size(); ++i) {
        double v = i == 0 ? 0.0 : gain * (supply.samples[i] - supply.samples[i - 1]);
        if (params.em_noise_sigma > 0.0)
            v += params.em_noise_sigma * noise(rng);
        em.samples[i] = v;
    }
    return em;
}

CurrentWaveform derive_em_proxy(const CurrentWaveform &supply, const LeakageParams &params, std::uint64_t index) {
    auto rng = make_rng(params.rng_seed, Stream::em_noise, index);
    return derive_em_proxy(supply, params, rng);
}

double expected_mean_current(const LeakageParams &params) {
    // 14 of the 16 cycles toggle on average half of 128 bits.
    return params.baseline_current + params.current_per_hd * 64.0 * aes::kRounds / kCyclesPerFrame;
}

} // namespace attenlab::leakage
