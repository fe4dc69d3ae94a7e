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

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <numeric>

using namespace attenlab;

namespace {

aes::StateTrace sample_trace(std::uint8_t seed) {
    aes::Key256 key{};
    aes::Block pt{};
    for (int i = 0; i < 32; ++i)
        key[i] = static_cast<std::uint8_t>(seed * 31 + i);
    for (int i = 0; i < 16; ++i)
        pt[i] = static_cast<std::uint8_t>(seed * 7 + 3 * i);
    return aes::encrypt(key, pt);
}

leakage::LeakageParams noiseless() {
    leakage::LeakageParams p;
    p.gaussian_noise_sigma = 0.0;
    p.scope_noise_sigma = 0.0;
    p.em_noise_sigma = 0.0;
    return p;
}

} // namespace

TEST(Leakage, HammingDistancesFrameLayout) {
    const auto tr = sample_trace(1);
    const auto hd = leakage::cycle_hamming_distances(tr);
    EXPECT_EQ(hd[0], 0);
    EXPECT_EQ(hd[15], 0);
    for (int r = 1; r <= 14; ++r) {
        int expected = 0;
        for (int i = 0; i < 16; ++i)
            expected += std::popcount(static_cast<unsigned>(tr.round_states[r - 1][i] ^ tr.round_states[r][i]));
        EXPECT_EQ(hd[r], expected);
        EXPECT_GE(hd[r], 0);
        EXPECT_LE(hd[r], 128);
    }
}

TEST(Leakage, IdenticalStatesGiveBaselineOnly) {
    aes::StateTrace flat{};
    const auto p = noiseless();
    const auto w = leakage::synthesize_crypto_current(flat, p, 20e6, 0);
    for (double s : w.samples)
        EXPECT_DOUBLE_EQ(s, p.baseline_current);
}

TEST(Leakage, NoiselessWaveformIsAffineInHd) {
    const auto tr = sample_trace(2);
    const auto p = noiseless();
    const auto w = leakage::synthesize_crypto_current(tr, p, 20e6, 0);
    const auto hd = leakage::cycle_hamming_distances(tr);
    ASSERT_EQ(w.size(), 16u * p.samples_per_round);
    EXPECT_DOUBLE_EQ(w.dt, 1.0 / (20e6 * p.samples_per_round));
    for (std::size_t i = 0; i < w.size(); ++i)
        EXPECT_NEAR(w.samples[i], p.baseline_current + p.current_per_hd * hd[i / p.samples_per_round], 1e-18);
}

TEST(Leakage, SameIndexReproduces) {
    const auto tr = sample_trace(3);
    leakage::LeakageParams p;
    p.rng_seed = 99;
    const auto a = leakage::synthesize_crypto_current(tr, p, 20e6, 5);
    const auto b = leakage::synthesize_crypto_current(tr, p, 20e6, 5);
    const auto c = leakage::synthesize_crypto_current(tr, p, 20e6, 6);
    EXPECT_EQ(a.samples, b.samples);
    EXPECT_NE(a.samples, c.samples);
}

TEST(Leakage, NoiseHasConfiguredSpread) {
    aes::StateTrace flat{};
    leakage::LeakageParams p;
    p.samples_per_round = 1;
    double sum = 0, sum2 = 0;
    const int n = 4000;
    for (int k = 0; k < n; ++k) {
        const auto w = leakage::synthesize_crypto_current(flat, p, 20e6, static_cast<std::uint64_t>(k));
        for (double s : w.samples) {
            sum += s;
            sum2 += s * s;
        }
    }
    const double m = sum / (16.0 * n);
    const double sd = std::sqrt(sum2 / (16.0 * n) - m * m);
    EXPECT_NEAR(m, p.baseline_current, 0.5e-6);
    EXPECT_NEAR(sd, p.gaussian_noise_sigma, 0.5e-6);
}

TEST(Leakage, ExpectedMeanMatchesAverage) {
    auto p = noiseless();
    EXPECT_DOUBLE_EQ(leakage::expected_mean_current(p), 344e-6);
    double total = 0;
    const int n = 500;
    for (int k = 0; k < n; ++k) {
        const auto w = leakage::synthesize_crypto_current(sample_trace(static_cast<std::uint8_t>(k)), p, 20e6, 0);
        total += std::accumulate(w.samples.begin(), w.samples.end(), 0.0) / w.size();
    }
    EXPECT_NEAR(total / n, leakage::expected_mean_current(p), 3e-6);
}

TEST(Leakage, EmProxyIsScaledDerivative) {
    leakage::CurrentWaveform supply;
    supply.dt = 1e-9;
    supply.samples = {0.0, 1e-3, 1e-3, 0.5e-3};
    auto p = noiseless();
    p.em_scale = 2e-9;
    const auto em = leakage::derive_em_proxy(supply, p, 0);
    ASSERT_EQ(em.size(), 4u);
    EXPECT_DOUBLE_EQ(em.samples[0], 0.0);
    EXPECT_NEAR(em.samples[1], 2e-3, 1e-15);
    EXPECT_NEAR(em.samples[2], 0.0, 1e-15);
    EXPECT_NEAR(em.samples[3], -1e-3, 1e-15);
}

TEST(Leakage, RejectsBadParameters) {
    leakage::LeakageParams p;
    p.samples_per_round = 0;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = {};
    p.scope_noise_sigma = -1;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    EXPECT_THROW(leakage::synthesize_crypto_current(sample_trace(0), leakage::LeakageParams{}, 0.0, 0),
                 std::invalid_argument);
}
