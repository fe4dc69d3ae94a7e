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

#include "attenlab/experiment.h"

#include <gtest/gtest.h>

#include <algorithm>

using namespace attenlab;

namespace {

ExperimentConfig base_config(std::uint64_t seed = 1) {
    ExperimentConfig cfg;
    cfg.seed = seed;
    cfg.leakage.rng_seed = seed;
    return cfg;
}

double peak_to_peak(const float *x, std::size_t n) {
    const auto [lo, hi] = std::minmax_element(x, x + n);
    return *hi - *lo;
}

} // namespace

TEST(Modes, ParseAndPrint) {
    for (auto m : {CaptureMode::unprotected, CaptureMode::protected_mode, CaptureMode::degenerated, CaptureMode::vlb})
        EXPECT_EQ(parse_mode(to_string(m)), m);
    EXPECT_THROW(parse_mode("shielded"), std::invalid_argument);
}

TEST(Experiment, KeyFollowsSeedUnlessGiven) {
    auto a = base_config(1), b = base_config(2);
    EXPECT_EQ(experiment_key(a), experiment_key(base_config(1)));
    EXPECT_NE(experiment_key(a), experiment_key(b));
    aes::Key256 k{};
    k[3] = 9;
    a.attack.key = k;
    EXPECT_EQ(experiment_key(a), k);
}

TEST(Experiment, OperatingPoints) {
    const auto cfg = base_config();
    const auto prot = resolve_operating_point(cfg, CaptureMode::protected_mode);
    EXPECT_EQ(prot.region, pdn::Region::saturation);
    EXPECT_NEAR(prot.v_aes, cfg.device.v_aes_nominal, 0.02);
    EXPECT_DOUBLE_EQ(prot.vdd, cfg.device.vdd);

    const auto degen = resolve_operating_point(cfg, CaptureMode::degenerated);
    EXPECT_EQ(degen.device.topology, pdn::Topology::degenerated);

    const auto vlb = resolve_operating_point(cfg, CaptureMode::vlb);
    EXPECT_NEAR(vlb.vdd, cfg.device.vdd - cfg.attack.vdd_drop, 1e-12);
    EXPECT_EQ(vlb.region, pdn::Region::linear);
    EXPECT_GE(vlb.v_aes, cfg.device.v_aes_min);
    EXPECT_GT(vlb.n_on, prot.n_on);
    ASSERT_TRUE(vlb.feasibility.has_value());
    EXPECT_TRUE(vlb.feasibility->feasible);
    EXPECT_LE(vlb.feasibility->n_required, vlb.n_on);
    EXPECT_GT(vlb.settle_time, 0.0);
}

TEST(Experiment, InfeasibleVlbThrowsWithNumbers) {
    auto cfg = base_config();
    cfg.device.n_max = 200;
    try {
        resolve_operating_point(cfg, CaptureMode::vlb);
        FAIL() << "expected VlbInfeasible";
    } catch (const pdn::VlbInfeasible &e) {
        EXPECT_FALSE(e.detail().feasible);
        EXPECT_GT(e.detail().n_required, 200);
        EXPECT_EQ(e.detail().n_max, 200);
    }
}

TEST(Experiment, CaptureIsReproducibleAndWorkerIndependent) {
    const auto cfg = base_config(5);
    CaptureOptions opt;
    opt.mode = CaptureMode::protected_mode;
    opt.seed = 5;
    const auto a = capture_traces(cfg, opt, 300, 1);
    const auto b = capture_traces(cfg, opt, 300, 3);
    EXPECT_EQ(a.power.samples, b.power.samples);
    EXPECT_EQ(a.em.samples, b.em.samples);
    EXPECT_EQ(a.power.ciphertexts, b.power.ciphertexts);
    opt.seed = 6;
    const auto c = capture_traces(cfg, opt, 300, 1);
    EXPECT_NE(a.power.samples, c.power.samples);
}

TEST(Experiment, TraceFramesMatchAes) {
    const auto cfg = base_config(3);
    CaptureOptions opt;
    opt.seed = 3;
    TraceSource src(cfg, opt);
    EXPECT_EQ(src.n_samples(), 256u);
    EXPECT_DOUBLE_EQ(src.sample_rate(), 320e6);
    TraceChunk chunk;
    src.generate(10, 4, chunk);
    const aes::Aes256 cipher(experiment_key(cfg));
    for (int i = 0; i < 4; ++i)
        EXPECT_EQ(cipher.encrypt(chunk.pt[i]), chunk.ct[i]);
    EXPECT_EQ(src.correct_key_byte(0), aes::last_round_key_byte(cipher, 0));
}

TEST(Experiment, AveragingRepeatsPlaintexts) {
    const auto cfg = base_config();
    CaptureOptions opt;
    opt.averaging = 4;
    const auto cap = capture_traces(cfg, opt, 16);
    for (std::size_t i = 0; i < 16; ++i)
        EXPECT_EQ(cap.power.plaintexts[i], cap.power.plaintexts[i / 4 * 4]);
    EXPECT_NE(cap.power.plaintexts[0], cap.power.plaintexts[4]);
    EXPECT_NE(cap.power.samples[0], cap.power.samples[256]); // noise differs per repeat
}

TEST(Experiment, FixedPlaintextMode) {
    const auto cfg = base_config();
    CaptureOptions opt;
    opt.fixed_plaintext = true;
    const auto cap = capture_traces(cfg, opt, 8);
    for (const auto &pt : cap.power.plaintexts)
        EXPECT_EQ(pt, aes::Block{});
}

TEST(Experiment, ProtectedTracesFlattenTheSupply) {
    // Without measurement noise the protected supply swings at least 100x
    // less than the unprotected one over the same encryptions.
    auto cfg = base_config(4);
    cfg.leakage.scope_noise_sigma = 0.0;
    CaptureOptions opt;
    opt.seed = 4;
    opt.with_em = false;
    const auto open = capture_traces(cfg, opt, 64);
    opt.mode = CaptureMode::protected_mode;
    const auto prot = capture_traces(cfg, opt, 64);
    const double p_open = peak_to_peak(open.power.samples.data(), open.power.samples.size());
    const double p_prot = peak_to_peak(prot.power.samples.data(), prot.power.samples.size());
    EXPECT_GE(p_open / p_prot, 100.0) << p_open << " vs " << p_prot;
}

TEST(Experiment, AttenuationOrdering) {
    const auto cfg = base_config();
    const double cas = measure_attenuation(cfg, CaptureMode::protected_mode, 64, 1).ratio;
    const double deg = measure_attenuation(cfg, CaptureMode::degenerated, 64, 1).ratio;
    const double vlb = measure_attenuation(cfg, CaptureMode::vlb, 64, 1).ratio;
    EXPECT_GT(cas, 100.0);
    EXPECT_GT(cas / deg, 5.0);
    EXPECT_LT(vlb, cas / 10.0);
}

TEST(Experiment, DetectionDefaultScenario) {
    const auto cfg = base_config();
    const auto run = run_detection(cfg, cfg.attack.vdd_drop, cfg.attack.vlb_ramp, 1);
    ASSERT_TRUE(run.detected);
    EXPECT_LE(*run.latency, 0.8e-3);
    EXPECT_LE(run.budget_fraction, 0.011);
    EXPECT_FALSE(run.windows.empty());
}

TEST(Experiment, NoDropNoDetection) {
    const auto cfg = base_config();
    const auto run = run_detection(cfg, 0.0, cfg.attack.vlb_ramp, 1);
    EXPECT_FALSE(run.detected);
    EXPECT_FALSE(run.detection_time.has_value());
}

TEST(Experiment, FalseAlarmsAtRest) {
    EXPECT_EQ(count_false_alarms(base_config(), 20000, 2), 0);
}
