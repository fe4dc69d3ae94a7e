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

#include "attenlab/config.h"
#include "attenlab/sca.h"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace attenlab {

enum class CaptureMode { unprotected, protected_mode, degenerated, vlb };

const char *to_string(CaptureMode mode);
CaptureMode parse_mode(std::string_view name);

/// The device key: attack.key if set, otherwise drawn from the seed.
aes::Key256 experiment_key(const ExperimentConfig &cfg);

/// Mean crypto current while encryptions run back to back.
double busy_load_current(const leakage::LeakageParams &params);

struct OperatingPoint {
    CaptureMode mode = CaptureMode::unprotected;
    pdn::DeviceConfig device; // topology set for the mode
    double vdd = 0.0;
    int n_on = 0;
    double v_aes = 0.0;
    pdn::Region region = pdn::Region::cutoff;
    double mean_load = 0.0;
    double settle_time = 0.0; // simulated closed-loop time spent settling
    std::optional<pdn::Feasibility> feasibility;
};

/// Settles the closed loop for `mode`. Throws pdn::VlbInfeasible when the
/// attack cannot bring the core back to a valid supply.
OperatingPoint resolve_operating_point(const ExperimentConfig &cfg, CaptureMode mode);

struct CaptureOptions {
    CaptureMode mode = CaptureMode::unprotected;
    std::uint64_t seed = 0; // trace randomness; the key follows cfg.seed
    int averaging = 1;      // consecutive repeats of each plaintext
    bool fixed_plaintext = false;
    aes::Block fixed_pt{};
    bool with_em = true;
};

struct TraceChunk {
    std::vector<float> power;
    std::vector<float> em;
    std::vector<aes::Block> pt;
    std::vector<aes::Block> ct;
};

/// Deterministic per-index trace generator for one capture setup.
class TraceSource {
  public:
    TraceSource(const ExperimentConfig &cfg, const CaptureOptions &options);
    TraceSource(const ExperimentConfig &cfg, const CaptureOptions &options, OperatingPoint op);

    const OperatingPoint &operating_point() const { return op_; }
    std::size_t n_samples() const { return n_samples_; }
    double sample_rate() const { return sample_rate_; }
    const aes::Aes256 &cipher() const { return cipher_; }
    std::uint8_t correct_key_byte(int byte_index) const;

    /// Fills traces [begin, begin + count) into `out`.
    void generate(std::size_t begin, std::size_t count, TraceChunk &out, unsigned workers = 0) const;
    void generate_one(std::size_t index, float *power, float *em, aes::Block &pt, aes::Block &ct) const;

    /// Observable supply current for one encryption, before measurement noise.
    leakage::CurrentWaveform supply_waveform(const leakage::CurrentWaveform &crypto) const;

  private:
    ExperimentConfig cfg_;
    CaptureOptions options_;
    OperatingPoint op_;
    aes::Aes256 cipher_;
    std::size_t n_samples_;
    double sample_rate_;
    double dt_;
};

struct Capture {
    sca::TraceSet power;
    sca::TraceSet em;
    OperatingPoint op;
};

Capture capture_traces(const ExperimentConfig &cfg, const CaptureOptions &options, std::size_t n_traces,
                       unsigned workers = 0);

struct AttenuationRun {
    double ratio = 0.0;
    leakage::CurrentWaveform crypto;
    leakage::CurrentWaveform supply;
    OperatingPoint op;
};

/// Back-to-back encryptions through the PDN; the ratio is taken after a
/// warm-up of `warmup_frames`.
AttenuationRun measure_attenuation(const ExperimentConfig &cfg, CaptureMode mode, std::size_t n_frames,
                                   std::uint64_t seed, std::size_t warmup_frames = 16);

struct DetectorWindow {
    double time = 0.0;
    long count_vdd = 0;
    long count_vaes = 0;
    bool flagged = false;
    double vdd = 0.0;
    double v_aes = 0.0;
    int n_on = 0;
};

struct DetectionRun {
    bool detected = false;
    std::optional<double> detection_time; // absolute simulated time
    std::optional<double> latency;        // from attack onset
    double onset = 0.0;
    double ramp_end = 0.0;
    long encryptions_before_halt = 0;     // completed after onset with a valid supply
    long encryptions_started = 0;
    double budget_fraction = 0.0;         // of the reference attack budget
    std::vector<DetectorWindow> windows;
};

constexpr long kReferenceAttackBudget = 105000;

/// Co-simulates PDN, SMC and detector with a VDD drop at attack.onset.
DetectionRun run_detection(const ExperimentConfig &cfg, double vdd_drop, double ramp, std::uint64_t seed);

/// Comparator windows that flag while the supply is held at its settled
/// value for `n_cycles` detector cycles.
long count_false_alarms(const ExperimentConfig &cfg, long n_cycles, std::uint64_t seed);

/// Smallest slice count whose open-loop steady state at `vdd_after`
/// stays at or above v_aes_min with the bank linear; -1 if none up to
/// n_max. Found by stepping the PDN for every candidate count.
long simulate_required_slices(const pdn::DeviceConfig &device, double vdd_after, double i_crypto, double dt);

} // namespace attenlab
