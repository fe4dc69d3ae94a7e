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

#include "attenlab/detector.h"
#include "attenlab/parallel.h"

#include <algorithm>
#include <cmath>
#include <random>

namespace attenlab {

const char *to_string(CaptureMode mode) {
    switch (mode) {
    case CaptureMode::unprotected:
        return "unprotected";
    case CaptureMode::protected_mode:
        return "protected";
    case CaptureMode::degenerated:
        return "degenerated";
    case CaptureMode::vlb:
        return "vlb";
    }
    return "?";
}

CaptureMode parse_mode(std::string_view name) {
    if (name == "unprotected")
        return CaptureMode::unprotected;
    if (name == "protected")
        return CaptureMode::protected_mode;
    if (name == "degenerated")
        return CaptureMode::degenerated;
    if (name == "vlb")
        return CaptureMode::vlb;
    throw std::invalid_argument("unknown mode '" + std::string(name) + "'");
}

aes::Key256 experiment_key(const ExperimentConfig &cfg) {
    if (cfg.attack.key)
        return *cfg.attack.key;
    auto rng = make_rng(cfg.seed, Stream::key);
    aes::Key256 key{};
    for (std::size_t i = 0; i < key.size(); i += 8) {
        const std::uint64_t v = rng();
        for (std::size_t j = 0; j < 8; ++j)
            key[i + j] = static_cast<std::uint8_t>(v >> (8 * j));
    }
    return key;
}

double busy_load_current(const leakage::LeakageParams &params) {
    return params.baseline_current + params.current_per_hd * 64.0;
}

namespace {

int initial_slice_count(const pdn::DeviceConfig &device, double vdd, double load) {
    for (int n = 1; n <= device.n_max; ++n)
        if (pdn::equilibrium_voltage(device, vdd, n, load) >= device.v_aes_nominal)
            return n;
    return device.n_max;
}

pdn::SettleResult settle_nominal(const ExperimentConfig &cfg, const pdn::DeviceConfig &device, double load,
                                 double dt) {
    const int n0 = initial_slice_count(device, device.vdd, load);
    auto state = pdn::initial_state(device, pdn::equilibrium_voltage(device, device.vdd, n0, load), n0);
    return pdn::settle(state, device, cfg.smc, load, nullptr, cfg.attack.settle_limit, dt);
}

aes::Block random_block(CounterRng &rng) {
    aes::Block b{};
    const std::uint64_t lo = rng();
    const std::uint64_t hi = rng();
    for (int j = 0; j < 8; ++j) {
        b[j] = static_cast<std::uint8_t>(lo >> (8 * j));
        b[8 + j] = static_cast<std::uint8_t>(hi >> (8 * j));
    }
    return b;
}

} // namespace

OperatingPoint resolve_operating_point(const ExperimentConfig &cfg, CaptureMode mode) {
    OperatingPoint op;
    op.mode = mode;
    op.device = cfg.device;
    op.mean_load = leakage::expected_mean_current(cfg.leakage);
    op.vdd = cfg.device.vdd;
    if (mode == CaptureMode::unprotected) {
        op.v_aes = cfg.device.v_aes_nominal;
        return op;
    }
    op.device.topology = mode == CaptureMode::degenerated ? pdn::Topology::degenerated : pdn::Topology::cascoded;
    const double dt = pdn::default_time_step(op.device, cfg.leakage.samples_per_round);
    auto settled = settle_nominal(cfg, op.device, op.mean_load, dt);
    if (settled.brown_out)
        throw std::runtime_error("the slice bank cannot hold V_AES at its nominal value");
    op.settle_time = settled.state.time;

    if (mode == CaptureMode::vlb && cfg.attack.vdd_drop > 0.0) {
        const double vdd_after = cfg.device.vdd - cfg.attack.vdd_drop;
        try {
            op.feasibility = pdn::vlb_feasible(op.device, vdd_after, op.mean_load);
        } catch (const std::invalid_argument &) {
            // The drop is too small to push the bank out of saturation.
        }
        if (op.feasibility && !op.feasibility->feasible)
            throw pdn::VlbInfeasible("VLB infeasible: " + std::to_string(op.feasibility->n_required) +
                                         " slices required, " + std::to_string(op.device.n_max) + " available",
                                     *op.feasibility);
        const double start = settled.state.time;
        const auto attack = pdn::inject_vlb(settled.state, cfg.attack.vdd_drop, cfg.attack.vlb_ramp);
        settled = pdn::settle(settled.state, op.device, cfg.smc, op.mean_load, &attack,
                              start + cfg.attack.settle_limit, dt);
        if (settled.brown_out)
            throw pdn::VlbInfeasible("VLB infeasible: AES brown-out with all " + std::to_string(op.device.n_max) +
                                         " slices on",
                                     op.feasibility.value_or(pdn::Feasibility{}));
        op.settle_time = settled.state.time - start;
    }
    op.vdd = settled.state.v_dd;
    op.n_on = settled.state.n_on;
    op.v_aes = pdn::equilibrium_voltage(op.device, op.vdd, op.n_on, op.mean_load);
    op.region = pdn::bank_region(op.device, op.vdd, op.v_aes);
    return op;
}

TraceSource::TraceSource(const ExperimentConfig &cfg, const CaptureOptions &options)
    : TraceSource(cfg, options, resolve_operating_point(cfg, options.mode)) {}

TraceSource::TraceSource(const ExperimentConfig &cfg, const CaptureOptions &options, OperatingPoint op)
    : cfg_(cfg), options_(options), op_(std::move(op)), cipher_(experiment_key(cfg)),
      n_samples_(static_cast<std::size_t>(leakage::kCyclesPerFrame) * cfg.leakage.samples_per_round),
      sample_rate_(cfg.device.aes_clock_hz * cfg.leakage.samples_per_round),
      dt_(pdn::default_time_step(cfg.device, cfg.leakage.samples_per_round)) {
    if (options_.averaging < 1)
        throw std::invalid_argument("averaging must be at least 1");
}

std::uint8_t TraceSource::correct_key_byte(int byte_index) const {
    return aes::last_round_key_byte(cipher_, byte_index);
}

leakage::CurrentWaveform TraceSource::supply_waveform(const leakage::CurrentWaveform &crypto) const {
    if (op_.mode == CaptureMode::unprotected)
        return crypto;
    leakage::CurrentWaveform supply;
    supply.dt = crypto.dt;
    supply.samples.resize(crypto.size());
    auto state = pdn::initial_state(op_.device, op_.v_aes, op_.n_on);
    state.v_dd = op_.vdd;
    const auto slice = pdn::SliceModel::at(op_.device, op_.vdd);
    for (std::size_t s = 0; s < crypto.size(); ++s)
        supply.samples[s] = pdn::step_pdn(state, op_.device, cfg_.smc, slice, crypto.samples[s], crypto.dt);
    return supply;
}

void TraceSource::generate_one(std::size_t index, float *power, float *em, aes::Block &pt, aes::Block &ct) const {
    if (options_.fixed_plaintext) {
        pt = options_.fixed_pt;
    } else {
        auto rng = make_rng(options_.seed, Stream::plaintext, index / static_cast<std::size_t>(options_.averaging));
        pt = random_block(rng);
    }
    const auto trace = cipher_.trace(pt);
    ct = trace.ciphertext;
    auto noise = make_rng(options_.seed, Stream::algorithmic_noise, index);
    const auto crypto = leakage::synthesize_crypto_current(trace, cfg_.leakage, cfg_.device.aes_clock_hz, noise);
    const auto observed = supply_waveform(crypto);
    if (em) {
        auto em_rng = make_rng(options_.seed, Stream::em_noise, index);
        const auto probe = leakage::derive_em_proxy(observed, cfg_.leakage, em_rng);
        for (std::size_t s = 0; s < n_samples_; ++s)
            em[s] = static_cast<float>(probe.samples[s]);
    }
    auto scope = make_rng(options_.seed, Stream::scope_noise, index);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double sigma = cfg_.leakage.scope_noise_sigma;
    for (std::size_t s = 0; s < n_samples_; ++s)
        power[s] = static_cast<float>(observed.samples[s] + (sigma > 0.0 ? sigma * gauss(scope) : 0.0));
}

void TraceSource::generate(std::size_t begin, std::size_t count, TraceChunk &out, unsigned workers) const {
    out.power.resize(count * n_samples_);
    out.em.resize(options_.with_em ? count * n_samples_ : 0);
    out.pt.resize(count);
    out.ct.resize(count);
    constexpr std::size_t kBlock = 256;
    parallel_for((count + kBlock - 1) / kBlock, workers, [&](std::size_t b) {
        const std::size_t end = std::min(count, (b + 1) * kBlock);
        for (std::size_t i = b * kBlock; i < end; ++i)
            generate_one(begin + i, out.power.data() + i * n_samples_,
                         options_.with_em ? out.em.data() + i * n_samples_ : nullptr, out.pt[i], out.ct[i]);
    });
}

Capture capture_traces(const ExperimentConfig &cfg, const CaptureOptions &options, std::size_t n_traces,
                       unsigned workers) {
    TraceSource source(cfg, options);
    Capture cap;
    cap.op = source.operating_point();
    cap.power = sca::TraceSet(source.n_samples(), source.sample_rate());
    cap.em = sca::TraceSet(source.n_samples(), source.sample_rate());
    cap.power.reserve(n_traces);
    if (options.with_em)
        cap.em.reserve(n_traces);
    TraceChunk chunk;
    const std::size_t step = 4096;
    for (std::size_t b = 0; b < n_traces; b += step) {
        const std::size_t m = std::min(step, n_traces - b);
        source.generate(b, m, chunk, workers);
        cap.power.samples.insert(cap.power.samples.end(), chunk.power.begin(), chunk.power.end());
        cap.power.plaintexts.insert(cap.power.plaintexts.end(), chunk.pt.begin(), chunk.pt.end());
        cap.power.ciphertexts.insert(cap.power.ciphertexts.end(), chunk.ct.begin(), chunk.ct.end());
        if (options.with_em) {
            cap.em.samples.insert(cap.em.samples.end(), chunk.em.begin(), chunk.em.end());
            cap.em.plaintexts.insert(cap.em.plaintexts.end(), chunk.pt.begin(), chunk.pt.end());
            cap.em.ciphertexts.insert(cap.em.ciphertexts.end(), chunk.ct.begin(), chunk.ct.end());
        }
    }
    return cap;
}

AttenuationRun measure_attenuation(const ExperimentConfig &cfg, CaptureMode mode, std::size_t n_frames,
                                   std::uint64_t seed, std::size_t warmup_frames) {
    AttenuationRun run;
    run.op = resolve_operating_point(cfg, mode);
    const aes::Aes256 cipher(experiment_key(cfg));
    const std::size_t frame = static_cast<std::size_t>(leakage::kCyclesPerFrame) * cfg.leakage.samples_per_round;
    leakage::CurrentWaveform crypto;
    for (std::size_t f = 0; f < warmup_frames + n_frames; ++f) {
        auto pt_rng = make_rng(seed, Stream::plaintext, f);
        auto noise = make_rng(seed, Stream::algorithmic_noise, f);
        const auto w = leakage::synthesize_crypto_current(cipher.trace(random_block(pt_rng)), cfg.leakage,
                                                          cfg.device.aes_clock_hz, noise);
        crypto.dt = w.dt;
        crypto.samples.insert(crypto.samples.end(), w.samples.begin(), w.samples.end());
    }
    leakage::CurrentWaveform supply = crypto;
    if (mode != CaptureMode::unprotected) {
        auto state = pdn::initial_state(run.op.device, run.op.v_aes, run.op.n_on);
        state.v_dd = run.op.vdd;
        const auto slice = pdn::SliceModel::at(run.op.device, run.op.vdd);
        for (std::size_t s = 0; s < crypto.size(); ++s)
            supply.samples[s] = pdn::step_pdn(state, run.op.device, cfg.smc, slice, crypto.samples[s], crypto.dt);
    }
    const auto skip = static_cast<std::ptrdiff_t>(warmup_frames * frame);
    run.crypto.dt = crypto.dt;
    run.crypto.samples.assign(crypto.samples.begin() + skip, crypto.samples.end());
    run.supply.dt = supply.dt;
    run.supply.samples.assign(supply.samples.begin() + skip, supply.samples.end());
    run.ratio = pdn::attenuation_ratio(run.supply, run.crypto);
    return run;
}

DetectionRun run_detection(const ExperimentConfig &cfg, double vdd_drop, double ramp, std::uint64_t seed) {
    DetectionRun run;
    pdn::DeviceConfig device = cfg.device;
    device.topology = pdn::Topology::cascoded;
    const double busy = busy_load_current(cfg.leakage);
    const double idle = cfg.leakage.baseline_current;
    const int spr = cfg.leakage.samples_per_round;
    const double dt = pdn::default_time_step(device, spr);

    auto settled = settle_nominal(cfg, device, busy, dt);
    pdn::PdnState state = settled.state;
    state.time = 0.0;
    state.ro_phase = 0.0;

    const pdn::VlbInjection attack{cfg.attack.onset, device.vdd, vdd_drop, ramp};
    run.onset = attack.start_time;
    run.ramp_end = attack.end_time();

    detector::DetectorState det;
    auto jitter = make_rng(seed, Stream::detector_jitter);
    const long steps_per_det = std::lround(1.0 / (cfg.detector.detector_clock_hz * dt));
    const long steps_per_smc = std::lround(1.0 / (cfg.smc.smc_clock_hz * dt));
    const long total_steps = std::lround(cfg.attack.duration / dt);

    bool in_flight = false;
    int cycles_done = 0;
    double min_v = state.v_aes;
    double sum_vdd = 0.0;
    double sum_vaes = 0.0;
    auto slice = pdn::SliceModel::at(device, state.v_dd);

    for (long k = 0; k < total_steps; ++k) {
        if (k % spr == 0) {
            if (in_flight && ++cycles_done == aes::kRounds) {
                in_flight = false;
                if (state.time >= run.onset && min_v >= device.v_aes_min)
                    ++run.encryptions_before_halt;
            }
            if (!in_flight && detector::halt_on_detect(det.attack_flag)) {
                in_flight = true;
                cycles_done = 0;
                min_v = state.v_aes;
                ++run.encryptions_started;
            }
        }
        attack.apply(state);
        if (state.v_dd != slice.vdd)
            slice = pdn::SliceModel::at(device, state.v_dd);
        pdn::step_pdn(state, device, cfg.smc, slice, in_flight ? busy : idle, dt);
        min_v = std::min(min_v, state.v_aes);
        sum_vdd += state.v_dd;
        sum_vaes += state.v_aes;
        if ((k + 1) % steps_per_smc == 0)
            pdn::smc_step(state, device, cfg.smc);
        if ((k + 1) % steps_per_det == 0) {
            const double avg_vdd = sum_vdd / static_cast<double>(steps_per_det);
            const double avg_vaes = sum_vaes / static_cast<double>(steps_per_det);
            sum_vdd = sum_vaes = 0.0;
            const bool was_flagged = det.attack_flag;
            detector::detector_step(det, cfg.detector, avg_vdd, avg_vaes, &jitter);
            if (det.window_closed) {
                DetectorWindow w;
                w.time = static_cast<double>(det.cycles_elapsed) / cfg.detector.detector_clock_hz;
                w.count_vdd = det.last_count_vdd;
                w.count_vaes = det.last_count_vaes;
                w.flagged = detector::counts_exceed(w.count_vdd, w.count_vaes, cfg.detector.diff_threshold);
                w.vdd = avg_vdd;
                w.v_aes = avg_vaes;
                w.n_on = state.n_on;
                run.windows.push_back(w);
            }
            if (!was_flagged && det.attack_flag) {
                run.detected = true;
                run.detection_time = det.detection_time;
                run.latency = *det.detection_time - run.onset;
            }
        }
    }
    run.budget_fraction = static_cast<double>(run.encryptions_before_halt) / kReferenceAttackBudget;
    return run;
}

long count_false_alarms(const ExperimentConfig &cfg, long n_cycles, std::uint64_t seed) {
    pdn::DeviceConfig device = cfg.device;
    device.topology = pdn::Topology::cascoded;
    const double busy = busy_load_current(cfg.leakage);
    const double dt = pdn::default_time_step(device, cfg.leakage.samples_per_round);
    const auto settled = settle_nominal(cfg, device, busy, dt);
    const double v_aes = pdn::equilibrium_voltage(device, device.vdd, settled.state.n_on, busy);

    detector::DetectorState det;
    auto jitter = make_rng(seed, Stream::detector_jitter);
    long alarms = 0;
    for (long c = 0; c < n_cycles; ++c) {
        detector::detector_step(det, cfg.detector, device.vdd, v_aes, &jitter);
        if (det.window_closed &&
            detector::counts_exceed(det.last_count_vdd, det.last_count_vaes, cfg.detector.diff_threshold))
            ++alarms;
    }
    return alarms;
}

long simulate_required_slices(const pdn::DeviceConfig &device, double vdd_after, double i_crypto, double dt) {
    const pdn::SmcConfig smc;
    const auto slice = pdn::SliceModel::at(device, vdd_after);
    for (int n = 1; n <= device.n_max; ++n) {
        auto state = pdn::initial_state(device, device.v_aes_nominal, n);
        state.v_dd = vdd_after;
        state.v_aes = std::min(state.v_aes, vdd_after);
        for (long block = 0; block < 4000; ++block) {
            const double before = state.v_aes;
            for (int s = 0; s < 256; ++s)
                pdn::step_pdn(state, device, smc, slice, i_crypto, dt);
            if (std::abs(state.v_aes - before) < 1e-13)
                break;
        }
        if (state.v_aes >= device.v_aes_min && slice.region(state.v_aes) == pdn::Region::linear)
            return n;
    }
    return -1;
}

} // namespace attenlab
