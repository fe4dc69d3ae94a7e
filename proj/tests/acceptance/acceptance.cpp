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

// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Thresholds are checked as stated; nothing is relaxed.

#include "attenlab/aes.h"
#include "attenlab/config.h"
#include "attenlab/detector.h"
#include "attenlab/experiment.h"
#include "attenlab/fft.h"
#include "attenlab/pdn.h"
#include "attenlab/sca.h"
#include "oracles.h"

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>

using namespace attenlab;
namespace fs = std::filesystem;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char *name;
    double time_limit_s; // 0: no stated bound
    std::function<Verdict()> check;
};

ExperimentConfig default_config() {
    ExperimentConfig cfg;
    cfg.seed = 1;
    cfg.leakage.rng_seed = 1;
    return cfg;
}

std::string fmt(double v, int precision = 4) {
    std::ostringstream s;
    s.precision(precision);
    s << v;
    return s.str();
}

std::string mtd_str(const std::optional<std::size_t> &m) { return m ? std::to_string(*m) : "not reached"; }

constexpr std::size_t kNoMtd = std::numeric_limits<std::size_t>::max();
std::size_t mtd_value(const std::optional<std::size_t> &m) { return m.value_or(kNoMtd); }

// Generates traces in chunks and streams the final-round window into CPA;
// nothing is held beyond one chunk.
struct StreamedAttack {
    sca::AttackResult power;
    std::optional<sca::AttackResult> em;
};

StreamedAttack stream_cpa(const ExperimentConfig &cfg, const OperatingPoint &op, CaptureMode mode,
                          std::uint64_t seed, std::size_t n, bool with_em) {
    CaptureOptions opt;
    opt.mode = mode;
    opt.seed = seed;
    opt.with_em = with_em;
    TraceSource source(cfg, opt, op);
    const int byte = cfg.attack.target_byte;
    sca::CpaOptions co;
    co.target_byte = byte;
    co.correct_key = source.correct_key_byte(byte);
    const auto [wb, we] = sca::final_round_window(source.n_samples());
    const std::size_t width = we - wb;
    sca::StreamingCpa power(co, width);
    std::optional<sca::StreamingCpa> em;
    if (with_em)
        em.emplace(co, width);
    TraceChunk chunk;
    std::vector<double> rows;
    const std::size_t step = 16384;
    for (std::size_t b = 0; b < n; b += step) {
        const std::size_t m = std::min(step, n - b);
        source.generate(b, m, chunk);
        auto feed = [&](const std::vector<float> &src, sca::StreamingCpa &cpa) {
            rows.resize(m * width);
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t s = 0; s < width; ++s)
                    rows[i * width + s] = src[i * source.n_samples() + wb + s];
            cpa.consume(rows.data(), chunk.ct.data(), m);
        };
        feed(chunk.power, power);
        if (em)
            feed(chunk.em, *em);
    }
    StreamedAttack out{power.finish(), std::nullopt};
    if (em)
        out.em = em->finish();
    return out;
}

sca::TvlaResult stream_tvla(const ExperimentConfig &cfg, const OperatingPoint &op, CaptureMode mode,
                            std::uint64_t seed, std::size_t per_class) {
    CaptureOptions fixed_opt;
    fixed_opt.mode = mode;
    fixed_opt.seed = seed;
    fixed_opt.fixed_plaintext = true;
    fixed_opt.with_em = false;
    CaptureOptions random_opt = fixed_opt;
    random_opt.fixed_plaintext = false;
    random_opt.seed = seed + 1000;
    TraceSource fixed(cfg, fixed_opt, op), random(cfg, random_opt, op);
    sca::StreamingTvla tvla(fixed.n_samples());
    TraceChunk a, b;
    const std::size_t step = 16384;
    for (std::size_t s = 0; s < per_class; s += step) {
        const std::size_t m = std::min(step, per_class - s);
        fixed.generate(s, m, a);
        random.generate(s, m, b);
        for (std::size_t i = 0; i < m; ++i) {
            tvla.add_fixed({a.power.data() + i * fixed.n_samples(), fixed.n_samples()});
            tvla.add_random({b.power.data() + i * fixed.n_samples(), fixed.n_samples()});
        }
    }
    return tvla.finish();
}

// ------------------------------------------------------------------ 1
Verdict aes_correctness() {
    aes::Key256 key{};
    aes::Block pt{};
    for (int i = 0; i < 32; ++i)
        key[i] = static_cast<std::uint8_t>(i);
    for (int i = 0; i < 16; ++i)
        pt[i] = static_cast<std::uint8_t>(0x11 * i);
    const aes::Block expected{0x8e, 0xa2, 0xb7, 0xca, 0x51, 0x67, 0x45, 0xbf,
                              0xea, 0xfc, 0x49, 0x90, 0x4b, 0x49, 0x60, 0x89};
    const bool vector_ok = aes::Aes256(key).encrypt(pt) == expected;
    std::mt19937_64 rng(2024);
    int bad = 0;
    for (int n = 0; n < 10000; ++n) {
        for (auto &b : key)
            b = static_cast<std::uint8_t>(rng());
        for (auto &b : pt)
            b = static_cast<std::uint8_t>(rng());
        if (oracle::decrypt(key, aes::Aes256(key).encrypt(pt)) != pt)
            ++bad;
    }
    return {vector_ok && bad == 0,
            std::string("known-answer vector ") + (vector_ok ? "ok" : "WRONG") + ", round-trip failures " +
                std::to_string(bad) + "/10000"};
}

// ------------------------------------------------------------------ 2
Verdict ladder_oracle() {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> count(0, 16);
    std::uniform_real_distribution<double> ron(1e3, 50e3), ratio(1.5, 100.0), vdd(0.5, 1.5);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        pdn::NandLadderConfig c{count(rng), count(rng), count(rng), 0, 0, vdd(rng)};
        c.r_on = ron(rng);
        c.r_off = c.r_on * ratio(rng);
        const double want = oracle::ladder_bias(c.p, c.q, c.r, c.r_on, c.r_off, c.vdd);
        worst = std::max(worst, std::abs(pdn::nand_bias_voltage(c) - want) / want);
    }
    // Calibrated sweep over every legal knob setting at 1.2 V.
    const pdn::DeviceConfig dev;
    double lo = 1e9, hi = -1e9;
    for (int p = 0; p <= 16; ++p)
        for (int q = 0; q <= 16; ++q)
            for (int r = 0; r <= 16; ++r) {
                const double v = pdn::nand_bias_voltage({p, q, r, dev.r_on, dev.r_off, 1.2});
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
    const bool oracle_ok = worst < 1e-10;
    const bool range_ok = std::abs(lo - 0.110) <= 0.015 && std::abs(hi - 1.15) <= 0.015;
    return {oracle_ok && range_ok, "max relative error " + fmt(worst, 3) + " over 1000 configs (" +
                                       (oracle_ok ? "ok" : "FAIL") + "); sweep range " + fmt(lo * 1e3) + " mV to " +
                                       fmt(hi, 5) + " V, endpoint errors " + fmt((lo - 0.110) * 1e3, 3) + " mV / " +
                                       fmt((hi - 1.15) * 1e3, 3) + " mV (" + (range_ok ? "ok" : "FAIL") + ")"};
}

// ------------------------------------------------------------------ 3
Verdict mos_continuity() {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> vt(0.1, 0.5), ov(0.01, 0.8), k(1e-5, 1e-3);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double v_t = vt(rng), kk = k(rng);
        const double v_sg = v_t + ov(rng);
        const double v_ov = v_sg - v_t;
        const double i_lin = kk * (v_ov - 0.5 * v_ov) * v_ov; // linear-region law at the boundary
        const double i_sat = pdn::pmos_slice_current(v_sg, v_ov, kk, v_t);
        const double i_below = pdn::pmos_slice_current(v_sg, std::nextafter(v_ov, 0.0), kk, v_t);
        worst = std::max({worst, std::abs(i_lin - i_sat), std::abs(i_below - i_sat)});
    }
    return {worst < 1e-12, "max |I_lin - I_sat| = " + fmt(worst, 3) + " A over 1000 points"};
}

// ------------------------------------------------------------------ 4
Verdict attenuation_ordering() {
    const auto cfg = default_config();
    const double cas = measure_attenuation(cfg, CaptureMode::protected_mode, 256, 1).ratio;
    const double deg = measure_attenuation(cfg, CaptureMode::degenerated, 256, 1).ratio;
    const double vlb = measure_attenuation(cfg, CaptureMode::vlb, 256, 1).ratio;
    const bool ok = cas > 100.0 && cas / deg > 5.0 && vlb < cas / 10.0;
    return {ok, "cascoded " + fmt(cas) + "x, degenerated " + fmt(deg) + "x (ratio " + fmt(cas / deg) +
                    "), VLB linear " + fmt(vlb) + "x"};
}

// Shared between criteria 5, 6 and 7.
struct Shared {
    std::optional<std::size_t> unprotected_mtd;
    std::optional<std::size_t> unprotected_tvla;
    std::vector<sca::AttackResult> protected_runs;
} shared;

// ------------------------------------------------------------------ 5
Verdict attack_pipeline() {
    const auto cfg = default_config();
    const auto op = resolve_operating_point(cfg, CaptureMode::unprotected);
    std::vector<sca::AttackResult> cpa, cema;
    int recovered = 0;
    for (int r = 0; r < 5; ++r) {
        auto res = stream_cpa(cfg, op, CaptureMode::unprotected, 101 + r, 10000, true);
        recovered += res.power.key_rank == 0 ? 1 : 0;
        cpa.push_back(std::move(res.power));
        cema.push_back(std::move(*res.em));
    }
    const auto m_cpa = sca::estimate_mtd(cpa, 10000).mtd;
    const auto m_cema = sca::estimate_mtd(cema, 10000).mtd;
    shared.unprotected_mtd = m_cpa;
    const bool ok = recovered >= 4 && mtd_value(m_cema) >= mtd_value(m_cpa);
    return {ok, "rank 0 in " + std::to_string(recovered) + "/5 repeats at 10K traces; MTD CPA " + mtd_str(m_cpa) +
                    ", CEMA " + mtd_str(m_cema)};
}

// ------------------------------------------------------------------ 6
Verdict protection_property() {
    const auto cfg = default_config();
    const auto prot_op = resolve_operating_point(cfg, CaptureMode::protected_mode);
    for (int r = 0; r < 3; ++r)
        shared.protected_runs.push_back(
            stream_cpa(cfg, prot_op, CaptureMode::protected_mode, 201 + r, 1000000, false).power);
    const auto prot_mtd = sca::estimate_mtd(shared.protected_runs, 1000000);
    const auto prot_tvla = stream_tvla(cfg, prot_op, CaptureMode::protected_mode, 301, 100000);
    const auto open_op = resolve_operating_point(cfg, CaptureMode::unprotected);
    const auto open_tvla = stream_tvla(cfg, open_op, CaptureMode::unprotected, 401, 5000);
    shared.unprotected_tvla = open_tvla.first_leaky_trace_count;
    const bool ok = !prot_mtd.mtd && prot_tvla.max_abs_t < sca::kTvlaThreshold && open_tvla.first_leaky_trace_count &&
                    *open_tvla.first_leaky_trace_count <= 1000;
    std::string ranks;
    for (int k : prot_mtd.final_ranks)
        ranks += (ranks.empty() ? "" : ",") + std::to_string(k);
    return {ok, "protected CPA at 1e6 traces x3: MTD " + mtd_str(prot_mtd.mtd) + " (final ranks " + ranks +
                    "); protected TVLA max|t| " + fmt(prot_tvla.max_abs_t) +
                    " at 1e5 per class; unprotected TVLA crosses 4.5 at " +
                    mtd_str(open_tvla.first_leaky_trace_count) + " traces"};
}

// ------------------------------------------------------------------ 7
Verdict vlb_efficacy() {
    const auto cfg = default_config();
    if (!shared.unprotected_mtd || !shared.unprotected_tvla || shared.protected_runs.size() < 3)
        return {false, "needs the unprotected MTD, unprotected TVLA count and protected runs from criteria 5 and 6"};
    const std::size_t budget = 100 * *shared.unprotected_mtd;
    const auto op = resolve_operating_point(cfg, CaptureMode::vlb);
    const std::size_t per_run = std::min<std::size_t>(budget, 1000000);
    std::vector<sca::AttackResult> runs;
    for (int r = 0; r < 5; ++r)
        runs.push_back(stream_cpa(cfg, op, CaptureMode::vlb, 501 + r, per_run, false).power);
    const auto vlb_mtd = sca::estimate_mtd(runs, budget).mtd;
    const auto prot_mtd = sca::estimate_mtd(shared.protected_runs, budget).mtd;
    const std::size_t tvla_limit = 10 * *shared.unprotected_tvla;
    const auto vlb_tvla = stream_tvla(cfg, op, CaptureMode::vlb, 601, std::max<std::size_t>(tvla_limit, 1000));
    const bool ok = vlb_mtd && *vlb_mtd <= budget && !prot_mtd && vlb_tvla.first_leaky_trace_count &&
                    *vlb_tvla.first_leaky_trace_count <= tvla_limit;
    return {ok, "VDD' = " + fmt(op.vdd) + " V, " + std::to_string(op.n_on) + " slices (" +
                    pdn::to_string(op.region) + "); VLB MTD " + mtd_str(vlb_mtd) + " vs budget " +
                    std::to_string(budget) + " (100x unprotected " + std::to_string(*shared.unprotected_mtd) +
                    "); protected at budget: " + mtd_str(prot_mtd) + "; VLB TVLA crossing " +
                    mtd_str(vlb_tvla.first_leaky_trace_count) + " vs limit " + std::to_string(tvla_limit)};
}

// ------------------------------------------------------------------ 8
Verdict feasibility_oracle() {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> k(1.5e-4, 4e-4), vt(0.18, 0.28), drop(0.2, 0.35), vmin(0.74, 0.79),
        load(250e-6, 450e-6);
    std::uniform_int_distribution<int> nmax(150, 700);
    const pdn::SmcConfig smc;
    int compared = 0, matched = 0, infeasible = 0, browned = 0, feasible = 0, held = 0;
    std::string mismatch;
    while (compared < 24) {
        pdn::DeviceConfig dev;
        dev.k_device = k(rng);
        dev.v_t = vt(rng);
        dev.v_aes_min = vmin(rng);
        dev.n_max = nmax(rng);
        const double after = dev.vdd - drop(rng);
        const double i = load(rng);
        pdn::Feasibility f;
        try {
            f = pdn::vlb_feasible(dev, after, i);
        } catch (const std::invalid_argument &) {
            continue; // premise of the closed form (linear bank at v_aes_min) does not hold
        }
        // The nominal point must be reachable to start the closed-loop run.
        int n0 = 0;
        for (int n = 1; n <= dev.n_max && !n0; ++n)
            if (pdn::equilibrium_voltage(dev, dev.vdd, n, i) >= dev.v_aes_nominal)
                n0 = n;
        if (!n0)
            continue;
        ++compared;
        pdn::DeviceConfig wide = dev;
        wide.n_max = 4096;
        const double dt = pdn::default_time_step(dev, 16);
        const long brute = simulate_required_slices(wide, after, i, dt);
        if (brute == f.n_required)
            ++matched;
        else if (mismatch.empty())
            mismatch = "; first mismatch closed " + std::to_string(f.n_required) + " vs sweep " + std::to_string(brute);
        auto state = pdn::initial_state(dev, pdn::equilibrium_voltage(dev, dev.vdd, n0, i), n0);
        const auto inj = pdn::inject_vlb(state, dev.vdd - after, 20e-6);
        const auto settled = pdn::settle(state, dev, smc, i, &inj, 0.2, dt);
        if (f.feasible) {
            ++feasible;
            held += settled.brown_out ? 0 : 1;
        } else {
            ++infeasible;
            browned += settled.brown_out ? 1 : 0;
        }
    }
    const bool ok = matched == compared && compared >= 20 && infeasible > 0 && browned == infeasible &&
                    held == feasible;
    return {ok, std::to_string(matched) + "/" + std::to_string(compared) + " closed-form counts match the sweep" +
                    mismatch + "; infeasible configs browning out " + std::to_string(browned) + "/" +
                    std::to_string(infeasible) + ", feasible configs holding v_aes_min " + std::to_string(held) +
                    "/" + std::to_string(feasible)};
}

// ------------------------------------------------------------------ 9
Verdict detector_criterion() {
    const auto cfg = default_config();
    const auto run = run_detection(cfg, cfg.attack.vdd_drop, cfg.attack.vlb_ramp, cfg.seed);
    const long false_alarms = count_false_alarms(cfg, 1000000, 9);

    detector::DetectorConfig unit;
    unit.ro_gain = 1e7;
    unit.vdd_divider_ratio = 1.0;
    unit.divider_mismatch = 0.0;
    unit.jitter_sigma = 0.0;
    detector::DetectorState s;
    for (int i = 0; i < 5; ++i)
        detector::detector_step(s, unit, 4.0, 1.6);
    const bool example = s.last_count_vdd == 20 && s.last_count_vaes == 8 && s.attack_flag;

    const bool ok = run.detected && *run.latency <= 0.8e-3 && false_alarms == 0 && example &&
                    run.budget_fraction <= 0.011;
    return {ok, std::string("detected ") + (run.detected ? "yes" : "no") + ", " +
                    (run.latency ? fmt(*run.latency * 1e3) + " ms after onset" : "no latency") + "; " +
                    std::to_string(run.encryptions_before_halt) + " encryptions before halt (" +
                    fmt(100.0 * run.budget_fraction, 3) + "% of 105K); false alarms over 1e6 cycles: " +
                    std::to_string(false_alarms) + "; worked example counts " + std::to_string(s.last_count_vdd) +
                    " vs " + std::to_string(s.last_count_vaes) + (example ? " flagged" : " NOT flagged")};
}

// ----------------------------------------------------------------- 10
Verdict statistics_oracles() {
    // Streaming CPA against two-pass Pearson on simulated traces.
    auto cfg = default_config();
    CaptureOptions opt;
    opt.seed = 11;
    opt.with_em = false;
    const auto cap = capture_traces(cfg, opt, 3000);
    sca::CpaOptions co;
    co.chunk_size = 333;
    const auto res = sca::cpa_attack(cap.power, co);
    const auto [wb, we] = sca::final_round_window(cap.power.n_samples);
    double cpa_err = 0.0;
    for (int g = 0; g < 256; ++g) {
        std::vector<double> h(cap.power.size());
        for (std::size_t i = 0; i < h.size(); ++i)
            h[i] = aes::last_round_hd_hypothesis(cap.power.ciphertexts[i], 0, static_cast<std::uint8_t>(g));
        for (std::size_t s = wb; s < we; ++s) {
            std::vector<double> x(h.size());
            for (std::size_t i = 0; i < h.size(); ++i)
                x[i] = cap.power.trace(i)[s];
            const double want = oracle::pearson(x, h);
            const double got = res.correlation(g, s - wb);
            cpa_err = std::max(cpa_err, std::abs(got - want) / std::max(std::abs(want), 1e-3));
        }
    }

    // TVLA symmetry on two independent captures.
    opt.seed = 12;
    const auto other = capture_traces(cfg, opt, 1000);
    const auto first = cap.power.slice(0, 1000);
    const auto ab = sca::tvla(first, other.power);
    const auto ba = sca::tvla(other.power, first);
    const auto aa = sca::tvla(first, first);
    double anti = 0.0, zero = 0.0;
    for (std::size_t s = 0; s < ab.t_values.size(); ++s) {
        anti = std::max(anti, std::abs(ab.t_values[s] + ba.t_values[s]));
        zero = std::max(zero, std::abs(aa.t_values[s]));
    }

    // DFT round trip.
    std::mt19937_64 rng(10);
    std::normal_distribution<double> g(0.0, 1.0);
    double dft_err = 0.0;
    for (std::size_t n : {2u, 64u, 256u, 4096u, 65536u}) {
        std::vector<std::complex<double>> x(n);
        for (auto &v : x)
            v = {g(rng), g(rng)};
        const auto y = fft::inverse(fft::forward(x));
        double num = 0, den = 0;
        for (std::size_t i = 0; i < n; ++i) {
            num += std::norm(y[i] - x[i]);
            den += std::norm(x[i]);
        }
        dft_err = std::max(dft_err, std::sqrt(num / den));
    }
    const bool ok = cpa_err < 1e-9 && anti < 1e-12 && zero < 1e-12 && dft_err < 1e-9;
    return {ok, "CPA vs two-pass max relative error " + fmt(cpa_err, 3) + "; TVLA |t_ab + t_ba| " + fmt(anti, 3) +
                    ", |t_aa| " + fmt(zero, 3) + "; DFT round-trip " + fmt(dft_err, 3)};
}

// ----------------------------------------------------------------- 11
int run_cli(const std::string &args) {
    const std::string cmd = std::string(ATTENLAB_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

Verdict reproducibility() {
    const fs::path root = fs::temp_directory_path() / "attenlab_acceptance_repro";
    fs::remove_all(root);
    const std::string cfg = std::string(ATTENLAB_RECIPES_DIR) + "/default.ini";
    auto sub = [&](int pass) { return (root / std::to_string(pass)).string(); };
    int failures = 0;
    for (int pass = 0; pass < 2; ++pass) {
        const std::string d = sub(pass);
        failures += run_cli("simulate --config " + cfg + " --mode unprotected --n-traces 3000 --out " + d + "/u") != 0;
        failures += run_cli("simulate --config " + cfg + " --mode vlb --n-traces 500 --out " + d + "/v") != 0;
        failures += run_cli("simulate --config " + cfg + " --fixed-plaintext --no-em --n-traces 500 --out " + d + "/f") != 0;
        failures += run_cli("attack --traces " + d + "/u/power.rstl --config " + cfg + " --repeats 3 --out " + d + "/a") != 0;
        failures += run_cli("attack --traces " + d + "/u/power.rstl --method spectral --config " + cfg + " --out " + d + "/s") != 0;
        failures += run_cli("tvla --fixed " + d + "/f/power.rstl --random " + d + "/u/power.rstl --out " + d + "/t") != 0;
        failures += run_cli("detect --config " + cfg + " --thresholds 5,10 --runs 2 --out " + d + "/d") != 0;
        failures += run_cli("attenuation --config " + cfg + " --frames 32 --out " + d + "/n") != 0;
    }
    std::size_t files = 0, differing = 0;
    for (const auto &e : fs::recursive_directory_iterator(sub(0))) {
        if (!e.is_regular_file())
            continue;
        ++files;
        const fs::path twin = fs::path(sub(1)) / fs::relative(e.path(), sub(0));
        if (!fs::exists(twin) || slurp(e.path()) != slurp(twin))
            ++differing;
    }
    fs::remove_all(root);
    const bool ok = failures == 0 && files > 0 && differing == 0;
    return {ok, std::to_string(files) + " output files from 5 subcommands compared, " + std::to_string(differing) +
                    " differ, " + std::to_string(failures) + " command failures"};
}

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "AES correctness", 5, aes_correctness},
        {2, "NAND ladder oracle and calibrated range", 0, ladder_oracle},
        {3, "MOS model continuity", 0, mos_continuity},
        {4, "attenuation ordering", 60, attenuation_ordering},
        {5, "attack pipeline", 300, attack_pipeline},
        {6, "protection property", 1800, protection_property},
        {7, "VLB efficacy", 0, vlb_efficacy},
        {8, "feasibility oracle and brown-out", 0, feasibility_oracle},
        {9, "attack detector", 0, detector_criterion},
        {10, "statistics oracles", 0, statistics_oracles},
        {11, "reproducibility", 0, reproducibility},
    };
    int failed = 0;
    for (const auto &c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.check();
        } catch (const std::exception &e) {
            v = {false, std::string("threw: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.time_limit_s > 0 && secs > c.time_limit_s) {
            v.pass = false;
            v.detail += "; over the " + fmt(c.time_limit_s) + " s budget";
        }
        failed += v.pass ? 0 : 1;
        std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << v.detail
                  << " [" << fmt(secs, 3) << " s]" << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
