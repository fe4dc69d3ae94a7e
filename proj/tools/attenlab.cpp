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

// attenlab: command-line front end for the simulator and the analyses.

#include "attenlab/config.h"
#include "attenlab/experiment.h"
#include "attenlab/sca.h"
#include "attenlab/trace_io.h"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

using namespace attenlab;
namespace fs = std::filesystem;

namespace {

enum ExitCode { kOk = 0, kFailure = 1, kConfigError = 2, kDataError = 3, kInfeasible = 4 };

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

ExperimentConfig load_with_overrides(const std::string &path, const std::vector<std::string> &overrides) {
    ExperimentConfig cfg = load_config(path);
    for (const auto &o : overrides)
        apply_override(cfg, o);
    try {
        cfg.validate();
    } catch (const std::invalid_argument &e) {
        throw ConfigError(path, 0, e.what());
    }
    return cfg;
}

void add_config(io::RunReport &report, const ExperimentConfig &cfg) {
    for (const auto &[k, v] : flatten(cfg))
        report.set("config." + k, v);
}

std::string join(const fs::path &dir, const char *name) { return (dir / name).string(); }

std::string mtd_text(const std::optional<std::size_t> &mtd) {
    return mtd ? std::to_string(*mtd) : std::string("not reached");
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string config;
    std::vector<std::string> overrides;
    std::string mode = "unprotected";
    std::size_t n_traces = 1000;
    std::string out = ".";
    std::optional<std::uint64_t> seed;
    std::optional<int> averaging;
    bool fixed_plaintext = false;
    bool no_em = false;
};

int cmd_simulate(const SimulateArgs &a) {
    const ExperimentConfig cfg = load_with_overrides(a.config, a.overrides);
    CaptureOptions opt;
    opt.mode = parse_mode(a.mode);
    opt.seed = a.seed.value_or(cfg.seed);
    opt.averaging = a.averaging.value_or(cfg.attack.averaging);
    if (opt.averaging < 1)
        throw UsageError("--averaging must be at least 1");
    opt.fixed_plaintext = a.fixed_plaintext;
    opt.with_em = !a.no_em;

    io::RunReport report;
    report.set("command", "simulate");
    report.set("mode", to_string(opt.mode));
    report.set("trace_seed", std::to_string(opt.seed));
    report.set("n_traces", a.n_traces);
    report.set("averaging", opt.averaging);
    report.set("fixed_plaintext", opt.fixed_plaintext);
    add_config(report, cfg);

    OperatingPoint op;
    try {
        op = resolve_operating_point(cfg, opt.mode);
    } catch (const pdn::VlbInfeasible &e) {
        const auto &f = e.detail();
        std::cerr << e.what() << "\n";
        std::cerr << "  n_required = " << f.n_required << ", n_max = " << f.n_max
                  << ", per-slice linear current = " << io::format_number(f.per_slice_current) << " A"
                  << ", v_gs = " << io::format_number(f.v_gs) << " V, v_ds = " << io::format_number(f.v_ds)
                  << " V\n";
        return kInfeasible;
    }
    TraceSource source(cfg, opt, op);
    report.set("key", aes::to_hex(experiment_key(cfg).data(), 32));
    for (int b = 0; b < 16; ++b)
        report.set("last_round_key." + std::to_string(b), static_cast<int>(source.correct_key_byte(b)));
    report.set("op.vdd_V", op.vdd);
    report.set("op.n_on", op.n_on);
    report.set("op.v_aes_V", op.v_aes);
    report.set("op.region", op.mode == CaptureMode::unprotected ? "none" : pdn::to_string(op.region));
    report.set("op.mean_load_A", op.mean_load);
    if (op.feasibility) {
        report.set("vlb.n_required", static_cast<long long>(op.feasibility->n_required));
        report.set("vlb.feasible", op.feasibility->feasible);
    }
    report.set("sample_rate_Hz", source.sample_rate());
    report.set("n_samples", source.n_samples());
    report.set("phase.settle_s", op.settle_time);
    report.set("phase.capture_s", static_cast<double>(a.n_traces) * leakage::kCyclesPerFrame / cfg.device.aes_clock_hz);

    fs::create_directories(a.out);
    const fs::path dir(a.out);
    io::TraceWriter power(join(dir, "power.rstl"), static_cast<std::uint32_t>(source.n_samples()), source.sample_rate());
    std::optional<io::TraceWriter> em;
    if (opt.with_em)
        em.emplace(join(dir, "em.rstl"), static_cast<std::uint32_t>(source.n_samples()), source.sample_rate());
    TraceChunk chunk;
    const std::size_t step = 4096;
    for (std::size_t b = 0; b < a.n_traces; b += step) {
        const std::size_t m = std::min(step, a.n_traces - b);
        source.generate(b, m, chunk);
        for (std::size_t i = 0; i < m; ++i) {
            power.append(chunk.pt[i], chunk.ct[i], chunk.power.data() + i * source.n_samples());
            if (em)
                em->append(chunk.pt[i], chunk.ct[i], chunk.em.data() + i * source.n_samples());
        }
    }
    power.close();
    if (em)
        em->close();
    report.set("file.power", "power.rstl");
    if (em)
        report.set("file.em", "em.rstl");
    report.write(join(dir, "report.txt"));
    std::cout << "simulated " << a.n_traces << " " << to_string(opt.mode) << " traces into " << a.out << "\n";
    return kOk;
}

// ------------------------------------------------------------------ attack

struct AttackArgs {
    std::string traces;
    std::string method = "cpa";
    int byte = 0;
    int averaging = 1;
    std::string out = ".";
    std::string key;
    std::string config;
    std::size_t max_traces = 0;
    int repeats = 1;
    std::string window;
    double f_lo = 0.0;
    double f_hi = -1.0;
};

std::optional<std::pair<std::size_t, std::size_t>> parse_window(const std::string &text) {
    if (text.empty())
        return std::nullopt;
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw UsageError("--window expects begin:end");
    try {
        return std::make_pair(static_cast<std::size_t>(std::stoul(text.substr(0, colon))),
                              static_cast<std::size_t>(std::stoul(text.substr(colon + 1))));
    } catch (const std::exception &) {
        throw UsageError("--window expects begin:end");
    }
}

sca::AttackResult attack_range(const AttackArgs &a, const io::TraceFileHeader &header, std::size_t begin,
                               std::size_t count, std::optional<std::uint8_t> correct) {
    io::TraceReader reader(a.traces);
    // Skip to `begin` by reading through; files are sequential.
    for (std::size_t skipped = 0; skipped < begin;) {
        const auto part = reader.read(std::min<std::size_t>(65536, begin - skipped));
        skipped += part.size();
    }
    const std::size_t group = static_cast<std::size_t>(std::max(a.averaging, 1));
    const std::size_t step = group * std::max<std::size_t>(1, 16384 / group);

    if (a.method == "spectral") {
        sca::TraceSet all = reader.read(count);
        if (a.averaging > 1)
            sca::average_repeats(all, a.averaging);
        sca::SpectralOptions so;
        so.target_byte = a.byte;
        so.correct_key = correct;
        so.f_lo = a.f_lo;
        so.f_hi = a.f_hi < 0.0 ? 0.5 * header.sample_rate_hz : a.f_hi;
        return sca::spectral_cpa(all, so);
    }

    sca::CpaOptions co;
    co.target_byte = a.byte;
    co.averaging = a.averaging;
    co.correct_key = correct;
    co.window = parse_window(a.window);
    const auto [wb, we] = co.window.value_or(sca::final_round_window(header.n_samples));
    if (wb >= we || we > header.n_samples)
        throw UsageError("--window outside the trace");
    const std::size_t width = we - wb;
    sca::StreamingCpa cpa(co, width);
    bool applied = a.averaging > 1;
    std::vector<double> rows;
    for (std::size_t done = 0; done < count;) {
        sca::TraceSet part = reader.read(std::min(step, count - done));
        if (part.empty())
            break;
        done += part.size();
        if (a.averaging > 1)
            applied = sca::average_repeats(part, a.averaging) && applied;
        rows.resize(part.size() * width);
        for (std::size_t i = 0; i < part.size(); ++i) {
            auto row = part.trace(i);
            for (std::size_t s = 0; s < width; ++s)
                rows[i * width + s] = row[wb + s];
        }
        cpa.consume(rows.data(), part.ciphertexts.data(), part.size());
    }
    std::vector<double> axis;
    for (std::size_t s = wb; s < we; ++s)
        axis.push_back(static_cast<double>(s));
    auto r = cpa.finish(std::move(axis));
    r.averaging_applied = applied;
    return r;
}

std::optional<std::size_t> single_run_disclosure(const sca::AttackResult &r) {
    std::optional<std::size_t> from;
    for (auto it = r.mtd_curve.rbegin(); it != r.mtd_curve.rend(); ++it) {
        if (it->correct_rank != 0)
            break;
        from = it->traces;
    }
    return from;
}

int cmd_attack(const AttackArgs &a) {
    if (a.byte < 0 || a.byte > 15)
        throw UsageError("--byte must be in 0..15");
    if (a.method != "cpa" && a.method != "cema" && a.method != "spectral")
        throw UsageError("--method must be cpa, cema or spectral");
    if (a.averaging < 1)
        throw UsageError("--averaging must be at least 1");
    if (a.repeats != 1 && a.repeats < 3)
        throw UsageError("--repeats must be 1 or at least 3");

    std::optional<std::uint8_t> correct;
    if (!a.key.empty()) {
        correct = aes::last_round_key_byte(aes::Aes256(aes::parse_key(a.key)), a.byte);
    } else if (!a.config.empty()) {
        correct = aes::last_round_key_byte(aes::Aes256(experiment_key(load_config(a.config))), a.byte);
    }

    io::TraceReader probe(a.traces);
    const auto header = probe.header();
    std::size_t n = header.n_traces;
    if (a.max_traces)
        n = std::min(n, a.max_traces * static_cast<std::size_t>(a.averaging));

    std::vector<sca::AttackResult> runs;
    const std::size_t per = n / static_cast<std::size_t>(a.repeats);
    for (int r = 0; r < a.repeats; ++r)
        runs.push_back(attack_range(a, header, static_cast<std::size_t>(r) * per, per, correct));
    const sca::AttackResult &result = runs.front();

    std::optional<std::size_t> mtd;
    if (correct) {
        if (a.repeats >= 3)
            mtd = sca::estimate_mtd(runs, std::numeric_limits<std::size_t>::max()).mtd;
        else
            mtd = single_run_disclosure(result);
    }

    fs::create_directories(a.out);
    const fs::path dir(a.out);
    {
        std::vector<std::string> header_row{a.method == "spectral" ? "frequency_Hz" : "sample"};
        for (int g = 0; g < 256; ++g)
            header_row.push_back("guess_" + std::to_string(g));
        io::CsvWriter csv(join(dir, "correlations.csv"), header_row);
        for (std::size_t s = 0; s < result.width; ++s) {
            std::vector<double> row{result.axis[s]};
            for (int g = 0; g < 256; ++g)
                row.push_back(result.correlation(g, s));
            csv.row(row);
        }
        csv.close();
    }
    {
        io::CsvWriter corr(join(dir, "correlation_vs_traces.csv"),
                           {"repeat", "traces", "reference_peak", "best_other_peak"});
        io::CsvWriter rank(join(dir, "rank_vs_traces.csv"), {"repeat", "traces", "best_guess", "correct_rank"});
        for (std::size_t r = 0; r < runs.size(); ++r)
            for (const auto &c : runs[r].mtd_curve) {
                corr.row(std::vector<double>{static_cast<double>(r), static_cast<double>(c.traces), c.correct_peak,
                                             c.best_wrong_peak});
                rank.row(std::vector<double>{static_cast<double>(r), static_cast<double>(c.traces),
                                             static_cast<double>(c.best_guess), static_cast<double>(c.correct_rank)});
            }
        corr.close();
        rank.close();
    }

    io::RunReport report;
    report.set("command", "attack");
    report.set("method", a.method);
    report.set("traces_file", fs::path(a.traces).filename().string());
    report.set("target_byte", a.byte);
    report.set("averaging", a.averaging);
    report.set("averaging_applied", result.averaging_applied);
    report.set("repeats", a.repeats);
    report.set("traces_per_repeat", result.n_traces);
    report.set("best_guess", static_cast<int>(result.best_guess));
    report.set("best_peak", result.peak[result.best_guess]);
    if (correct) {
        report.set("correct_key_byte", static_cast<int>(*correct));
        report.set("key_rank", result.key_rank);
        report.set("recovered", result.key_rank == 0);
        report.set("mtd", mtd_text(mtd));
    }
    report.write(join(dir, "summary.txt"));

    std::cout << "byte " << a.byte << ": best guess 0x" << aes::to_hex(&result.best_guess, 1);
    if (correct)
        std::cout << ", rank " << result.key_rank << (result.key_rank == 0 ? " (recovered)" : " (not recovered)")
                  << ", MTD " << mtd_text(mtd);
    std::cout << "\n";
    return kOk;
}

// -------------------------------------------------------------------- tvla

int cmd_tvla(const std::string &fixed_path, const std::string &random_path, const std::string &out) {
    io::TraceReader fixed(fixed_path);
    io::TraceReader random(random_path);
    if (fixed.header().n_samples != random.header().n_samples)
        throw UsageError("fixed and random files have different trace lengths");
    if (fixed.header().n_traces < 2 || random.header().n_traces < 2)
        throw UsageError("TVLA needs at least two traces in each file");
    sca::StreamingTvla tvla(fixed.header().n_samples);
    for (;;) {
        auto f = fixed.read(4096);
        auto r = random.read(4096);
        if (f.empty() && r.empty())
            break;
        for (std::size_t i = 0; i < std::max(f.size(), r.size()); ++i) {
            if (i < f.size())
                tvla.add_fixed(f.trace(i));
            if (i < r.size())
                tvla.add_random(r.trace(i));
        }
    }
    const auto result = tvla.finish();

    fs::create_directories(out);
    const fs::path dir(out);
    io::CsvWriter t(join(dir, "t_vs_sample.csv"), {"sample", "t", "abs_t"});
    for (std::size_t s = 0; s < result.t_values.size(); ++s)
        t.row(std::vector<double>{static_cast<double>(s), result.t_values[s], std::abs(result.t_values[s])});
    t.close();
    io::CsvWriter curve(join(dir, "t_vs_traces.csv"), {"traces", "max_abs_t"});
    for (const auto &[n, m] : result.max_t_curve)
        curve.row(std::vector<double>{static_cast<double>(n), m});
    curve.close();

    io::RunReport report;
    report.set("command", "tvla");
    report.set("fixed_traces", static_cast<std::size_t>(fixed.header().n_traces));
    report.set("random_traces", static_cast<std::size_t>(random.header().n_traces));
    report.set("threshold", sca::kTvlaThreshold);
    report.set("max_abs_t", result.max_abs_t);
    report.set("leaky", result.max_abs_t > sca::kTvlaThreshold);
    report.set("first_leaky_trace_count",
               result.first_leaky_trace_count ? std::to_string(*result.first_leaky_trace_count) : "none");
    report.write(join(dir, "summary.txt"));
    std::cout << "max |t| = " << io::format_number(result.max_abs_t)
              << (result.max_abs_t > sca::kTvlaThreshold ? " (leaky)" : " (no leakage detected)") << "\n";
    return kOk;
}

// ------------------------------------------------------------------ detect

struct DetectArgs {
    std::string config;
    std::vector<std::string> overrides;
    std::optional<double> vdd_drop;
    std::optional<double> ramp;
    std::string out = ".";
    std::optional<std::uint64_t> seed;
    std::vector<int> thresholds;
    int runs = 10;
};

int cmd_detect(const DetectArgs &a) {
    ExperimentConfig cfg = load_with_overrides(a.config, a.overrides);
    const double drop = a.vdd_drop.value_or(cfg.attack.vdd_drop);
    const double ramp = a.ramp.value_or(cfg.attack.vlb_ramp);
    if (drop < 0.0 || drop >= cfg.device.vdd)
        throw UsageError("--vdd-drop must be in [0, vdd)");
    if (ramp < 0.0)
        throw UsageError("--ramp must be non-negative");
    const std::uint64_t seed = a.seed.value_or(cfg.seed);
    const auto run = run_detection(cfg, drop, ramp, seed);

    fs::create_directories(a.out);
    const fs::path dir(a.out);
    io::CsvWriter counters(join(dir, "counters.csv"),
                           {"time_s", "count_vdd", "count_vaes", "difference", "flagged", "vdd_V", "v_aes_V", "n_on"});
    for (const auto &w : run.windows)
        counters.row(std::vector<double>{w.time, static_cast<double>(w.count_vdd), static_cast<double>(w.count_vaes),
                                         static_cast<double>(w.count_vdd - w.count_vaes), w.flagged ? 1.0 : 0.0, w.vdd,
                                         w.v_aes, static_cast<double>(w.n_on)});
    counters.close();

    io::RunReport report;
    report.set("command", "detect");
    report.set("vdd_drop_V", drop);
    report.set("ramp_s", ramp);
    report.set("seed", std::to_string(seed));
    add_config(report, cfg);
    report.set("phase.onset_s", run.onset);
    report.set("phase.ramp_end_s", run.ramp_end);
    report.set("phase.duration_s", cfg.attack.duration);
    report.set("detected", run.detected);
    report.set("detection_time_s", run.detection_time ? io::format_number(*run.detection_time) : "none");
    report.set("latency_s", run.latency ? io::format_number(*run.latency) : "none");
    report.set("encryptions_started", static_cast<long long>(run.encryptions_started));
    report.set("encryptions_before_halt", static_cast<long long>(run.encryptions_before_halt));
    report.set("budget_traces", static_cast<long long>(kReferenceAttackBudget));
    report.set("budget_percent", 100.0 * run.budget_fraction);

    if (!a.thresholds.empty()) {
        io::CsvWriter sweep(join(dir, "detection_probability.csv"), {"threshold", "runs", "detected", "probability"});
        for (int th : a.thresholds) {
            ExperimentConfig c = cfg;
            c.detector.diff_threshold = th;
            int hits = 0;
            for (int r = 0; r < a.runs; ++r)
                hits += run_detection(c, drop, ramp, seed + static_cast<std::uint64_t>(r)).detected ? 1 : 0;
            sweep.row(std::vector<double>{static_cast<double>(th), static_cast<double>(a.runs), static_cast<double>(hits),
                                          static_cast<double>(hits) / a.runs});
        }
        sweep.close();
    }
    report.write(join(dir, "report.txt"));

    if (run.detected)
        std::cout << "attack detected at " << io::format_number(*run.detection_time) << " s ("
                  << io::format_number(*run.latency * 1e3) << " ms after onset); "
                  << run.encryptions_before_halt << " encryptions before halt ("
                  << io::format_number(100.0 * run.budget_fraction) << "% of a " << kReferenceAttackBudget
                  << "-trace attack)\n";
    else
        std::cout << "no attack detected\n";
    return kOk;
}

// ------------------------------------------------------------- attenuation

struct AttenuationArgs {
    std::string config;
    std::vector<std::string> overrides;
    std::vector<std::string> modes{"protected", "degenerated", "vlb"};
    std::size_t frames = 256;
    std::string out = ".";
    std::optional<std::uint64_t> seed;
    bool waveforms = false;
};

int cmd_attenuation(const AttenuationArgs &a) {
    const ExperimentConfig cfg = load_with_overrides(a.config, a.overrides);
    if (a.frames < 1)
        throw UsageError("--frames must be at least 1");
    const std::uint64_t seed = a.seed.value_or(cfg.seed);
    fs::create_directories(a.out);
    const fs::path dir(a.out);
    io::CsvWriter table(join(dir, "attenuation.csv"), {"mode", "ratio", "vdd_V", "n_on", "v_aes_V", "region"});
    for (const auto &name : a.modes) {
        const CaptureMode mode = parse_mode(name);
        if (mode == CaptureMode::unprotected)
            throw UsageError("attenuation needs a protected, degenerated or vlb mode");
        const auto run = measure_attenuation(cfg, mode, a.frames, seed);
        table.row(std::vector<std::string>{to_string(mode), io::format_number(run.ratio), io::format_number(run.op.vdd),
                                           std::to_string(run.op.n_on), io::format_number(run.op.v_aes),
                                           pdn::to_string(run.op.region)});
        if (a.waveforms) {
            io::CsvWriter w(join(dir, (std::string("waveform_") + to_string(mode) + ".csv").c_str()),
                            {"time_s", "crypto_current_A", "supply_current_A"});
            for (std::size_t i = 0; i < run.crypto.samples.size(); ++i)
                w.row(std::vector<double>{static_cast<double>(i) * run.crypto.dt, run.crypto.samples[i],
                                          run.supply.samples[i]});
            w.close();
        }
        std::cout << to_string(mode) << ": attenuation " << io::format_number(run.ratio) << "x with " << run.op.n_on
                  << " slices (" << pdn::to_string(run.op.region) << ")\n";
    }
    table.close();
    return kOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"attenlab: signature-attenuation side-channel lab"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto *simulate = app.add_subcommand("simulate", "generate power and EM trace files");
    simulate->add_option("--config", sim.config, "experiment config file")->required();
    simulate->add_option("--set", sim.overrides, "override, section.key=value");
    simulate->add_option("--mode", sim.mode, "unprotected|protected|degenerated|vlb");
    simulate->add_option("--n-traces", sim.n_traces, "number of traces");
    simulate->add_option("--out", sim.out, "output directory");
    simulate->add_option("--seed", sim.seed, "trace seed (default: config seed)");
    simulate->add_option("--averaging", sim.averaging, "repeats per plaintext");
    simulate->add_flag("--fixed-plaintext", sim.fixed_plaintext, "use the all-zero plaintext");
    simulate->add_flag("--no-em", sim.no_em, "skip the EM trace file");

    AttackArgs atk;
    auto *attack = app.add_subcommand("attack", "CPA, CEMA or spectral CPA on a trace file");
    attack->add_option("--traces", atk.traces, "trace file")->required();
    attack->add_option("--method", atk.method, "cpa|cema|spectral");
    attack->add_option("--byte", atk.byte, "target key byte 0..15");
    attack->add_option("--averaging", atk.averaging, "average groups of repeated plaintexts");
    attack->add_option("--out", atk.out, "output directory");
    attack->add_option("--key", atk.key, "AES-256 key in hex, to rank the correct byte");
    attack->add_option("--config", atk.config, "config whose key ranks the correct byte");
    attack->add_option("--max-traces", atk.max_traces, "use at most this many (averaged) traces");
    attack->add_option("--repeats", atk.repeats, "split the file into this many disjoint attacks");
    attack->add_option("--window", atk.window, "sample window begin:end");
    attack->add_option("--f-lo", atk.f_lo, "spectral band low edge, Hz");
    attack->add_option("--f-hi", atk.f_hi, "spectral band high edge, Hz (default Nyquist)");

    std::string fixed_path, random_path, tvla_out = ".";
    auto *tvla = app.add_subcommand("tvla", "fixed-vs-random Welch t-test");
    tvla->add_option("--fixed", fixed_path, "fixed-plaintext trace file")->required();
    tvla->add_option("--random", random_path, "random-plaintext trace file")->required();
    tvla->add_option("--out", tvla_out, "output directory");

    DetectArgs det;
    auto *detect = app.add_subcommand("detect", "co-simulate a VDD drop with the attack detector");
    detect->add_option("--config", det.config, "experiment config file")->required();
    detect->add_option("--set", det.overrides, "override, section.key=value");
    detect->add_option("--vdd-drop", det.vdd_drop, "supply drop in volts");
    detect->add_option("--ramp", det.ramp, "drop ramp time in seconds");
    detect->add_option("--out", det.out, "output directory");
    detect->add_option("--seed", det.seed, "jitter seed (default: config seed)");
    detect->add_option("--thresholds", det.thresholds, "threshold sweep for detection probability")->delimiter(',');
    detect->add_option("--runs", det.runs, "runs per threshold in a sweep");

    AttenuationArgs att;
    auto *attenuation = app.add_subcommand("attenuation", "supply-current attenuation per protection mode");
    attenuation->add_option("--config", att.config, "experiment config file")->required();
    attenuation->add_option("--set", att.overrides, "override, section.key=value");
    attenuation->add_option("--modes", att.modes, "comma-separated modes")->delimiter(',');
    attenuation->add_option("--frames", att.frames, "encryption frames to simulate");
    attenuation->add_option("--out", att.out, "output directory");
    attenuation->add_option("--seed", att.seed, "seed (default: config seed)");
    attenuation->add_flag("--waveforms", att.waveforms, "also write per-mode current waveforms");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kConfigError;
    }

    try {
        if (*simulate)
            return cmd_simulate(sim);
        if (*attack)
            return cmd_attack(atk);
        if (*tvla)
            return cmd_tvla(fixed_path, random_path, tvla_out);
        if (*detect)
            return cmd_detect(det);
        if (*attenuation)
            return cmd_attenuation(att);
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const io::TraceFormatError &e) {
        std::cerr << "trace file error: " << e.what() << "\n";
        return kDataError;
    } catch (const pdn::VlbInfeasible &e) {
        std::cerr << e.what() << "\n";
        return kInfeasible;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kFailure;
}
