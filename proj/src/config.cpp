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

#include "attenlab/config.h"

#include "attenlab/trace_io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <vector>

namespace attenlab {

ConfigError::ConfigError(const std::string &source, int line, const std::string &message)
    : std::runtime_error(line > 0 ? source + ":" + std::to_string(line) + ": " + message : source + ": " + message),
      line_(line) {}

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_real(std::string_view s) {
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw std::invalid_argument("expected a number, got '" + std::string(s) + "'");
    return v;
}

long long parse_integer(std::string_view s) {
    long long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw std::invalid_argument("expected an integer, got '" + std::string(s) + "'");
    return v;
}

struct Field {
    std::string key;
    std::function<void(ExperimentConfig &, const std::string &)> set;
    std::function<std::string(const ExperimentConfig &)> get;
};

using RealRef = double &(*)(ExperimentConfig &);
using IntRef = int &(*)(ExperimentConfig &);

Field quantity(std::string key, std::string unit, RealRef ref) {
    return {std::move(key),
            [unit, ref](ExperimentConfig &c, const std::string &v) { ref(c) = parse_quantity(v, unit); },
            [unit, ref](const ExperimentConfig &c) {
                return io::format_number(ref(const_cast<ExperimentConfig &>(c))) + unit;
            }};
}

Field real(std::string key, RealRef ref) {
    return {std::move(key), [ref](ExperimentConfig &c, const std::string &v) { ref(c) = parse_real(v); },
            [ref](const ExperimentConfig &c) { return io::format_number(ref(const_cast<ExperimentConfig &>(c))); }};
}

Field integer(std::string key, IntRef ref) {
    return {std::move(key),
            [ref](ExperimentConfig &c, const std::string &v) {
                const long long n = parse_integer(v);
                if (n < std::numeric_limits<int>::min() || n > std::numeric_limits<int>::max())
                    throw std::invalid_argument("integer out of range");
                ref(c) = static_cast<int>(n);
            },
            [ref](const ExperimentConfig &c) { return std::to_string(ref(const_cast<ExperimentConfig &>(c))); }};
}

const std::vector<Field> &fields() {
    static const std::vector<Field> table = [] {
        std::vector<Field> f;
        // [device]
        f.push_back(quantity("device.vdd", "V", [](ExperimentConfig &c) -> double & { return c.device.vdd; }));
        f.push_back(quantity("device.aes_clock", "Hz", [](ExperimentConfig &c) -> double & { return c.device.aes_clock_hz; }));
        f.push_back(quantity("device.v_aes_nominal", "V", [](ExperimentConfig &c) -> double & { return c.device.v_aes_nominal; }));
        f.push_back(quantity("device.v_aes_min", "V", [](ExperimentConfig &c) -> double & { return c.device.v_aes_min; }));
        f.push_back(quantity("device.v_t", "V", [](ExperimentConfig &c) -> double & { return c.device.v_t; }));
        f.push_back(quantity("device.k_device", "A/V2", [](ExperimentConfig &c) -> double & { return c.device.k_device; }));
        f.push_back(quantity("device.lambda", "/V", [](ExperimentConfig &c) -> double & { return c.device.lambda; }));
        f.push_back(real("device.cascode_gain", [](ExperimentConfig &c) -> double & { return c.device.cascode_gain; }));
        f.push_back(integer("device.n_max", [](ExperimentConfig &c) -> int & { return c.device.n_max; }));
        f.push_back({"device.topology",
                     [](ExperimentConfig &c, const std::string &v) {
                         if (v == "cascoded")
                             c.device.topology = pdn::Topology::cascoded;
                         else if (v == "degenerated")
                             c.device.topology = pdn::Topology::degenerated;
                         else
                             throw std::invalid_argument("topology must be cascoded or degenerated");
                     },
                     [](const ExperimentConfig &c) { return std::string(pdn::to_string(c.device.topology)); }});
        f.push_back(integer("device.ladder_p", [](ExperimentConfig &c) -> int & { return c.device.ladder_p; }));
        f.push_back(integer("device.ladder_q", [](ExperimentConfig &c) -> int & { return c.device.ladder_q; }));
        f.push_back(integer("device.ladder_r", [](ExperimentConfig &c) -> int & { return c.device.ladder_r; }));
        f.push_back(quantity("device.r_on", "ohm", [](ExperimentConfig &c) -> double & { return c.device.r_on; }));
        f.push_back(quantity("device.r_off", "ohm", [](ExperimentConfig &c) -> double & { return c.device.r_off; }));
        f.push_back(quantity("device.c_load", "F", [](ExperimentConfig &c) -> double & { return c.device.c_load; }));
        f.push_back(quantity("device.c_decap", "F", [](ExperimentConfig &c) -> double & { return c.device.c_decap; }));
        f.push_back(quantity("device.g_bleed", "S", [](ExperimentConfig &c) -> double & { return c.device.g_bleed; }));
        // [leakage]
        f.push_back(quantity("leakage.current_per_hd", "A", [](ExperimentConfig &c) -> double & { return c.leakage.current_per_hd; }));
        f.push_back(quantity("leakage.baseline_current", "A", [](ExperimentConfig &c) -> double & { return c.leakage.baseline_current; }));
        f.push_back(integer("leakage.samples_per_round", [](ExperimentConfig &c) -> int & { return c.leakage.samples_per_round; }));
        f.push_back(quantity("leakage.gaussian_noise_sigma", "A", [](ExperimentConfig &c) -> double & { return c.leakage.gaussian_noise_sigma; }));
        f.push_back(quantity("leakage.scope_noise_sigma", "A", [](ExperimentConfig &c) -> double & { return c.leakage.scope_noise_sigma; }));
        f.push_back(quantity("leakage.em_scale", "s", [](ExperimentConfig &c) -> double & { return c.leakage.em_scale; }));
        f.push_back(quantity("leakage.em_noise_sigma", "A", [](ExperimentConfig &c) -> double & { return c.leakage.em_noise_sigma; }));
        // [smc]
        f.push_back(quantity("smc.clock", "Hz", [](ExperimentConfig &c) -> double & { return c.smc.smc_clock_hz; }));
        f.push_back(quantity("smc.ro_gain", "Hz/V", [](ExperimentConfig &c) -> double & { return c.smc.ro_freq_per_volt; }));
        f.push_back(quantity("smc.ro_offset", "Hz", [](ExperimentConfig &c) -> double & { return c.smc.ro_freq_offset; }));
        f.push_back(integer("smc.divider", [](ExperimentConfig &c) -> int & { return c.smc.divider_ratio; }));
        f.push_back(integer("smc.target_count", [](ExperimentConfig &c) -> int & { return c.smc.target_count; }));
        f.push_back(integer("smc.hysteresis", [](ExperimentConfig &c) -> int & { return c.smc.hysteresis; }));
        // [detector]
        f.push_back(quantity("detector.clock", "Hz", [](ExperimentConfig &c) -> double & { return c.detector.detector_clock_hz; }));
        f.push_back(integer("detector.time_to_count", [](ExperimentConfig &c) -> int & { return c.detector.time_to_count; }));
        f.push_back(integer("detector.threshold", [](ExperimentConfig &c) -> int & { return c.detector.diff_threshold; }));
        f.push_back(integer("detector.divider", [](ExperimentConfig &c) -> int & { return c.detector.divider_ratio; }));
        f.push_back(real("detector.vdd_ratio", [](ExperimentConfig &c) -> double & { return c.detector.vdd_divider_ratio; }));
        f.push_back(real("detector.mismatch", [](ExperimentConfig &c) -> double & { return c.detector.divider_mismatch; }));
        f.push_back(quantity("detector.ro_gain", "Hz/V", [](ExperimentConfig &c) -> double & { return c.detector.ro_gain; }));
        f.push_back(quantity("detector.ro_offset", "Hz", [](ExperimentConfig &c) -> double & { return c.detector.ro_offset; }));
        f.push_back(real("detector.jitter_sigma", [](ExperimentConfig &c) -> double & { return c.detector.jitter_sigma; }));
        // [attack]
        f.push_back({"attack.key",
                     [](ExperimentConfig &c, const std::string &v) {
                         if (v == "auto")
                             c.attack.key.reset();
                         else
                             c.attack.key = aes::parse_key(v);
                     },
                     [](const ExperimentConfig &c) {
                         return c.attack.key ? aes::to_hex(c.attack.key->data(), 32) : std::string("auto");
                     }});
        f.push_back(integer("attack.target_byte", [](ExperimentConfig &c) -> int & { return c.attack.target_byte; }));
        f.push_back(integer("attack.averaging", [](ExperimentConfig &c) -> int & { return c.attack.averaging; }));
        f.push_back(quantity("attack.vdd_drop", "V", [](ExperimentConfig &c) -> double & { return c.attack.vdd_drop; }));
        f.push_back(quantity("attack.vlb_ramp", "s", [](ExperimentConfig &c) -> double & { return c.attack.vlb_ramp; }));
        f.push_back(integer("attack.mtd_repeats", [](ExperimentConfig &c) -> int & { return c.attack.mtd_repeats; }));
        f.push_back(quantity("attack.onset", "s", [](ExperimentConfig &c) -> double & { return c.attack.onset; }));
        f.push_back(quantity("attack.duration", "s", [](ExperimentConfig &c) -> double & { return c.attack.duration; }));
        f.push_back(quantity("attack.settle_limit", "s", [](ExperimentConfig &c) -> double & { return c.attack.settle_limit; }));
        return f;
    }();
    return table;
}

const Field *find_field(const std::string &key) {
    for (const auto &f : fields())
        if (f.key == key)
            return &f;
    return nullptr;
}

void set_seed(ExperimentConfig &cfg, const std::string &v) {
    const long long n = parse_integer(v);
    if (n < 0)
        throw std::invalid_argument("seed must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(n);
    cfg.leakage.rng_seed = cfg.seed;
}

} // namespace

double parse_quantity(std::string_view text, std::string_view unit) {
    const std::string s = trim(text);
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p == s.data())
        throw std::invalid_argument("expected a quantity in " + std::string(unit) + ", got '" + s + "'");
    std::string_view rest(p, static_cast<std::size_t>(s.data() + s.size() - p));
    while (!rest.empty() && rest.front() == ' ')
        rest.remove_prefix(1);
    if (rest == unit)
        return v;
    if (rest.size() == unit.size() + 1 && rest.substr(1) == unit) {
        int exponent = 0;
        switch (rest.front()) {
        case 'p': exponent = -12; break;
        case 'n': exponent = -9; break;
        case 'u': exponent = -6; break;
        case 'm': exponent = -3; break;
        case 'k': exponent = 3; break;
        case 'M': exponent = 6; break;
        case 'G': exponent = 9; break;
        default: break;
        }
        if (exponent != 0) {
            // Re-read with a decimal exponent so "240u" lands on the same
            // double as "240e-6" instead of picking up a rounding error.
            const std::string_view digits(s.data(), static_cast<std::size_t>(p - s.data()));
            if (digits.find_first_of("eE") == std::string_view::npos) {
                const std::string exact = std::string(digits) + "e" + std::to_string(exponent);
                double scaled = 0.0;
                std::from_chars(exact.data(), exact.data() + exact.size(), scaled);
                return scaled;
            }
            return v * std::pow(10.0, exponent);
        }
    }
    throw std::invalid_argument("'" + s + "' needs the unit " + std::string(unit) + " (optionally prefixed)");
}

void ExperimentConfig::validate() const {
    device.validate();
    leakage.validate();
    smc.validate();
    detector.validate();
    if (attack.target_byte < 0 || attack.target_byte > 15)
        throw std::invalid_argument("attack.target_byte must be in 0..15");
    if (attack.averaging < 1)
        throw std::invalid_argument("attack.averaging must be at least 1");
    if (attack.vdd_drop < 0.0 || attack.vdd_drop >= device.vdd)
        throw std::invalid_argument("attack.vdd_drop must be in [0, vdd)");
    if (attack.vlb_ramp < 0.0)
        throw std::invalid_argument("attack.vlb_ramp must be non-negative");
    if (attack.mtd_repeats < 3)
        throw std::invalid_argument("attack.mtd_repeats must be at least 3");
    if (attack.onset < 0.0 || !(attack.duration > attack.onset))
        throw std::invalid_argument("attack.duration must exceed attack.onset");
    if (!(attack.settle_limit > 0.0))
        throw std::invalid_argument("attack.settle_limit must be positive");
}

void set_value(ExperimentConfig &cfg, const std::string &dotted_key, const std::string &value) {
    if (dotted_key == "seed") {
        set_seed(cfg, value);
        return;
    }
    const Field *f = find_field(dotted_key);
    if (!f)
        throw std::invalid_argument("unknown key '" + dotted_key + "'");
    f->set(cfg, value);
}

void apply_override(ExperimentConfig &cfg, const std::string &assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos)
        throw ConfigError("--set", 0, "expected section.key=value, got '" + assignment + "'");
    try {
        set_value(cfg, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
    } catch (const std::invalid_argument &e) {
        throw ConfigError("--set", 0, e.what());
    }
}

ExperimentConfig parse_config(std::string_view text, const std::string &source) {
    ExperimentConfig cfg;
    std::string section;
    bool have_seed = false;
    std::set<std::string> seen;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (const auto c = line.find_first_of("#;"); c != std::string::npos)
            line.erase(c);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(source, line_no, "malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "device" && section != "leakage" && section != "smc" && section != "detector" &&
                section != "attack")
                throw ConfigError(source, line_no, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(source, line_no, "expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string dotted = section.empty() ? key : section + "." + key;
        if (!seen.insert(dotted).second)
            throw ConfigError(source, line_no, "duplicate key '" + dotted + "'");
        if (section.empty() && key != "seed")
            throw ConfigError(source, line_no, "unknown top-level key '" + key + "'");
        try {
            set_value(cfg, dotted, value);
        } catch (const std::invalid_argument &e) {
            throw ConfigError(source, line_no, e.what());
        }
        if (dotted == "seed")
            have_seed = true;
    }
    if (!have_seed)
        throw ConfigError(source, 0, "missing mandatory 'seed'");
    try {
        cfg.validate();
    } catch (const std::invalid_argument &e) {
        throw ConfigError(source, 0, e.what());
    }
    return cfg;
}

ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError(path, 0, "cannot open config file");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path);
}

std::vector<std::pair<std::string, std::string>> flatten(const ExperimentConfig &cfg) {
    std::vector<std::pair<std::string, std::string>> out;
    out.emplace_back("seed", std::to_string(cfg.seed));
    for (const auto &f : fields())
        out.emplace_back(f.key, f.get(cfg));
    return out;
}

std::string to_text(const ExperimentConfig &cfg) {
    std::string out = "seed = " + std::to_string(cfg.seed) + "\n";
    std::string section;
    for (const auto &f : fields()) {
        const auto dot = f.key.find('.');
        const std::string s = f.key.substr(0, dot);
        if (s != section) {
            section = s;
            out += "\n[" + section + "]\n";
        }
        out += f.key.substr(dot + 1) + " = " + f.get(cfg) + "\n";
    }
    return out;
}

} // namespace attenlab
