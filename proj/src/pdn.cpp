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

#include "attenlab/pdn.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace attenlab::pdn {

const char *to_string(Region region) {
    switch (region) {
    case Region::cutoff:
        return "cutoff";
    case Region::linear:
        return "linear";
    case Region::saturation:
        return "saturation";
    }
    return "?";
}

const char *to_string(Topology topology) {
    return topology == Topology::cascoded ? "cascoded" : "degenerated";
}

void NandLadderConfig::validate() const {
    for (int n : {p, q, r})
        if (n < 0 || n > kNandsPerStage)
            throw std::invalid_argument("NAND ladder counts must be in 0..16, got " + std::to_string(n));
    if (!(r_on > 0.0) || !(r_off > r_on))
        throw std::invalid_argument("NAND ladder needs r_off > r_on > 0");
    if (!(vdd > 0.0))
        throw std::invalid_argument("NAND ladder supply must be positive");
}

double nand_stage_impedance(int on_count, double r_on, double r_off) {
    const int off_count = kNandsPerStage - on_count;
    // Conductances add for gates in parallel.
    const double g = on_count / r_on + off_count / r_off;
    return 1.0 / g;
}

double nand_bias_voltage(const NandLadderConfig &cfg) {
    cfg.validate();
    const double z_bottom = nand_stage_impedance(cfg.p, cfg.r_on, cfg.r_off);
    const double z_mid = nand_stage_impedance(cfg.q, cfg.r_on, cfg.r_off);
    const double z_top = nand_stage_impedance(cfg.r, cfg.r_on, cfg.r_off);
    return cfg.vdd * (z_bottom + z_mid) / (z_bottom + z_mid + z_top);
}

double pmos_slice_current(double v_sg, double v_sd, double k, double v_t) {
    const double v_ov = v_sg - v_t;
    if (v_ov <= 0.0)
        return 0.0;
    if (v_sd < v_ov)
        return k * (v_ov - 0.5 * v_sd) * v_sd;
    return 0.5 * k * v_ov * v_ov;
}

Region pmos_region(double v_sg, double v_sd, double v_t) {
    const double v_ov = v_sg - v_t;
    if (v_ov <= 0.0)
        return Region::cutoff;
    return v_sd < v_ov ? Region::linear : Region::saturation;
}

NandLadderConfig DeviceConfig::ladder(double supply) const {
    return NandLadderConfig{ladder_p, ladder_q, ladder_r, r_on, r_off, supply};
}

void DeviceConfig::validate() const {
    if (!(vdd > 0.0))
        throw std::invalid_argument("vdd must be positive");
    if (!(aes_clock_hz > 0.0))
        throw std::invalid_argument("AES clock must be positive");
    if (!(v_t > 0.0) || !(k_device > 0.0))
        throw std::invalid_argument("device v_t and k must be positive");
    if (lambda < 0.0 || !(cascode_gain >= 1.0))
        throw std::invalid_argument("lambda must be >= 0 and cascode_gain >= 1");
    if (n_max < 1)
        throw std::invalid_argument("n_max must be positive");
    if (!(c_load > 0.0) || !(c_decap > 0.0))
        throw std::invalid_argument("capacitances must be positive");
    if (g_bleed < 0.0)
        throw std::invalid_argument("g_bleed must be non-negative");
    if (!(v_aes_min > 0.0) || !(v_aes_nominal >= v_aes_min) || !(v_aes_nominal < vdd))
        throw std::invalid_argument("need 0 < v_aes_min <= v_aes_nominal < vdd");
    ladder(vdd).validate();
}

double bias_gate_voltage(const DeviceConfig &cfg, double vdd) {
    if (cfg.topology == Topology::degenerated)
        return 0.5 * vdd;
    return nand_bias_voltage(cfg.ladder(vdd));
}

SliceModel SliceModel::at(const DeviceConfig &cfg, double vdd) {
    SliceModel m;
    m.vdd = vdd;
    m.v_sg = vdd - bias_gate_voltage(cfg, vdd);
    m.v_t = cfg.v_t;
    m.k = cfg.k_device;
    m.lambda_sat = cfg.topology == Topology::cascoded ? cfg.lambda / cfg.cascode_gain : cfg.lambda;
    return m;
}

double SliceModel::current(double v_aes) const {
    const double v_sd = std::max(vdd - v_aes, 0.0);
    const double i = pmos_slice_current(v_sg, v_sd, k, v_t);
    const double v_ov = v_sg - v_t;
    if (v_ov > 0.0 && v_sd >= v_ov)
        return i * (1.0 + lambda_sat * (v_sd - v_ov));
    return i;
}

Region SliceModel::region(double v_aes) const { return pmos_region(v_sg, std::max(vdd - v_aes, 0.0), v_t); }

double slice_current(const DeviceConfig &cfg, double vdd, double v_aes) {
    return SliceModel::at(cfg, vdd).current(v_aes);
}

Region bank_region(const DeviceConfig &cfg, double vdd, double v_aes) {
    return SliceModel::at(cfg, vdd).region(v_aes);
}

int SmcConfig::resolved_target(const DeviceConfig &device) const {
    if (target_count > 0)
        return target_count;
    const double f = ro_freq_per_volt * device.v_aes_nominal + ro_freq_offset;
    return static_cast<int>(std::lround(f / divider_ratio / smc_clock_hz));
}

void SmcConfig::validate() const {
    if (!(smc_clock_hz > 0.0))
        throw std::invalid_argument("SMC clock must be positive");
    if (divider_ratio < 1)
        throw std::invalid_argument("SMC divider must be at least 1");
    if (hysteresis < 0)
        throw std::invalid_argument("SMC hysteresis must be non-negative");
}

CsSliceBank describe_bank(const DeviceConfig &cfg, double vdd, double v_aes, int n_on) {
    CsSliceBank bank;
    bank.n_max = cfg.n_max;
    bank.n_on = n_on;
    bank.k_device = cfg.k_device;
    bank.v_t = cfg.v_t;
    bank.v_bias_top = nand_bias_voltage(cfg.ladder(vdd));
    bank.v_bias_bottom = 0.5 * vdd;
    bank.region = bank_region(cfg, vdd, v_aes);
    return bank;
}

PdnState initial_state(const DeviceConfig &cfg, double v_aes, int n_on) {
    PdnState s;
    s.v_dd = cfg.vdd;
    s.v_aes = v_aes;
    s.c_load = cfg.c_load;
    s.c_decap = cfg.c_decap;
    s.n_on = n_on;
    s.bleed_current = cfg.g_bleed * v_aes;
    s.region = bank_region(cfg, cfg.vdd, v_aes);
    return s;
}

double step_pdn(PdnState &state, const DeviceConfig &cfg, const SmcConfig &smc, double i_crypto, double dt) {
    return step_pdn(state, cfg, smc, SliceModel::at(cfg, state.v_dd), i_crypto, dt);
}

double step_pdn(PdnState &state, const DeviceConfig &cfg, const SmcConfig &smc, const SliceModel &slice,
                double i_crypto, double dt) {
    const double supply = state.n_on * slice.current(state.v_aes);
    const double bleed = cfg.g_bleed * state.v_aes;
    const double dv = dt * (supply - i_crypto - bleed) / (state.c_load + state.c_decap);
    if (!(std::abs(dv) <= 0.5 * state.v_dd))
        throw PdnDivergence("V_AES changed by " + std::to_string(dv) + " V in one step; reduce the time step");
    state.ro_phase += std::max(smc.ro_freq_per_volt * state.v_aes + smc.ro_freq_offset, 0.0) * dt;
    state.v_aes = std::clamp(state.v_aes + dv, 0.0, state.v_dd);
    state.bleed_current = cfg.g_bleed * state.v_aes;
    state.time += dt;
    state.region = state.n_on > 0 ? slice.region(state.v_aes) : Region::cutoff;
    return supply;
}

int smc_step(PdnState &state, const DeviceConfig &cfg, const SmcConfig &smc) {
    const double divided = std::floor(state.ro_phase / smc.divider_ratio);
    state.ro_phase -= divided * smc.divider_ratio;
    state.smc_counter = static_cast<long>(divided);
    const int target = smc.resolved_target(cfg);
    if (state.smc_counter < target - smc.hysteresis)
        state.n_on = std::min(state.n_on + 1, cfg.n_max);
    else if (state.smc_counter > target + smc.hysteresis)
        state.n_on = std::max(state.n_on - 1, 0);
    return state.n_on;
}

double VlbInjection::vdd_at(double t) const {
    if (drop == 0.0 || t <= start_time)
        return vdd_before;
    if (ramp <= 0.0 || t >= start_time + ramp)
        return vdd_before - drop;
    return vdd_before - drop * (t - start_time) / ramp;
}

VlbInjection inject_vlb(const PdnState &state, double vdd_drop, double ramp) {
    if (vdd_drop < 0.0 || vdd_drop >= state.v_dd)
        throw std::invalid_argument("VDD drop must be in [0, vdd)");
    if (ramp < 0.0)
        throw std::invalid_argument("ramp time must be non-negative");
    return VlbInjection{state.time, state.v_dd, vdd_drop, ramp};
}

double attenuation_ratio(const leakage::CurrentWaveform &supply, const leakage::CurrentWaveform &crypto) {
    if (supply.size() != crypto.size() || supply.size() == 0)
        throw std::invalid_argument("attenuation needs two non-empty waveforms of equal length");
    if (std::abs(supply.dt - crypto.dt) > 1e-6 * std::abs(crypto.dt))
        throw std::invalid_argument("attenuation needs waveforms with equal sample spacing");
    auto centred_rms = [](const std::vector<double> &x) {
        double mean = 0.0;
        for (double v : x)
            mean += v;
        mean /= static_cast<double>(x.size());
        double ss = 0.0;
        for (double v : x)
            ss += (v - mean) * (v - mean);
        return std::sqrt(ss / static_cast<double>(x.size()));
    };
    const double rs = centred_rms(supply.samples);
    const double rc = centred_rms(crypto.samples);
    if (rs == 0.0)
        return std::numeric_limits<double>::infinity();
    return rc / rs;
}

double equilibrium_voltage(const DeviceConfig &cfg, double vdd, int n_on, double i_crypto) {
    const SliceModel slice = SliceModel::at(cfg, vdd);
    auto net = [&](double v) { return n_on * slice.current(v) - i_crypto - cfg.g_bleed * v; };
    if (net(0.0) <= 0.0)
        return 0.0;
    double lo = 0.0;
    double hi = vdd;
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        const double mid = 0.5 * (lo + hi);
        (net(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Feasibility vlb_feasible(double i_crypto_avg, double k, double v_t, double v_gs, double v_ds, int n_max) {
    if (!(v_ds < v_gs - v_t))
        throw std::invalid_argument("bank is not in the linear region: v_ds >= v_gs - v_t");
    if (i_crypto_avg < 0.0 || !(k > 0.0) || !(v_t > 0.0) || !(v_ds > 0.0))
        throw std::invalid_argument("feasibility inputs must be positive");
    Feasibility f;
    f.v_gs = v_gs;
    f.v_ds = v_ds;
    f.load_current = i_crypto_avg;
    f.n_max = n_max;
    f.per_slice_current = k * (v_gs - v_t - 0.5 * v_ds) * v_ds;
    f.n_required = static_cast<long>(std::ceil(i_crypto_avg / f.per_slice_current));
    f.feasible = f.n_required <= n_max;
    return f;
}

Feasibility vlb_feasible(const DeviceConfig &cfg, double vdd_after, double i_crypto_avg) {
    const double v_gs = vdd_after - bias_gate_voltage(cfg, vdd_after);
    const double v_ds = vdd_after - cfg.v_aes_min;
    return vlb_feasible(i_crypto_avg + cfg.g_bleed * cfg.v_aes_min, cfg.k_device, cfg.v_t, v_gs, v_ds,
                        cfg.n_max);
}

SettleResult settle(PdnState state, const DeviceConfig &cfg, const SmcConfig &smc, double i_crypto,
                    const VlbInjection *attack, double max_time, double dt, int quiet_ticks) {
    const long steps_per_tick = std::max(1L, std::lround(1.0 / (smc.smc_clock_hz * dt)));
    SettleResult out;
    out.min_v_aes = state.v_aes;
    int quiet = 0;
    SliceModel slice = SliceModel::at(cfg, state.v_dd);
    while (state.time < max_time) {
        for (long s = 0; s < steps_per_tick; ++s) {
            if (attack)
                attack->apply(state);
            if (state.v_dd != slice.vdd)
                slice = SliceModel::at(cfg, state.v_dd);
            step_pdn(state, cfg, smc, slice, i_crypto, dt);
            out.min_v_aes = std::min(out.min_v_aes, state.v_aes);
        }
        const int before = state.n_on;
        smc_step(state, cfg, smc);
        ++out.smc_ticks;
        const bool attack_done = !attack || state.time >= attack->end_time();
        quiet = (attack_done && state.n_on == before) ? quiet + 1 : 0;
        if (quiet >= quiet_ticks) {
            out.settled = true;
            break;
        }
    }
    out.brown_out = state.v_aes < cfg.v_aes_min;
    out.state = state;
    return out;
}

double default_time_step(const DeviceConfig &cfg, int samples_per_round) {
    return 1.0 / (cfg.aes_clock_hz * samples_per_round);
}

} // namespace attenlab::pdn
