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

#include "attenlab/leakage.h"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace attenlab::pdn {

enum class Region { cutoff, linear, saturation };
enum class Topology { cascoded, degenerated };

const char *to_string(Region region);
const char *to_string(Topology topology);

/// Three stacked stages of 16 self-connected NAND gates; p, q and r are
/// the gates switched on in the bottom, middle and top stage.
struct NandLadderConfig {
    int p = 7;
    int q = 15;
    int r = 7;
    double r_on = 10e3;
    double r_off = 170.7e3;
    double vdd = 1.2;

    void validate() const;
};

constexpr int kNandsPerStage = 16;

/// Impedance of one stage with `on_count` gates conducting.
double nand_stage_impedance(int on_count, double r_on, double r_off);
double nand_bias_voltage(const NandLadderConfig &cfg);

/// Square-law PMOS drain current. Voltages are source-referred magnitudes.
double pmos_slice_current(double v_sg, double v_sd, double k, double v_t);
Region pmos_region(double v_sg, double v_sd, double v_t);

struct DeviceConfig {
    double vdd = 1.2;
    double aes_clock_hz = 20e6;
    double v_aes_nominal = 0.8;
    double v_aes_min = 0.78;

    double v_t = 0.23;
    double k_device = 2.4e-4;
    // Saturation output conductance of one slice, relative to its current.
    // Cascoding divides it by cascode_gain.
    double lambda = 0.2;
    double cascode_gain = 10.0;
    int n_max = 512;
    Topology topology = Topology::cascoded;

    int ladder_p = 7;
    int ladder_q = 15;
    int ladder_r = 7;
    double r_on = 10e3;
    double r_off = 170.7e3;

    double c_load = 150e-12;
    double c_decap = 30e-12;
    double g_bleed = 0.5e-3;

    NandLadderConfig ladder(double supply) const;
    double capacitance() const { return c_load + c_decap; }
    void validate() const;
};

/// Gate bias of the current-setting device at supply `vdd`.
double bias_gate_voltage(const DeviceConfig &cfg, double vdd);
double slice_current(const DeviceConfig &cfg, double vdd, double v_aes);
Region bank_region(const DeviceConfig &cfg, double vdd, double v_aes);

/// Per-slice I-V curve at one supply voltage, precomputed for stepping.
struct SliceModel {
    double vdd = 0.0;
    double v_sg = 0.0;
    double v_t = 0.0;
    double k = 0.0;
    double lambda_sat = 0.0;

    static SliceModel at(const DeviceConfig &cfg, double vdd);
    double current(double v_aes) const;
    Region region(double v_aes) const;
};

struct SmcConfig {
    double smc_clock_hz = 10e3;
    double ro_freq_per_volt = 500e6;
    double ro_freq_offset = 0.0;
    int divider_ratio = 16;
    int target_count = 0; // 0 derives it from v_aes_nominal
    int hysteresis = 31;

    int resolved_target(const DeviceConfig &device) const;
    void validate() const;
};

struct CsSliceBank {
    int n_max = 0;
    int n_on = 0;
    double k_device = 0.0;
    double v_t = 0.0;
    double v_bias_top = 0.0;
    double v_bias_bottom = 0.0;
    Region region = Region::cutoff;
};

CsSliceBank describe_bank(const DeviceConfig &cfg, double vdd, double v_aes, int n_on);

struct PdnState {
    double v_dd = 1.2;
    double v_aes = 0.8;
    double c_load = 150e-12;
    double c_decap = 30e-12;
    double bleed_current = 0.0;
    double time = 0.0;
    int n_on = 0;
    long smc_counter = 0;  // divided RO edges counted in the current SMC period
    double ro_phase = 0.0; // undivided RO cycles not yet counted
    Region region = Region::saturation;
};

PdnState initial_state(const DeviceConfig &cfg, double v_aes, int n_on);

class PdnDivergence : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Advance the V_AES node by `dt`. Returns the total slice current drawn
/// from VDD, which is what an attacker on the supply pin observes.
double step_pdn(PdnState &state, const DeviceConfig &cfg, const SmcConfig &smc, double i_crypto, double dt);
/// Same, reusing a slice model built for state.v_dd.
double step_pdn(PdnState &state, const DeviceConfig &cfg, const SmcConfig &smc, const SliceModel &slice,
                double i_crypto, double dt);

/// One SMC clock edge: compare the divided RO count with the target band
/// and switch one slice on or off.
int smc_step(PdnState &state, const DeviceConfig &cfg, const SmcConfig &smc);

/// Ramp of the external supply applied by the attacker.
struct VlbInjection {
    double start_time = 0.0;
    double vdd_before = 0.0;
    double drop = 0.0;
    double ramp = 0.0;

    double vdd_at(double t) const;
    double vdd_after() const { return vdd_before - drop; }
    double end_time() const { return start_time + ramp; }
    void apply(PdnState &state) const { state.v_dd = vdd_at(state.time); }
};

VlbInjection inject_vlb(const PdnState &state, double vdd_drop, double ramp);

double attenuation_ratio(const leakage::CurrentWaveform &supply, const leakage::CurrentWaveform &crypto);

/// Steady V_AES for a fixed slice count and constant crypto current.
double equilibrium_voltage(const DeviceConfig &cfg, double vdd, int n_on, double i_crypto);

struct Feasibility {
    bool feasible = false;
    long n_required = 0;
    double per_slice_current = 0.0;
    double v_gs = 0.0;
    double v_ds = 0.0;
    double load_current = 0.0;
    int n_max = 0;
};

/// Slices needed for the bank, biased in the linear region, to carry the
/// average crypto current.
Feasibility vlb_feasible(double i_crypto_avg, double k, double v_t, double v_gs, double v_ds, int n_max);

/// The same check at the attacker's reduced supply, evaluated at the
/// lowest V_AES the core tolerates with the bleed path included.
Feasibility vlb_feasible(const DeviceConfig &cfg, double vdd_after, double i_crypto_avg);

class VlbInfeasible : public std::runtime_error {
  public:
    VlbInfeasible(const std::string &what, Feasibility detail)
        : std::runtime_error(what), detail_(detail) {}
    const Feasibility &detail() const { return detail_; }

  private:
    Feasibility detail_;
};

struct SettleResult {
    PdnState state;
    bool settled = false;
    bool brown_out = false;
    long smc_ticks = 0;
    double min_v_aes = 0.0;
};

/// Run the closed loop with a constant load until the SMC holds n_on for
/// `quiet_ticks` consecutive periods or `max_time` elapses.
SettleResult settle(PdnState state, const DeviceConfig &cfg, const SmcConfig &smc, double i_crypto,
                    const VlbInjection *attack, double max_time, double dt, int quiet_ticks = 8);

/// Integration step used for PDN runs: one step per leakage sample.
double default_time_step(const DeviceConfig &cfg, int samples_per_round);

} // namespace attenlab::pdn
