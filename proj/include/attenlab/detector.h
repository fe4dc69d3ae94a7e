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

#include "attenlab/rng.h"

#include <optional>

namespace attenlab::detector {

struct DetectorConfig {
    double detector_clock_hz = 10e3;
    int time_to_count = 5;
    int diff_threshold = 10;
    int divider_ratio = 1000;
    double vdd_divider_ratio = 2.0 / 3.0;
    double divider_mismatch = 0.002; // relative error of the stacked-inverter divider
    double ro_gain = 500e6;          // Hz/V
    double ro_offset = 0.0;          // Hz
    double jitter_sigma = 0.5;       // divided counts per window, per oscillator

    void validate() const;
};

struct DetectorState {
    long count_vdd = 0;
    long count_vaes = 0;
    long cycles_elapsed = 0;
    bool attack_flag = false;
    std::optional<double> detection_time;

    // Result of the most recent comparison window.
    long last_count_vdd = 0;
    long last_count_vaes = 0;
    bool window_closed = false;

    // Fractional divided-RO edges carried between cycles.
    double phase_vdd = 0.0;
    double phase_vaes = 0.0;
};

/// Comparator decision for one window.
bool counts_exceed(long count_vdd, long count_vaes, int diff_threshold);

/// One detector clock cycle with the two supplies averaged over it.
/// `jitter` may be null for a noiseless run. `start_time` is the time of
/// the first detector cycle.
void detector_step(DetectorState &state, const DetectorConfig &cfg, double v_dd, double v_aes,
                   CounterRng *jitter = nullptr, double start_time = 0.0);

/// Encryption-enable line driven by the latched attack flag.
inline bool halt_on_detect(bool attack_flag) { return !attack_flag; }

} // namespace attenlab::detector
