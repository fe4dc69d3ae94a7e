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

#include "attenlab/detector.h"

#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>

namespace attenlab::detector {

void DetectorConfig::validate() const {
    if (!(detector_clock_hz > 0.0))
        throw std::invalid_argument("detector clock must be positive");
    if (time_to_count < 1)
        throw std::invalid_argument("time_to_count must be at least 1");
    if (diff_threshold < 0)
        throw std::invalid_argument("diff_threshold must be non-negative");
    if (divider_ratio < 1)
        throw std::invalid_argument("detector divider must be at least 1");
    if (jitter_sigma < 0.0)
        throw std::invalid_argument("jitter sigma must be non-negative");
}

bool counts_exceed(long count_vdd, long count_vaes, int diff_threshold) {
    return std::labs(count_vdd - count_vaes) > diff_threshold;
}

void detector_step(DetectorState &state, const DetectorConfig &cfg, double v_dd, double v_aes,
                   CounterRng *jitter, double start_time) {
    const double period = 1.0 / cfg.detector_clock_hz;
    auto edges = [&](double v) { return std::max(cfg.ro_gain * v + cfg.ro_offset, 0.0) * period / cfg.divider_ratio; };

    const double divided_vdd = v_dd * cfg.vdd_divider_ratio * (1.0 + cfg.divider_mismatch);
    double add_vdd = edges(divided_vdd);
    double add_vaes = edges(v_aes);
    if (jitter && cfg.jitter_sigma > 0.0) {
        // Spread the per-window jitter over the cycles of a window.
        std::normal_distribution<double> n(0.0, cfg.jitter_sigma / std::sqrt(cfg.time_to_count));
        add_vdd += n(*jitter);
        add_vaes += n(*jitter);
    }
    state.phase_vdd = std::max(state.phase_vdd + add_vdd, 0.0);
    state.phase_vaes = std::max(state.phase_vaes + add_vaes, 0.0);
    const double whole_vdd = std::floor(state.phase_vdd);
    const double whole_vaes = std::floor(state.phase_vaes);
    state.phase_vdd -= whole_vdd;
    state.phase_vaes -= whole_vaes;
    state.count_vdd += static_cast<long>(whole_vdd);
    state.count_vaes += static_cast<long>(whole_vaes);

    ++state.cycles_elapsed;
    state.window_closed = state.cycles_elapsed % cfg.time_to_count == 0;
    if (!state.window_closed)
        return;
    state.last_count_vdd = state.count_vdd;
    state.last_count_vaes = state.count_vaes;
    if (!state.attack_flag && counts_exceed(state.count_vdd, state.count_vaes, cfg.diff_threshold)) {
        state.attack_flag = true;
        state.detection_time = start_time + static_cast<double>(state.cycles_elapsed) * period;
    }
    state.count_vdd = 0;
    state.count_vaes = 0;
}

} // namespace attenlab::detector
