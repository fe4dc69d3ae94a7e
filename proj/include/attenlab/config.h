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

#include "attenlab/aes.h"
#include "attenlab/detector.h"
#include "attenlab/leakage.h"
#include "attenlab/pdn.h"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace attenlab {

struct AttackSettings {
    std::optional<aes::Key256> key; // derived from the seed when unset
    int target_byte = 0;
    int averaging = 1;
    double vdd_drop = 0.3;
    double vlb_ramp = 20e-6;
    int mtd_repeats = 5;
    double onset = 2.13e-3;     // attack start in detector runs
    double duration = 5e-3;     // length of detector runs
    double settle_limit = 0.2;  // longest closed-loop settle before giving up
};

struct ExperimentConfig {
    std::uint64_t seed = 0;
    pdn::DeviceConfig device;
    leakage::LeakageParams leakage;
    pdn::SmcConfig smc;
    detector::DetectorConfig detector;
    AttackSettings attack;

    void validate() const;
};

class ConfigError : public std::runtime_error {
  public:
    ConfigError(const std::string &source, int line, const std::string &message);
    int line() const { return line_; }

  private:
    int line_;
};

/// Parses the INI-style experiment file. `seed` is mandatory and goes
/// before the first section; every other key is optional.
ExperimentConfig parse_config(std::string_view text, const std::string &source = "<config>");
ExperimentConfig load_config(const std::string &path);

/// Applies one "section.key=value" override.
void apply_override(ExperimentConfig &cfg, const std::string &assignment);
void set_value(ExperimentConfig &cfg, const std::string &dotted_key, const std::string &value);

/// Canonical text form; parses back to the same configuration.
std::string to_text(const ExperimentConfig &cfg);
/// (dotted key, value) for every addressable field, seed first.
std::vector<std::pair<std::string, std::string>> flatten(const ExperimentConfig &cfg);

/// "150pF" with unit "F" -> 1.5e-10. Prefixes p n u m k M G; the unit
/// suffix is mandatory.
double parse_quantity(std::string_view text, std::string_view unit);

} // namespace attenlab
