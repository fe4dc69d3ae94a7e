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

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace attenlab::sca {

/// Traces stored row-major, one row per encryption.
struct TraceSet {
    std::size_t n_samples = 0;
    double sample_rate_hz = 0.0;
    std::vector<float> samples;
    std::vector<aes::Block> plaintexts;
    std::vector<aes::Block> ciphertexts;
    std::vector<std::pair<std::string, std::string>> metadata;

    TraceSet() = default;
    TraceSet(std::size_t samples_per_trace, double rate) : n_samples(samples_per_trace), sample_rate_hz(rate) {}

    std::size_t size() const { return plaintexts.size(); }
    bool empty() const { return plaintexts.empty(); }
    std::span<const float> trace(std::size_t i) const {
        return {samples.data() + i * n_samples, n_samples};
    }
    void reserve(std::size_t n);
    void append(const aes::Block &pt, const aes::Block &ct, std::span<const float> row);
    void append(const aes::Block &pt, const aes::Block &ct, std::span<const double> row);
    /// Copy of traces [begin, begin + count).
    TraceSet slice(std::size_t begin, std::size_t count) const;
    void validate() const;
};

/// Checkpoint trace counts: `per_decade` log-spaced values from `first`.
std::vector<std::size_t> log_checkpoints(std::size_t max_count, std::size_t first = 16, int per_decade = 10);
/// Smallest checkpoint of that sequence strictly above `after`.
std::size_t next_checkpoint(std::size_t after, std::size_t first = 16, int per_decade = 10);

/// Sufficient statistics for Pearson correlation of the 256 last-round
/// hypotheses of one key byte against a window of sample columns. All
/// sums are taken about a fixed reference so accumulators built from
/// different batches merge by plain addition.
class CpaAccumulator {
  public:
    CpaAccumulator(int target_byte, std::span<const double> reference);

    void add(const aes::Block &ct, const double *row);
    void merge(const CpaAccumulator &other);
    /// Empty accumulator with the same target and reference.
    CpaAccumulator empty_like() const { return CpaAccumulator(target_byte_, reference_); }

    std::size_t count() const { return n_; }
    std::size_t width() const { return reference_.size(); }
    int target_byte() const { return target_byte_; }

    /// 256 x width correlations, row per key guess. Columns without
    /// variance give 0.
    std::vector<double> correlations() const;
    std::vector<std::size_t> zero_variance_columns() const;

  private:
    int target_byte_;
    std::vector<double> reference_;
    std::size_t n_ = 0;
    std::array<double, 256> sum_h_{};
    std::array<double, 256> sum_hh_{};
    std::vector<double> sum_x_;
    std::vector<double> sum_xx_;
    std::vector<double> sum_hx_; // 256 x width
};

struct CheckpointRank {
    std::size_t traces = 0;
    std::uint8_t best_guess = 0;
    int correct_rank = -1;       // -1 when the correct key byte is unknown
    double correct_peak = 0.0;   // max |rho| of the correct guess
    double best_wrong_peak = 0.0;
};

struct AttackResult {
    int target_byte = 0;
    std::size_t n_traces = 0;
    std::size_t width = 0;
    std::vector<double> axis;         // sample index or bin frequency per column
    std::vector<double> correlations; // 256 x width
    std::array<double, 256> peak{};   // max |rho| per guess
    std::optional<std::uint8_t> correct_key;
    int key_rank = -1;
    std::uint8_t best_guess = 0;
    std::vector<CheckpointRank> mtd_curve;
    std::vector<std::uint8_t> recovered_key_bytes;
    bool averaging_applied = false;
    int averaging = 1;

    double correlation(int guess, std::size_t column) const { return correlations[guess * width + column]; }
};

/// Rank of `correct` when guesses are sorted by peak |rho|; 0 is first.
int key_rank(const std::array<double, 256> &peak, std::uint8_t correct);

struct CpaOptions {
    int target_byte = 0;
    int averaging = 1;
    // Sample columns [first, second); unset selects final_round_window.
    std::optional<std::pair<std::size_t, std::size_t>> window;
    std::optional<std::uint8_t> correct_key;
    std::size_t max_traces = 0; // 0 means all
    std::size_t chunk_size = 4096;
    unsigned workers = 0;       // 0 means the process default
    std::size_t first_checkpoint = 16;
    int checkpoints_per_decade = 10;
};

/// Incremental CPA. Rows are fed in order; batches are split into fixed
/// chunks processed by workers and merged in chunk order.
class StreamingCpa {
  public:
    StreamingCpa(const CpaOptions &options, std::size_t width);

    void consume(const double *rows, const aes::Block *ciphertexts, std::size_t n);
    std::size_t count() const;
    AttackResult finish(std::vector<double> axis = {});

  private:
    void record_checkpoint(const CpaAccumulator &acc);

    CpaOptions options_;
    std::size_t width_;
    std::optional<CpaAccumulator> total_;
    std::vector<CheckpointRank> curve_;
    std::size_t next_checkpoint_;
};

/// Group-average consecutive repeats of the same plaintext. Returns false
/// (and leaves the set untouched) when the set is not made of such groups.
bool average_repeats(TraceSet &set, int averaging);

/// Default attack window: the final round and the idle cycle after it.
std::pair<std::size_t, std::size_t> final_round_window(std::size_t n_samples);

AttackResult cpa_attack(const TraceSet &traces, const CpaOptions &options);
AttackResult cema_attack(const TraceSet &em_traces, const CpaOptions &options);

struct SpectralOptions {
    int target_byte = 0;
    double f_lo = 0.0;
    double f_hi = 0.0;
    std::optional<std::uint8_t> correct_key;
    std::size_t max_traces = 0;
    unsigned workers = 0;
};

std::size_t next_power_of_two(std::size_t n);
/// |X[k]| for k = 0 .. N/2 of the zero-padded trace.
std::vector<double> magnitude_spectrum(std::span<const double> x);
AttackResult spectral_cpa(const TraceSet &traces, const SpectralOptions &options);

class ZeroVarianceColumns : public std::runtime_error {
  public:
    explicit ZeroVarianceColumns(std::vector<std::size_t> columns);
    const std::vector<std::size_t> &columns() const { return columns_; }

  private:
    std::vector<std::size_t> columns_;
};

/// Per-column running mean and variance (Welford), mergeable.
class WelfordColumns {
  public:
    explicit WelfordColumns(std::size_t width = 0) : mean_(width, 0.0), m2_(width, 0.0) {}

    void add(const double *row);
    void add(std::span<const float> row);
    void merge(const WelfordColumns &other);

    std::size_t count() const { return n_; }
    std::size_t width() const { return mean_.size(); }
    double mean(std::size_t i) const { return mean_[i]; }
    double variance(std::size_t i) const { return n_ > 1 ? m2_[i] / static_cast<double>(n_ - 1) : 0.0; }

  private:
    std::size_t n_ = 0;
    std::vector<double> mean_;
    std::vector<double> m2_;
};

std::vector<double> welch_t(const WelfordColumns &fixed, const WelfordColumns &random);

constexpr double kTvlaThreshold = 4.5;

struct TvlaResult {
    std::vector<double> t_values;
    double max_abs_t = 0.0;
    /// Total traces (both classes) at the first checkpoint from which
    /// max |t| stays above the threshold.
    std::optional<std::size_t> first_leaky_trace_count;
    std::vector<std::pair<std::size_t, double>> max_t_curve; // (total traces, max |t|)
};

/// Feeds fixed and random traces in lock-step pairs.
class StreamingTvla {
  public:
    explicit StreamingTvla(std::size_t width, double threshold = kTvlaThreshold);

    void add_fixed(std::span<const float> row);
    void add_random(std::span<const float> row);
    TvlaResult finish() const;

  private:
    void maybe_checkpoint();

    double threshold_;
    WelfordColumns fixed_;
    WelfordColumns random_;
    std::vector<std::size_t> checkpoints_;
    std::size_t next_ = 0;
    std::vector<std::pair<std::size_t, double>> curve_;
};

TvlaResult tvla(const TraceSet &fixed, const TraceSet &random, double threshold = kTvlaThreshold);

struct MtdEstimate {
    std::optional<std::size_t> mtd; // empty when not reached
    std::size_t max_traces = 0;
    int n_repeats = 0;
    std::vector<int> final_ranks;
};

/// Smallest checkpoint from which the correct key stays at rank 0 in at
/// least n_repeats - 1 of the repeats.
MtdEstimate estimate_mtd(const std::function<AttackResult(int repeat)> &attack, std::size_t max_traces,
                         int n_repeats);
MtdEstimate estimate_mtd(const std::vector<AttackResult> &repeats, std::size_t max_traces);

} // namespace attenlab::sca
