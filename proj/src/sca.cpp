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

#include "attenlab/sca.h"

#include "attenlab/fft.h"
#include "attenlab/parallel.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace attenlab::sca {

void TraceSet::reserve(std::size_t n) {
    samples.reserve(n * n_samples);
    plaintexts.reserve(n);
    ciphertexts.reserve(n);
}

void TraceSet::append(const aes::Block &pt, const aes::Block &ct, std::span<const float> row) {
    if (row.size() != n_samples)
        throw std::invalid_argument("trace length does not match the set");
    samples.insert(samples.end(), row.begin(), row.end());
    plaintexts.push_back(pt);
    ciphertexts.push_back(ct);
}

void TraceSet::append(const aes::Block &pt, const aes::Block &ct, std::span<const double> row) {
    if (row.size() != n_samples)
        throw std::invalid_argument("trace length does not match the set");
    for (double v : row)
        samples.push_back(static_cast<float>(v));
    plaintexts.push_back(pt);
    ciphertexts.push_back(ct);
}

TraceSet TraceSet::slice(std::size_t begin, std::size_t count) const {
    begin = std::min(begin, size());
    count = std::min(count, size() - begin);
    TraceSet out(n_samples, sample_rate_hz);
    out.metadata = metadata;
    out.samples.assign(samples.begin() + static_cast<std::ptrdiff_t>(begin * n_samples),
                       samples.begin() + static_cast<std::ptrdiff_t>((begin + count) * n_samples));
    out.plaintexts.assign(plaintexts.begin() + static_cast<std::ptrdiff_t>(begin),
                          plaintexts.begin() + static_cast<std::ptrdiff_t>(begin + count));
    out.ciphertexts.assign(ciphertexts.begin() + static_cast<std::ptrdiff_t>(begin),
                           ciphertexts.begin() + static_cast<std::ptrdiff_t>(begin + count));
    return out;
}

void TraceSet::validate() const {
    if (plaintexts.size() != ciphertexts.size() || samples.size() != plaintexts.size() * n_samples)
        throw std::invalid_argument("trace set fields disagree on the number of traces");
}

std::size_t next_checkpoint(std::size_t after, std::size_t first, int per_decade) {
    first = std::max<std::size_t>(first, 1);
    if (after < first)
        return first;
    int k = static_cast<int>(std::floor(per_decade * std::log10(static_cast<double>(after)))) - 1;
    for (;; ++k) {
        const auto c = static_cast<std::size_t>(std::llround(std::pow(10.0, static_cast<double>(k) / per_decade)));
        if (c > after)
            return c;
    }
}

std::vector<std::size_t> log_checkpoints(std::size_t max_count, std::size_t first, int per_decade) {
    std::vector<std::size_t> out;
    for (std::size_t c = next_checkpoint(0, first, per_decade); c <= max_count;
         c = next_checkpoint(c, first, per_decade))
        out.push_back(c);
    if (out.empty() || out.back() != max_count)
        out.push_back(max_count);
    return out;
}

CpaAccumulator::CpaAccumulator(int target_byte, std::span<const double> reference)
    : target_byte_(target_byte), reference_(reference.begin(), reference.end()), sum_x_(reference.size(), 0.0),
      sum_xx_(reference.size(), 0.0), sum_hx_(256 * reference.size(), 0.0) {
    if (target_byte < 0 || target_byte > 15)
        throw std::invalid_argument("target byte must be in 0..15");
}

void CpaAccumulator::add(const aes::Block &ct, const double *row) {
    const std::size_t w = width();
    thread_local std::vector<double> x;
    x.resize(w);
    for (std::size_t s = 0; s < w; ++s) {
        const double v = row[s] - reference_[s];
        x[s] = v;
        sum_x_[s] += v;
        sum_xx_[s] += v * v;
    }
    for (int g = 0; g < 256; ++g) {
        const double h = aes::last_round_hd_hypothesis(ct, target_byte_, static_cast<std::uint8_t>(g)) - 4.0;
        sum_h_[g] += h;
        sum_hh_[g] += h * h;
        double *acc = &sum_hx_[g * w];
        for (std::size_t s = 0; s < w; ++s)
            acc[s] += h * x[s];
    }
    ++n_;
}

void CpaAccumulator::merge(const CpaAccumulator &other) {
    if (other.target_byte_ != target_byte_ || other.reference_ != reference_)
        throw std::invalid_argument("cannot merge CPA accumulators with different references");
    n_ += other.n_;
    for (int g = 0; g < 256; ++g) {
        sum_h_[g] += other.sum_h_[g];
        sum_hh_[g] += other.sum_hh_[g];
    }
    for (std::size_t s = 0; s < width(); ++s) {
        sum_x_[s] += other.sum_x_[s];
        sum_xx_[s] += other.sum_xx_[s];
    }
    for (std::size_t i = 0; i < sum_hx_.size(); ++i)
        sum_hx_[i] += other.sum_hx_[i];
}

std::vector<double> CpaAccumulator::correlations() const {
    const std::size_t w = width();
    const double n = static_cast<double>(n_);
    std::vector<double> var_x(w);
    for (std::size_t s = 0; s < w; ++s)
        var_x[s] = n * sum_xx_[s] - sum_x_[s] * sum_x_[s];
    std::vector<double> rho(256 * w, 0.0);
    for (int g = 0; g < 256; ++g) {
        const double var_h = n * sum_hh_[g] - sum_h_[g] * sum_h_[g];
        if (!(var_h > 0.0))
            continue;
        for (std::size_t s = 0; s < w; ++s) {
            if (!(var_x[s] > 0.0))
                continue;
            const double cov = n * sum_hx_[g * w + s] - sum_h_[g] * sum_x_[s];
            rho[g * w + s] = std::clamp(cov / std::sqrt(var_h * var_x[s]), -1.0, 1.0);
        }
    }
    return rho;
}

std::vector<std::size_t> CpaAccumulator::zero_variance_columns() const {
    std::vector<std::size_t> out;
    const double n = static_cast<double>(n_);
    for (std::size_t s = 0; s < width(); ++s) {
        const double var = n * sum_xx_[s] - sum_x_[s] * sum_x_[s];
        if (var <= 1e-12 * n * sum_xx_[s])
            out.push_back(s);
    }
    return out;
}

int key_rank(const std::array<double, 256> &peak, std::uint8_t correct) {
    int rank = 0;
    for (int g = 0; g < 256; ++g)
        if (g != correct && peak[g] >= peak[correct])
            ++rank;
    return rank;
}

ZeroVarianceColumns::ZeroVarianceColumns(std::vector<std::size_t> columns)
    : std::runtime_error([&] {
          std::string msg = "zero-variance sample columns:";
          for (std::size_t i = 0; i < columns.size() && i < 32; ++i)
              msg += " " + std::to_string(columns[i]);
          if (columns.size() > 32)
              msg += " ...";
          return msg;
      }()),
      columns_(std::move(columns)) {}

namespace {

std::array<double, 256> peaks(const std::vector<double> &rho, std::size_t width) {
    std::array<double, 256> p{};
    for (int g = 0; g < 256; ++g) {
        double m = 0.0;
        for (std::size_t s = 0; s < width; ++s)
            m = std::max(m, std::abs(rho[g * width + s]));
        p[g] = m;
    }
    return p;
}

std::uint8_t argmax(const std::array<double, 256> &p) {
    return static_cast<std::uint8_t>(std::max_element(p.begin(), p.end()) - p.begin());
}

CheckpointRank summarise(const std::array<double, 256> &p, std::size_t traces,
                         std::optional<std::uint8_t> correct) {
    CheckpointRank c;
    c.traces = traces;
    c.best_guess = argmax(p);
    const std::uint8_t reference = correct ? *correct : c.best_guess;
    if (correct)
        c.correct_rank = key_rank(p, *correct);
    c.correct_peak = p[reference];
    for (int g = 0; g < 256; ++g)
        if (g != reference)
            c.best_wrong_peak = std::max(c.best_wrong_peak, p[g]);
    return c;
}

} // namespace

StreamingCpa::StreamingCpa(const CpaOptions &options, std::size_t width)
    : options_(options), width_(width),
      next_checkpoint_(next_checkpoint(0, options.first_checkpoint, options.checkpoints_per_decade)) {
    if (options.target_byte < 0 || options.target_byte > 15)
        throw std::invalid_argument("target byte must be in 0..15");
    if (width == 0)
        throw std::invalid_argument("CPA window is empty");
    if (options_.chunk_size == 0)
        options_.chunk_size = 4096;
}

std::size_t StreamingCpa::count() const { return total_ ? total_->count() : 0; }

void StreamingCpa::record_checkpoint(const CpaAccumulator &acc) {
    curve_.push_back(summarise(peaks(acc.correlations(), width_), acc.count(), options_.correct_key));
}

void StreamingCpa::consume(const double *rows, const aes::Block *ciphertexts, std::size_t n) {
    if (options_.max_traces)
        n = std::min(n, options_.max_traces - std::min(options_.max_traces, count()));
    if (n == 0)
        return;
    if (!total_)
        total_.emplace(options_.target_byte, std::span<const double>(rows, width_));

    const std::size_t base = total_->count();
    const std::size_t chunk = options_.chunk_size;
    const std::size_t n_chunks = (n + chunk - 1) / chunk;

    struct ChunkOut {
        std::vector<CpaAccumulator> snapshots; // prefixes ending on a checkpoint
        std::optional<CpaAccumulator> acc;
    };
    std::vector<ChunkOut> outs(n_chunks);
    const std::size_t first_mark = next_checkpoint_;

    parallel_for(n_chunks, options_.workers, [&](std::size_t k) {
        const std::size_t b = k * chunk;
        const std::size_t e = std::min(n, b + chunk);
        ChunkOut &out = outs[k];
        out.acc.emplace(total_->empty_like());
        std::size_t mark = first_mark;
        while (mark <= base + b)
            mark = next_checkpoint(mark, options_.first_checkpoint, options_.checkpoints_per_decade);
        for (std::size_t i = b; i < e; ++i) {
            out.acc->add(ciphertexts[i], rows + i * width_);
            if (base + i + 1 == mark) {
                out.snapshots.push_back(*out.acc);
                mark = next_checkpoint(mark, options_.first_checkpoint, options_.checkpoints_per_decade);
            }
        }
    });

    for (auto &out : outs) {
        for (const auto &snap : out.snapshots) {
            CpaAccumulator prefix = *total_;
            prefix.merge(snap);
            record_checkpoint(prefix);
        }
        total_->merge(*out.acc);
    }
    while (next_checkpoint_ <= total_->count())
        next_checkpoint_ = next_checkpoint(next_checkpoint_, options_.first_checkpoint, options_.checkpoints_per_decade);
}

AttackResult StreamingCpa::finish(std::vector<double> axis) {
    if (count() < 256)
        throw std::invalid_argument("CPA needs at least 256 traces, got " + std::to_string(count()));
    if (auto zero = total_->zero_variance_columns(); !zero.empty())
        throw ZeroVarianceColumns(std::move(zero));
    AttackResult r;
    r.target_byte = options_.target_byte;
    r.n_traces = count();
    r.width = width_;
    if (axis.empty())
        for (std::size_t s = 0; s < width_; ++s)
            axis.push_back(static_cast<double>(s));
    r.axis = std::move(axis);
    r.correlations = total_->correlations();
    r.peak = peaks(r.correlations, width_);
    r.correct_key = options_.correct_key;
    r.best_guess = argmax(r.peak);
    if (r.correct_key)
        r.key_rank = key_rank(r.peak, *r.correct_key);
    r.recovered_key_bytes = {r.best_guess};
    r.mtd_curve = curve_;
    if (r.mtd_curve.empty() || r.mtd_curve.back().traces != r.n_traces)
        r.mtd_curve.push_back(summarise(r.peak, r.n_traces, r.correct_key));
    r.averaging = options_.averaging;
    return r;
}

bool average_repeats(TraceSet &set, int averaging) {
    if (averaging <= 1 || set.size() == 0 || set.size() % static_cast<std::size_t>(averaging) != 0)
        return false;
    const std::size_t a = static_cast<std::size_t>(averaging);
    for (std::size_t g = 0; g < set.size(); g += a)
        for (std::size_t j = 1; j < a; ++j)
            if (set.plaintexts[g + j] != set.plaintexts[g])
                return false;
    TraceSet out(set.n_samples, set.sample_rate_hz);
    out.metadata = set.metadata;
    out.reserve(set.size() / a);
    std::vector<double> mean(set.n_samples);
    for (std::size_t g = 0; g < set.size(); g += a) {
        std::fill(mean.begin(), mean.end(), 0.0);
        for (std::size_t j = 0; j < a; ++j) {
            auto row = set.trace(g + j);
            for (std::size_t s = 0; s < set.n_samples; ++s)
                mean[s] += row[s];
        }
        for (double &v : mean)
            v /= static_cast<double>(a);
        out.append(set.plaintexts[g], set.ciphertexts[g], std::span<const double>(mean));
    }
    set = std::move(out);
    return true;
}

std::pair<std::size_t, std::size_t> final_round_window(std::size_t n_samples) {
    if (n_samples >= 16 && n_samples % 16 == 0)
        return {n_samples / 16 * 14, n_samples};
    return {0, n_samples};
}

namespace {

AttackResult run_cpa(const TraceSet &traces, const CpaOptions &options) {
    traces.validate();
    const TraceSet *set = &traces;
    TraceSet averaged;
    bool applied = false;
    if (options.averaging > 1) {
        averaged = traces;
        applied = average_repeats(averaged, options.averaging);
        if (applied)
            set = &averaged;
    }
    const auto [begin, end] = options.window.value_or(final_round_window(set->n_samples));
    if (begin >= end || end > set->n_samples)
        throw std::invalid_argument("CPA window outside the trace");
    const std::size_t width = end - begin;
    std::size_t n = set->size();
    if (options.max_traces)
        n = std::min(n, options.max_traces);

    StreamingCpa cpa(options, width);
    const std::size_t batch = 65536;
    std::vector<double> rows;
    for (std::size_t b = 0; b < n; b += batch) {
        const std::size_t m = std::min(batch, n - b);
        rows.resize(m * width);
        for (std::size_t i = 0; i < m; ++i) {
            auto row = set->trace(b + i);
            std::copy(row.begin() + static_cast<std::ptrdiff_t>(begin), row.begin() + static_cast<std::ptrdiff_t>(end),
                      rows.begin() + static_cast<std::ptrdiff_t>(i * width));
        }
        cpa.consume(rows.data(), set->ciphertexts.data() + b, m);
    }
    std::vector<double> axis;
    for (std::size_t s = begin; s < end; ++s)
        axis.push_back(static_cast<double>(s));
    AttackResult r = cpa.finish(std::move(axis));
    r.averaging_applied = applied;
    return r;
}

} // namespace

AttackResult cpa_attack(const TraceSet &traces, const CpaOptions &options) { return run_cpa(traces, options); }

AttackResult cema_attack(const TraceSet &em_traces, const CpaOptions &options) { return run_cpa(em_traces, options); }

std::size_t next_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p < n)
        p <<= 1;
    return p;
}

std::vector<double> magnitude_spectrum(std::span<const double> x) {
    const std::size_t n = next_power_of_two(std::max<std::size_t>(x.size(), 1));
    std::vector<std::complex<double>> buf(n);
    for (std::size_t i = 0; i < x.size(); ++i)
        buf[i] = x[i];
    const auto spec = fft::forward(buf);
    std::vector<double> mag(n / 2 + 1);
    for (std::size_t k = 0; k < mag.size(); ++k)
        mag[k] = std::abs(spec[k]);
    return mag;
}

AttackResult spectral_cpa(const TraceSet &traces, const SpectralOptions &options) {
    traces.validate();
    if (!(traces.sample_rate_hz > 0.0))
        throw std::invalid_argument("spectral CPA needs the sample rate");
    const double nyquist = 0.5 * traces.sample_rate_hz;
    if (options.f_hi > nyquist)
        throw std::invalid_argument("f_hi is above the Nyquist frequency");
    if (options.f_lo < 0.0 || options.f_lo > options.f_hi)
        throw std::invalid_argument("need 0 <= f_lo <= f_hi");
    const std::size_t padded = next_power_of_two(std::max<std::size_t>(traces.n_samples, 1));
    const double bin_hz = traces.sample_rate_hz / static_cast<double>(padded);
    std::vector<std::size_t> bins;
    std::vector<double> axis;
    for (std::size_t k = 0; k <= padded / 2; ++k) {
        const double f = static_cast<double>(k) * bin_hz;
        if (f >= options.f_lo && f <= options.f_hi) {
            bins.push_back(k);
            axis.push_back(f);
        }
    }
    if (bins.empty())
        throw std::invalid_argument("no frequency bins in the requested band");

    CpaOptions cpa_options;
    cpa_options.target_byte = options.target_byte;
    cpa_options.correct_key = options.correct_key;
    cpa_options.workers = options.workers;
    std::size_t n = traces.size();
    if (options.max_traces)
        n = std::min(n, options.max_traces);
    StreamingCpa cpa(cpa_options, bins.size());
    const std::size_t batch = 16384;
    std::vector<double> rows;
    for (std::size_t b = 0; b < n; b += batch) {
        const std::size_t m = std::min(batch, n - b);
        rows.assign(m * bins.size(), 0.0);
        parallel_for(m, options.workers, [&](std::size_t i) {
            auto row = traces.trace(b + i);
            std::vector<double> x(row.begin(), row.end());
            const auto mag = magnitude_spectrum(x);
            for (std::size_t j = 0; j < bins.size(); ++j)
                rows[i * bins.size() + j] = mag[bins[j]];
        });
        cpa.consume(rows.data(), traces.ciphertexts.data() + b, m);
    }
    return cpa.finish(std::move(axis));
}

void WelfordColumns::add(const double *row) {
    ++n_;
    const double inv = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < mean_.size(); ++i) {
        const double delta = row[i] - mean_[i];
        mean_[i] += delta * inv;
        m2_[i] += delta * (row[i] - mean_[i]);
    }
}

void WelfordColumns::add(std::span<const float> row) {
    ++n_;
    const double inv = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < mean_.size(); ++i) {
        const double x = row[i];
        const double delta = x - mean_[i];
        mean_[i] += delta * inv;
        m2_[i] += delta * (x - mean_[i]);
    }
}

void WelfordColumns::merge(const WelfordColumns &other) {
    if (other.width() != width())
        throw std::invalid_argument("cannot merge accumulators of different width");
    if (other.n_ == 0)
        return;
    if (n_ == 0) {
        *this = other;
        return;
    }
    const double na = static_cast<double>(n_);
    const double nb = static_cast<double>(other.n_);
    const double n = na + nb;
    for (std::size_t i = 0; i < mean_.size(); ++i) {
        const double delta = other.mean_[i] - mean_[i];
        mean_[i] += delta * nb / n;
        m2_[i] += other.m2_[i] + delta * delta * na * nb / n;
    }
    n_ += other.n_;
}

std::vector<double> welch_t(const WelfordColumns &fixed, const WelfordColumns &random) {
    if (fixed.count() < 2 || random.count() < 2)
        throw std::invalid_argument("Welch's t-test needs at least two traces per class");
    if (fixed.width() != random.width())
        throw std::invalid_argument("TVLA classes have different trace lengths");
    std::vector<double> t(fixed.width());
    const double nf = static_cast<double>(fixed.count());
    const double nr = static_cast<double>(random.count());
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double num = fixed.mean(i) - random.mean(i);
        if (num == 0.0) {
            t[i] = 0.0;
            continue;
        }
        const double den = std::sqrt(fixed.variance(i) / nf + random.variance(i) / nr);
        t[i] = den > 0.0 ? num / den : std::copysign(std::numeric_limits<double>::infinity(), num);
    }
    return t;
}

namespace {

double max_abs(const std::vector<double> &v) {
    double m = 0.0;
    for (double x : v)
        m = std::max(m, std::abs(x));
    return m;
}

} // namespace

namespace {
constexpr std::size_t kFirstCheckpoint = 8; // per class
} // namespace

StreamingTvla::StreamingTvla(std::size_t width, double threshold)
    : threshold_(threshold), fixed_(width), random_(width), next_(next_checkpoint(0, kFirstCheckpoint, 10)) {}

void StreamingTvla::add_fixed(std::span<const float> row) {
    fixed_.add(row);
    maybe_checkpoint();
}

void StreamingTvla::add_random(std::span<const float> row) {
    random_.add(row);
    maybe_checkpoint();
}

void StreamingTvla::maybe_checkpoint() {
    const std::size_t m = std::min(fixed_.count(), random_.count());
    if (m < next_ || fixed_.count() != random_.count())
        return;
    curve_.emplace_back(2 * m, max_abs(welch_t(fixed_, random_)));
    next_ = next_checkpoint(m, kFirstCheckpoint, 10);
}

TvlaResult StreamingTvla::finish() const {
    TvlaResult r;
    r.t_values = welch_t(fixed_, random_);
    r.max_abs_t = max_abs(r.t_values);
    r.max_t_curve = curve_;
    const std::size_t total = fixed_.count() + random_.count();
    if (r.max_t_curve.empty() || r.max_t_curve.back().first != total)
        r.max_t_curve.emplace_back(total, r.max_abs_t);
    // Leakage counts as found from the first checkpoint after which every
    // later one stays above the threshold.
    for (auto it = r.max_t_curve.rbegin(); it != r.max_t_curve.rend() && it->second > threshold_; ++it)
        r.first_leaky_trace_count = it->first;
    return r;
}

TvlaResult tvla(const TraceSet &fixed, const TraceSet &random, double threshold) {
    fixed.validate();
    random.validate();
    if (fixed.size() < 2 || random.size() < 2)
        throw std::invalid_argument("TVLA needs at least two traces in each set");
    if (fixed.n_samples != random.n_samples)
        throw std::invalid_argument("TVLA sets have different trace lengths");
    StreamingTvla t(fixed.n_samples, threshold);
    const std::size_t n = std::max(fixed.size(), random.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (i < fixed.size())
            t.add_fixed(fixed.trace(i));
        if (i < random.size())
            t.add_random(random.trace(i));
    }
    return t.finish();
}

MtdEstimate estimate_mtd(const std::vector<AttackResult> &repeats, std::size_t max_traces) {
    const int n_repeats = static_cast<int>(repeats.size());
    if (n_repeats < 3)
        throw std::invalid_argument("MTD estimation needs at least 3 repeats");
    MtdEstimate est;
    est.max_traces = max_traces;
    est.n_repeats = n_repeats;
    std::vector<std::size_t> candidates;
    std::vector<std::size_t> stable_from(repeats.size(), std::numeric_limits<std::size_t>::max());
    for (std::size_t r = 0; r < repeats.size(); ++r) {
        const auto &curve = repeats[r].mtd_curve;
        est.final_ranks.push_back(repeats[r].key_rank);
        std::size_t from = std::numeric_limits<std::size_t>::max();
        for (auto it = curve.rbegin(); it != curve.rend(); ++it) {
            if (it->traces > max_traces)
                continue;
            if (it->correct_rank != 0)
                break;
            from = it->traces;
        }
        stable_from[r] = from;
        for (const auto &c : curve)
            if (c.traces <= max_traces)
                candidates.push_back(c.traces);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (std::size_t c : candidates) {
        const auto ok = std::count_if(stable_from.begin(), stable_from.end(), [c](std::size_t f) { return f <= c; });
        if (ok >= n_repeats - 1) {
            est.mtd = c;
            break;
        }
    }
    return est;
}

MtdEstimate estimate_mtd(const std::function<AttackResult(int repeat)> &attack, std::size_t max_traces,
                         int n_repeats) {
    if (n_repeats < 3)
        throw std::invalid_argument("MTD estimation needs at least 3 repeats");
    std::vector<AttackResult> repeats;
    for (int r = 0; r < n_repeats; ++r)
        repeats.push_back(attack(r));
    return estimate_mtd(repeats, max_traces);
}

} // namespace attenlab::sca
