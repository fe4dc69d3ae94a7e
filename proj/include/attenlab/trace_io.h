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

#include "attenlab/sca.h"

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace attenlab::io {

/// On-disk header, all fields little-endian:
///   magic "RSTL" | u16 version | u32 n_traces | u32 n_samples | u8 dtype |
///   u8 pt_len | u8 ct_len | f64 sample_rate_hz | 8 reserved zero bytes
/// followed by n_traces records of pt | ct | n_samples f32.
struct TraceFileHeader {
    std::uint16_t version = 1;
    std::uint32_t n_traces = 0;
    std::uint32_t n_samples = 0;
    std::uint8_t sample_dtype = 0;
    std::uint8_t pt_len = 16;
    std::uint8_t ct_len = 16;
    double sample_rate_hz = 0.0;

    static constexpr std::size_t kSize = 33;
    std::uint64_t record_size() const { return pt_len + ct_len + 4ULL * n_samples; }
    std::uint64_t file_size() const { return kSize + record_size() * n_traces; }
};

class TraceFormatError : public std::runtime_error {
  public:
    enum class Kind { io, bad_magic, unsupported_version, unsupported_dtype, size_mismatch, non_finite, too_large };

    TraceFormatError(Kind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

  private:
    Kind kind_;
};

void write_traces(const std::string &path, const sca::TraceSet &set);
sca::TraceSet read_traces(const std::string &path);

/// Appends traces to a file; the header trace count is fixed up on close.
class TraceWriter {
  public:
    TraceWriter(const std::string &path, std::uint32_t n_samples, double sample_rate_hz);
    ~TraceWriter();
    TraceWriter(const TraceWriter &) = delete;
    TraceWriter &operator=(const TraceWriter &) = delete;

    void append(const aes::Block &pt, const aes::Block &ct, const float *samples);
    void append(const sca::TraceSet &set);
    void close();
    std::uint32_t count() const { return header_.n_traces; }

  private:
    std::string path_;
    std::ofstream out_;
    TraceFileHeader header_;
    bool open_ = false;
};

/// Sequential reader over a trace file.
class TraceReader {
  public:
    explicit TraceReader(const std::string &path);

    const TraceFileHeader &header() const { return header_; }
    std::size_t remaining() const { return header_.n_traces - position_; }
    /// Reads up to `max_count` traces; returns an empty set at the end.
    sca::TraceSet read(std::size_t max_count);

  private:
    std::string path_;
    std::ifstream in_;
    TraceFileHeader header_;
    std::size_t position_ = 0;
};

/// Flat "key = value" document; keys keep insertion order.
class RunReport {
  public:
    void set(const std::string &key, const std::string &value);
    void set(const std::string &key, const char *value) { set(key, std::string(value)); }
    void set(const std::string &key, double value);
    void set(const std::string &key, long long value);
    void set(const std::string &key, int value) { set(key, static_cast<long long>(value)); }
    void set(const std::string &key, std::size_t value) { set(key, static_cast<long long>(value)); }
    void set(const std::string &key, bool value) { set(key, std::string(value ? "true" : "false")); }

    const std::string *get(const std::string &key) const;
    const std::vector<std::pair<std::string, std::string>> &entries() const { return entries_; }
    std::string str() const;
    void write(const std::string &path) const;
    static RunReport parse(const std::string &text);

  private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

/// Shortest round-trip decimal form of a double.
std::string format_number(double value);

/// CSV output with a header row, '.' decimals and LF line endings.
class CsvWriter {
  public:
    CsvWriter(const std::string &path, const std::vector<std::string> &header);
    void row(const std::vector<double> &values);
    void row(const std::vector<std::string> &values);
    void close();

  private:
    std::ofstream out_;
    std::size_t columns_;
};

} // namespace attenlab::io
