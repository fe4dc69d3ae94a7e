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

#include "attenlab/trace_io.h"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <limits>
#include <sstream>

namespace attenlab::io {

static_assert(std::endian::native == std::endian::little, "trace files are written with native little-endian stores");

namespace {

constexpr std::array<char, 4> kMagic{'R', 'S', 'T', 'L'};

template <typename T> void put(char *&p, T v) {
    std::memcpy(p, &v, sizeof(T));
    p += sizeof(T);
}

template <typename T> T get(const char *&p) {
    T v;
    std::memcpy(&v, p, sizeof(T));
    p += sizeof(T);
    return v;
}

std::array<char, TraceFileHeader::kSize> encode(const TraceFileHeader &h) {
    std::array<char, TraceFileHeader::kSize> buf{};
    char *p = buf.data();
    std::memcpy(p, kMagic.data(), 4);
    p += 4;
    put(p, h.version);
    put(p, h.n_traces);
    put(p, h.n_samples);
    put(p, h.sample_dtype);
    put(p, h.pt_len);
    put(p, h.ct_len);
    put(p, h.sample_rate_hz);
    return buf; // reserved bytes stay zero
}

void check_size(std::uint64_t n_traces, std::uint64_t n_samples) {
    if (n_traces > std::numeric_limits<std::uint32_t>::max() || n_samples > std::numeric_limits<std::uint32_t>::max() ||
        n_traces * n_samples > std::numeric_limits<std::uint32_t>::max())
        throw TraceFormatError(TraceFormatError::Kind::too_large, "trace set exceeds 32-bit record addressing");
}

void check_finite(const float *x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(x[i]))
            throw TraceFormatError(TraceFormatError::Kind::non_finite, "trace samples must be finite");
}

} // namespace

void write_traces(const std::string &path, const sca::TraceSet &set) {
    set.validate();
    TraceWriter w(path, static_cast<std::uint32_t>(set.n_samples), set.sample_rate_hz);
    w.append(set);
    w.close();
}

sca::TraceSet read_traces(const std::string &path) {
    TraceReader r(path);
    return r.read(r.remaining());
}

TraceWriter::TraceWriter(const std::string &path, std::uint32_t n_samples, double sample_rate_hz)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_)
        throw TraceFormatError(TraceFormatError::Kind::io, "cannot open " + path + " for writing");
    header_.n_samples = n_samples;
    header_.sample_rate_hz = sample_rate_hz;
    const auto buf = encode(header_);
    out_.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    open_ = true;
}

TraceWriter::~TraceWriter() {
    if (open_) {
        try {
            close();
        } catch (...) {
        }
    }
}

void TraceWriter::append(const aes::Block &pt, const aes::Block &ct, const float *samples) {
    check_size(static_cast<std::uint64_t>(header_.n_traces) + 1, header_.n_samples);
    check_finite(samples, header_.n_samples);
    out_.write(reinterpret_cast<const char *>(pt.data()), 16);
    out_.write(reinterpret_cast<const char *>(ct.data()), 16);
    out_.write(reinterpret_cast<const char *>(samples), static_cast<std::streamsize>(4ULL * header_.n_samples));
    if (!out_)
        throw TraceFormatError(TraceFormatError::Kind::io, "write failed on " + path_);
    ++header_.n_traces;
}

void TraceWriter::append(const sca::TraceSet &set) {
    if (set.n_samples != header_.n_samples)
        throw std::invalid_argument("trace length does not match the file");
    check_size(static_cast<std::uint64_t>(header_.n_traces) + set.size(), header_.n_samples);
    check_finite(set.samples.data(), set.samples.size());
    for (std::size_t i = 0; i < set.size(); ++i)
        append(set.plaintexts[i], set.ciphertexts[i], set.samples.data() + i * set.n_samples);
}

void TraceWriter::close() {
    if (!open_)
        return;
    open_ = false;
    const auto buf = encode(header_);
    out_.seekp(0);
    out_.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    out_.close();
    if (!out_)
        throw TraceFormatError(TraceFormatError::Kind::io, "write failed on " + path_);
}

TraceReader::TraceReader(const std::string &path) : path_(path), in_(path, std::ios::binary) {
    using Kind = TraceFormatError::Kind;
    if (!in_)
        throw TraceFormatError(Kind::io, "cannot open " + path);
    std::error_code ec;
    const auto actual = std::filesystem::file_size(path, ec);
    if (ec)
        throw TraceFormatError(Kind::io, "cannot stat " + path);
    std::array<char, TraceFileHeader::kSize> buf{};
    in_.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (in_.gcount() < 4 || std::memcmp(buf.data(), kMagic.data(), 4) != 0)
        throw TraceFormatError(Kind::bad_magic, path + ": not a trace file (bad magic)");
    if (in_.gcount() != static_cast<std::streamsize>(buf.size()))
        throw TraceFormatError(Kind::size_mismatch, path + ": truncated header");
    const char *p = buf.data() + 4;
    header_.version = get<std::uint16_t>(p);
    header_.n_traces = get<std::uint32_t>(p);
    header_.n_samples = get<std::uint32_t>(p);
    header_.sample_dtype = get<std::uint8_t>(p);
    header_.pt_len = get<std::uint8_t>(p);
    header_.ct_len = get<std::uint8_t>(p);
    header_.sample_rate_hz = get<double>(p);
    if (header_.version != 1)
        throw TraceFormatError(Kind::unsupported_version,
                               path + ": unsupported version " + std::to_string(header_.version));
    if (header_.sample_dtype != 0)
        throw TraceFormatError(Kind::unsupported_dtype,
                               path + ": unsupported sample type " + std::to_string(header_.sample_dtype));
    if (header_.pt_len != 16 || header_.ct_len != 16)
        throw TraceFormatError(Kind::size_mismatch, path + ": plaintext and ciphertext must be 16 bytes");
    if (actual != header_.file_size())
        throw TraceFormatError(Kind::size_mismatch, path + ": file is " + std::to_string(actual) +
                                                        " bytes but the header declares " +
                                                        std::to_string(header_.file_size()));
}

sca::TraceSet TraceReader::read(std::size_t max_count) {
    const std::size_t n = std::min(max_count, remaining());
    sca::TraceSet set(header_.n_samples, header_.sample_rate_hz);
    set.reserve(n);
    set.samples.resize(n * header_.n_samples);
    set.plaintexts.resize(n);
    set.ciphertexts.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        in_.read(reinterpret_cast<char *>(set.plaintexts[i].data()), 16);
        in_.read(reinterpret_cast<char *>(set.ciphertexts[i].data()), 16);
        in_.read(reinterpret_cast<char *>(set.samples.data() + i * header_.n_samples),
                 static_cast<std::streamsize>(4ULL * header_.n_samples));
        if (!in_)
            throw TraceFormatError(TraceFormatError::Kind::size_mismatch, path_ + ": truncated record");
    }
    position_ += n;
    return set;
}

std::string format_number(double value) {
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, end);
}

void RunReport::set(const std::string &key, const std::string &value) {
    for (auto &[k, v] : entries_)
        if (k == key) {
            v = value;
            return;
        }
    entries_.emplace_back(key, value);
}

void RunReport::set(const std::string &key, double value) { set(key, format_number(value)); }

void RunReport::set(const std::string &key, long long value) { set(key, std::to_string(value)); }

const std::string *RunReport::get(const std::string &key) const {
    for (const auto &[k, v] : entries_)
        if (k == key)
            return &v;
    return nullptr;
}

std::string RunReport::str() const {
    std::string s;
    for (const auto &[k, v] : entries_)
        s += k + " = " + v + "\n";
    return s;
}

void RunReport::write(const std::string &path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << str();
    if (!out)
        throw std::runtime_error("cannot write report " + path);
}

RunReport RunReport::parse(const std::string &text) {
    RunReport r;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const auto eq = line.find(" = ");
        if (eq != std::string::npos)
            r.entries_.emplace_back(line.substr(0, eq), line.substr(eq + 3));
    }
    return r;
}

CsvWriter::CsvWriter(const std::string &path, const std::vector<std::string> &header)
    : out_(path, std::ios::binary | std::ios::trunc), columns_(header.size()) {
    if (!out_)
        throw std::runtime_error("cannot open " + path + " for writing");
    row(header);
}

void CsvWriter::row(const std::vector<std::string> &values) {
    if (values.size() != columns_)
        throw std::invalid_argument("CSV row has the wrong number of columns");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i)
            out_ << ',';
        out_ << values[i];
    }
    out_ << '\n';
}

void CsvWriter::row(const std::vector<double> &values) {
    std::vector<std::string> s;
    s.reserve(values.size());
    for (double v : values)
        s.push_back(format_number(v));
    row(s);
}

void CsvWriter::close() {
    out_.close();
    if (!out_)
        throw std::runtime_error("CSV write failed");
}

} // namespace attenlab::io
