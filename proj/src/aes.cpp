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

#include "attenlab/aes.h"

#include <bit>
#include <stdexcept>

namespace attenlab::aes {

namespace {

constexpr std::uint8_t xtime(std::uint8_t x) {
    return static_cast<std::uint8_t>((x << 1) ^ ((x & 0x80) ? 0x1b : 0x00));
}

constexpr std::uint8_t gf_mul(std::uint8_t a, std::uint8_t b) {
    std::uint8_t r = 0;
    while (b) {
        if (b & 1)
            r ^= a;
        a = xtime(a);
        b >>= 1;
    }
    return r;
}

constexpr std::array<std::uint8_t, 256> make_sbox() {
    std::array<std::uint8_t, 256> s{};
    for (int x = 0; x < 256; ++x) {
        // Multiplicative inverse by exhaustive search, then the affine map.
        std::uint8_t inv = 0;
        for (int y = 1; y < 256 && x != 0; ++y)
            if (gf_mul(static_cast<std::uint8_t>(x), static_cast<std::uint8_t>(y)) == 1) {
                inv = static_cast<std::uint8_t>(y);
                break;
            }
        std::uint8_t b = inv;
        std::uint8_t r = b;
        for (int i = 1; i <= 4; ++i)
            r ^= static_cast<std::uint8_t>((b << i) | (b >> (8 - i)));
        s[x] = r ^ 0x63;
    }
    return s;
}

constexpr std::array<std::uint8_t, 256> kSbox = make_sbox();

constexpr std::array<std::uint8_t, 256> make_inv_sbox() {
    std::array<std::uint8_t, 256> s{};
    for (int x = 0; x < 256; ++x)
        s[kSbox[x]] = static_cast<std::uint8_t>(x);
    return s;
}

constexpr std::array<std::uint8_t, 256> kInvSbox = make_inv_sbox();

void sub_shift(Block &s) {
    Block t;
    for (int i = 0; i < 16; ++i)
        t[i] = kSbox[s[shift_rows_source(i)]];
    s = t;
}

void mix_columns(Block &s) {
    for (int c = 0; c < 4; ++c) {
        std::uint8_t *col = &s[4 * c];
        const std::uint8_t a0 = col[0], a1 = col[1], a2 = col[2], a3 = col[3];
        const std::uint8_t all = a0 ^ a1 ^ a2 ^ a3;
        col[0] ^= all ^ xtime(a0 ^ a1);
        col[1] ^= all ^ xtime(a1 ^ a2);
        col[2] ^= all ^ xtime(a2 ^ a3);
        col[3] ^= all ^ xtime(a3 ^ a0);
    }
}

void add_key(Block &s, const Block &k) {
    for (int i = 0; i < 16; ++i)
        s[i] ^= k[i];
}

int hex_value(char c) {
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}

} // namespace

std::uint8_t sbox(std::uint8_t x) { return kSbox[x]; }
std::uint8_t inv_sbox(std::uint8_t x) { return kInvSbox[x]; }

int shift_rows_source(int byte_index) {
    const int row = byte_index % 4;
    const int col = byte_index / 4;
    return row + 4 * ((col + row) % 4);
}

Aes256::Aes256(const Key256 &key) {
    std::array<std::uint8_t, 16 * kStates> w{};
    for (int i = 0; i < 32; ++i)
        w[i] = key[i];
    std::uint8_t rcon = 1;
    for (int i = 8; i < 4 * kStates; ++i) {
        std::array<std::uint8_t, 4> t{w[4 * i - 4], w[4 * i - 3], w[4 * i - 2], w[4 * i - 1]};
        if (i % 8 == 0) {
            t = {static_cast<std::uint8_t>(kSbox[t[1]] ^ rcon), kSbox[t[2]], kSbox[t[3]], kSbox[t[0]]};
            rcon = xtime(rcon);
        } else if (i % 8 == 4) {
            for (auto &b : t)
                b = kSbox[b];
        }
        for (int j = 0; j < 4; ++j)
            w[4 * i + j] = w[4 * (i - 8) + j] ^ t[j];
    }
    for (int r = 0; r < kStates; ++r)
        for (int j = 0; j < 16; ++j)
            round_keys_[r][j] = w[16 * r + j];
}

StateTrace Aes256::trace(const Block &plaintext) const {
    StateTrace out;
    out.plaintext = plaintext;
    Block s = plaintext;
    add_key(s, round_keys_[0]);
    out.round_states[0] = s;
    for (int r = 1; r <= kRounds; ++r) {
        sub_shift(s);
        if (r != kRounds)
            mix_columns(s);
        add_key(s, round_keys_[r]);
        out.round_states[r] = s;
    }
    out.ciphertext = s;
    return out;
}

Block Aes256::encrypt(const Block &plaintext) const { return trace(plaintext).ciphertext; }

StateTrace encrypt(const Key256 &key, const Block &plaintext) { return Aes256(key).trace(plaintext); }

int last_round_hd_hypothesis(const Block &ct, int byte_index, std::uint8_t key_guess) {
    const std::uint8_t before = kInvSbox[ct[byte_index] ^ key_guess];
    return std::popcount(static_cast<unsigned>(before ^ ct[shift_rows_source(byte_index)]));
}

std::uint8_t last_round_key_byte(const Aes256 &cipher, int byte_index) {
    return cipher.round_key(kRounds)[byte_index];
}

Key256 parse_key(std::string_view hex) {
    std::string digits;
    for (char c : hex)
        if (c != ' ' && c != ':')
            digits.push_back(c);
    if (digits.size() != 64)
        throw std::invalid_argument("AES-256 key needs 64 hex digits, got " + std::to_string(digits.size()));
    Key256 key{};
    for (int i = 0; i < 32; ++i) {
        const int hi = hex_value(digits[2 * i]);
        const int lo = hex_value(digits[2 * i + 1]);
        if (hi < 0 || lo < 0)
            throw std::invalid_argument("invalid hex digit in key");
        key[i] = static_cast<std::uint8_t>(hi * 16 + lo);
    }
    return key;
}

std::string to_hex(const std::uint8_t *data, std::size_t n) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string s;
    s.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        s.push_back(kDigits[data[i] >> 4]);
        s.push_back(kDigits[data[i] & 15]);
    }
    return s;
}

} // namespace attenlab::aes
