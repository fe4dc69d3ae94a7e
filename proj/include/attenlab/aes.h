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

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace attenlab::aes {

using Block = std::array<std::uint8_t, 16>;
using Key256 = std::array<std::uint8_t, 32>;

constexpr int kRounds = 14;
constexpr int kStates = kRounds + 1;

/// Every register value of one encryption: state 0 is the output of the
/// initial AddRoundKey, state r the output of round r, state 14 the
/// ciphertext. Bytes are in column-major order.
struct StateTrace {
    std::array<Block, kStates> round_states{};
    Block plaintext{};
    Block ciphertext{};
};

/// AES-256 with the key schedule expanded once.
class Aes256 {
  public:
    explicit Aes256(const Key256 &key);

    StateTrace trace(const Block &plaintext) const;
    Block encrypt(const Block &plaintext) const;

    const Block &round_key(int round) const { return round_keys_[round]; }

  private:
    std::array<Block, kStates> round_keys_{};
};

StateTrace encrypt(const Key256 &key, const Block &plaintext);

std::uint8_t sbox(std::uint8_t x);
std::uint8_t inv_sbox(std::uint8_t x);

/// Position in the round-13 state that ShiftRows moves to ciphertext byte
/// `byte_index`.
int shift_rows_source(int byte_index);

/// Hamming distance between the round-13 register byte recovered from
/// `ct` under `key_guess` and the ciphertext byte that overwrites it.
int last_round_hd_hypothesis(const Block &ct, int byte_index, std::uint8_t key_guess);

/// The byte of the last round key that a last-round attack on
/// `byte_index` recovers.
std::uint8_t last_round_key_byte(const Aes256 &cipher, int byte_index);

Key256 parse_key(std::string_view hex);
std::string to_hex(const std::uint8_t *data, std::size_t n);

} // namespace attenlab::aes
