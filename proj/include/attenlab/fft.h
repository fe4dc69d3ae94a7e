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

#include <complex>
#include <vector>

namespace attenlab::fft {

/// Discrete Fourier transform via FFTW. The input length must be a power
/// of two; callers zero-pad. The inverse is scaled by 1/N.
std::vector<std::complex<double>> forward(const std::vector<std::complex<double>> &x);
std::vector<std::complex<double>> inverse(const std::vector<std::complex<double>> &x);

} // namespace attenlab::fft
