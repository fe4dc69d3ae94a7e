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

#include "attenlab/fft.h"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace attenlab::fft {

namespace {

// FFTW planning is not thread-safe; executing a plan on new arrays is.
// FFTW_ESTIMATE keeps the chosen algorithm, and so the result bits, fixed.
std::mutex plan_mutex;

fftw_plan plan_for(std::size_t n, int sign) {
    static std::map<std::pair<std::size_t, int>, fftw_plan> plans;
    std::lock_guard lock(plan_mutex);
    auto it = plans.find({n, sign});
    if (it != plans.end())
        return it->second;
    auto *in = fftw_alloc_complex(n);
    auto *out = fftw_alloc_complex(n);
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    plans.emplace(std::make_pair(n, sign), p);
    return p;
}

std::vector<std::complex<double>> transform(const std::vector<std::complex<double>> &x, int sign) {
    const std::size_t n = x.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("transform length must be a power of two");
    std::vector<std::complex<double>> in(x);
    std::vector<std::complex<double>> out(n);
    fftw_execute_dft(plan_for(n, sign), reinterpret_cast<fftw_complex *>(in.data()),
                     reinterpret_cast<fftw_complex *>(out.data()));
    return out;
}

} // namespace

std::vector<std::complex<double>> forward(const std::vector<std::complex<double>> &x) {
    return transform(x, FFTW_FORWARD);
}

std::vector<std::complex<double>> inverse(const std::vector<std::complex<double>> &x) {
    auto out = transform(x, FFTW_BACKWARD);
    const double scale = 1.0 / static_cast<double>(x.size());
    for (auto &v : out)
        v *= scale;
    return out;
}

} // namespace attenlab::fft
