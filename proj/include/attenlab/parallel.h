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

#include <cstddef>
#include <functional>

namespace attenlab {

/// Worker count from ATTENLAB_WORKERS, else the hardware concurrency.
unsigned default_workers();

/// Calls body(i) once for every i in [0, n) across `workers` threads
/// (0 selects the default). The first exception thrown is rethrown.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)> &body);

} // namespace attenlab
