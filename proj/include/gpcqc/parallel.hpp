// Copyright 2026 The gpcqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GPCQC_PARALLEL_HPP
#define GPCQC_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace gpcqc {

/// Caps the number of worker threads used by the library (0 = hardware concurrency).
void set_max_threads(std::size_t threads);
std::size_t max_threads();

/// Calls body(i) for every i in [0, count). Iterations are distributed over
/// worker threads in contiguous blocks; body must only write to state owned by
/// index i, so results do not depend on the worker count. The first exception
/// thrown by any iteration is rethrown on the calling thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t)> &body);

}  // namespace gpcqc

#endif  // GPCQC_PARALLEL_HPP
