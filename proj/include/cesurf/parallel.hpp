// Copyright 2026 The ce-surf Authors.
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


#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace cesurf {

/// Caps the number of worker threads used by row-parallel kernels.
/// 0 selects std::thread::hardware_concurrency().
void set_max_threads(unsigned count);
unsigned max_threads();

/// Reads CE_SURF_THREADS and applies it; unset or unparsable means auto.
void configure_threads_from_env();

/// Runs fn(row) for every row in [0, rows). Rows are split into contiguous
/// chunks, so fn must only write data owned by its row.
template <typename Fn>
void parallel_for_rows(std::size_t rows, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(max_threads(), std::max<std::size_t>(rows / 16, 1));
  if (workers <= 1) {
    for (std::size_t r = 0; r < rows; ++r) fn(r);
    return;
  }
  const std::size_t chunk = (rows + workers - 1) / workers;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(rows, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&fn, begin, end] {
      for (std::size_t r = begin; r < end; ++r) fn(r);
    });
  }
}

}  // namespace cesurf
