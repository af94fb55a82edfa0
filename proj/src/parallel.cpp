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


#include "cesurf/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace cesurf {

namespace {
std::atomic<unsigned> g_max_threads{0};
}

void set_max_threads(unsigned count) { g_max_threads.store(count); }

unsigned max_threads() {
  const unsigned n = g_max_threads.load();
  if (n != 0) return n;
  return std::max(1u, std::thread::hardware_concurrency());
}

void configure_threads_from_env() {
  const char* env = std::getenv("CE_SURF_THREADS");
  if (env == nullptr) return;
  try {
    const long v = std::stol(env);
    set_max_threads(v > 0 ? static_cast<unsigned>(v) : 0u);
  } catch (const std::exception&) {
    set_max_threads(0);
  }
}

}  // namespace cesurf
