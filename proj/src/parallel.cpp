// Copyright 2026 the spinv authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "spinv/parallel.hpp"

#include <atomic>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace spinv::parallel {

namespace {
std::atomic<int> g_threads{0};

int env_threads() {
  const char* s = std::getenv("SPINV_THREADS");
  if (s == nullptr) return 0;
  int n = std::atoi(s);
  return n > 0 ? n : 0;
}
}  // namespace

int max_threads() {
#ifdef _OPENMP
  int n = g_threads.load(std::memory_order_relaxed);
  if (n > 0) return n;
  n = env_threads();
  if (n > 0) return n;
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_threads(int n) { g_threads.store(n > 0 ? n : 0, std::memory_order_relaxed); }

bool enabled() { return max_threads() > 1; }

}  // namespace spinv::parallel
