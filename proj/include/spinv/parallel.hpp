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

#ifndef SPINV_PARALLEL_HPP
#define SPINV_PARALLEL_HPP

namespace spinv::parallel {

// Thread count used by the OpenMP kernels. Resolution order:
// set_threads() if called, else the SPINV_THREADS environment variable,
// else the OpenMP default. Builds without OpenMP always report 1.
int max_threads();

// Override the thread count for this process (0 restores the default).
void set_threads(int n);

// True when the parallel kernel paths should be taken.
bool enabled();

}  // namespace spinv::parallel

#endif  // SPINV_PARALLEL_HPP
