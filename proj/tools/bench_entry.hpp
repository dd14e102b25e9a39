/*
 * Copyright 2026 the dicing-cpp authors
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
 */

#ifndef DICING_TOOLS_BENCH_ENTRY_HPP
#define DICING_TOOLS_BENCH_ENTRY_HPP

#include "dicing/bench.hpp"

namespace dicing::bench {

// Same contract as measure(), but compiled in a translation unit of its
// own: the generator's hot loop optimizes noticeably better in a small
// unit than buried in a large one, and throughput reports should reflect
// the library's real speed.
BenchReport run_hot_bench(double megabytes);

}  // namespace dicing::bench

#endif  // DICING_TOOLS_BENCH_ENTRY_HPP
