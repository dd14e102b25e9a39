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

// Convenience umbrella for the whole library.

#ifndef DICING_DICING_HPP
#define DICING_DICING_HPP

#include "dicing/bench.hpp"
#include "dicing/bits.hpp"
#include "dicing/engine.hpp"
#include "dicing/gf2x.hpp"
#include "dicing/init.hpp"
#include "dicing/keyschedule.hpp"
#include "dicing/verify.hpp"

#endif  // DICING_DICING_HPP
