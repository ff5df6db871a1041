/*
 * include/plasmo/parallel.hpp
 *
 * This source file is part of the plasmo project
 *
 * Copyright 2026 The plasmo authors
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

#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace plasmo {

int resolve_threads(int requested);

// Runs fn(i) for i in [0, n). Each index owns its output slot, so results do not
// depend on scheduling. The first exception is rethrown on the caller's thread.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

} // namespace plasmo
