// Copyright 2026 The Surro Authors
//
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

#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <vector>

namespace surro {

/// Caps the number of worker threads used by library-internal parallel
/// loops. Zero restores the default (hardware concurrency).
void set_max_threads(unsigned count);
unsigned max_threads();

/// Runs body(i) for i in [0, count). Work items are distributed over up to
/// max_threads() workers; nested calls from inside a worker run serially.
/// If any item throws, the exception from the lowest failing index is
/// rethrown after all workers join. Callers must make body(i) write only to
/// slot i so results do not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace surro
