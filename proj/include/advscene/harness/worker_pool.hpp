// Copyright 2026 The advscene Authors
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
#include <functional>

namespace advscene::harness
{

/// Runs `task(i)` for every i in [0, count) on `workers` threads.
///
/// Tasks are handed out in index order; each task writes only its own result
/// slot, so the caller collects results by index once this returns. A task
/// that throws has its exception swallowed here and must report failure
/// through its own slot.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)> & task);

}  // namespace advscene::harness
