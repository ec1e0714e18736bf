// Copyright 2026 The btspec Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace btspec {

// 0 selects hardware concurrency; BTSPEC_THREADS overrides.
unsigned worker_count(unsigned requested = 0);

// Runs fn(i) for i in [0, n) over a fixed pool; exceptions rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, unsigned threads = 0);

}  // namespace btspec
