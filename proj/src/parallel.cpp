// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#include "synfocus/parallel.hpp"

#include <omp.h>

namespace synfocus {

namespace {
const int kDefaultThreads = omp_get_max_threads();
}

void set_thread_limit(int threads) { omp_set_num_threads(threads > 0 ? threads : kDefaultThreads); }

int thread_limit() { return omp_get_max_threads(); }

}  // namespace synfocus
