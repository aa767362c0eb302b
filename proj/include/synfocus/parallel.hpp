// Copyright 2026 The synfocus Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace synfocus {

/// Execution policy of the dense kernels. `serial` is the reference path the
/// OpenMP path is tested against; both visit the same reductions in the same
/// order, so they produce bit-identical results.
enum class Exec { serial, parallel };

/// Caps the number of OpenMP worker threads (0 restores the runtime default).
void set_thread_limit(int threads);

/// Number of threads a parallel region would currently use.
int thread_limit();

}  // namespace synfocus
