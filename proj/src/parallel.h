// Copyright 2026 The lsself Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LSSELF_SRC_PARALLEL_H
#define LSSELF_SRC_PARALLEL_H

#include <exception>
#include <limits>

namespace lsself::detail {

/// Runs body(i) for i in [0, n), in parallel when `parallel` is set.
/// Exceptions cannot leave an OpenMP region, so the one thrown at the
/// smallest index is captured and rethrown afterwards.
template <typename Body>
void parallel_for(long n, bool parallel, Body &&body) {
    std::exception_ptr error;
    long error_index = std::numeric_limits<long>::max();
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (long i = 0; i < n; i++) {
        try {
            body(i);
        } catch (...) {
#pragma omp critical(lsself_parallel_error)
            if (i < error_index) {
                error_index = i;
                error = std::current_exception();
            }
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

}  // namespace lsself::detail

#endif
