// base/parallel.h

// Copyright 2026  zrsw authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef ZRSW_BASE_PARALLEL_H_
#define ZRSW_BASE_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace zrsw {

/// Worker cap used by ParallelFor when no explicit count is given. Initialized
/// from the ZRSW_THREADS environment variable (default 1).
int DefaultThreads();
void SetDefaultThreads(int n);

/// Runs body(i) for i in [0, n). Each index is handled by exactly one worker;
/// callers write results into per-index slots so the outcome does not depend
/// on scheduling.
void ParallelFor(std::size_t n, const std::function<void(std::size_t)> &body,
                 int threads = 0);

}  // namespace zrsw

#endif  // ZRSW_BASE_PARALLEL_H_
