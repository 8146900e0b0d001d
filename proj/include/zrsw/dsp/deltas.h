// dsp/deltas.h

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

#ifndef ZRSW_DSP_DELTAS_H_
#define ZRSW_DSP_DELTAS_H_

#include "zrsw/base/matrix.h"
#include "zrsw/dsp/feature-sequence.h"

namespace zrsw {

/// Regression deltas over +-context frames, indices clamped at the edges:
///   d_t = sum_{n=1..N} n (c_{t+n} - c_{t-n}) / (2 sum_{n=1..N} n^2)
Matrix RegressionDeltas(const Matrix &features, int context);

/// [c, delta(c), delta(delta(c))]; output dimension is 3 * input dimension.
FeatureSequence AddDeltas(const FeatureSequence &features, int context = 2);

}  // namespace zrsw

#endif  // ZRSW_DSP_DELTAS_H_
