// dsp/deltas.cc

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

#include "zrsw/dsp/deltas.h"

#include <algorithm>

#include "zrsw/base/error.h"

namespace zrsw {

Matrix RegressionDeltas(const Matrix &features, int context) {
  if (context < 1) Fail("delta context must be >= 1, got {}", context);
  const Index t_max = features.rows() - 1;
  double denom = 0.0;
  for (int n = 1; n <= context; ++n) denom += 2.0 * n * n;
  Matrix out = Matrix::Zero(features.rows(), features.cols());
  for (Index t = 0; t <= t_max; ++t) {
    for (int n = 1; n <= context; ++n) {
      Index ahead = std::min<Index>(t + n, t_max);
      Index behind = std::max<Index>(t - n, 0);
      out.row(t) += n * (features.row(ahead) - features.row(behind));
    }
  }
  return out / denom;
}

FeatureSequence AddDeltas(const FeatureSequence &features, int context) {
  if (features.NumFrames() < 1) Fail("cannot add deltas to an empty sequence");
  const Index d = features.Dim();
  Matrix delta = RegressionDeltas(features.data, context);
  Matrix delta2 = RegressionDeltas(delta, context);
  FeatureSequence out = features;
  out.data.resize(features.NumFrames(), 3 * d);
  out.data << features.data, delta, delta2;
  return out;
}

}  // namespace zrsw
