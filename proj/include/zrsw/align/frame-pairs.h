// align/frame-pairs.h

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

#ifndef ZRSW_ALIGN_FRAME_PAIRS_H_
#define ZRSW_ALIGN_FRAME_PAIRS_H_

#include "zrsw/align/dtw.h"
#include "zrsw/corpus/manifest.h"
#include "zrsw/dsp/feature-sequence.h"

namespace zrsw {

/// Row k of inputs is aligned to row k of targets.
struct FramePairs {
  Matrix inputs;
  Matrix targets;

  Index size() const { return inputs.rows(); }
};

/// DTW-aligns the two segments of every pair (cosine distance on `store`)
/// and emits each aligned frame couple in both directions, x -> x' and
/// x' -> x. Segments must cover at least one frame center.
FramePairs AlignFramePairs(const PairList &pairs, const FeatureStore &store,
                           const DtwOptions &options = {});

}  // namespace zrsw

#endif  // ZRSW_ALIGN_FRAME_PAIRS_H_
