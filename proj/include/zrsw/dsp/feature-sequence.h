// dsp/feature-sequence.h

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

#ifndef ZRSW_DSP_FEATURE_SEQUENCE_H_
#define ZRSW_DSP_FEATURE_SEQUENCE_H_

#include <map>
#include <string>
#include <string_view>

#include "zrsw/base/matrix.h"

namespace zrsw {

enum class Provenance { kMfcc, kMfccVtln, kCae, kBnf, kSpliced };

std::string_view ProvenanceName(Provenance p);
Provenance ParseProvenance(std::string_view name);

/// T x D frame matrix plus the timing needed to map seconds to frames.
struct FeatureSequence {
  Matrix data;
  double frame_shift = 0.010;
  double first_frame_center = 0.0125;
  Provenance provenance = Provenance::kMfcc;

  Index NumFrames() const { return data.rows(); }
  Index Dim() const { return data.cols(); }

  /// Frames whose centers fall in [start, end). A span shorter than one frame
  /// yields the single nearest frame.
  Matrix Slice(double start, double end) const;
  /// First frame index and count used by Slice.
  std::pair<Index, Index> FrameRange(double start, double end) const;
  /// Number of frame centers in [start, end), without the nearest-frame
  /// fallback.
  Index FramesWithin(double start, double end) const;

 private:
  // First frame index whose center is >= time, clamped to [0, T].
  Index FirstAtOrAfter(double time) const;
};

/// Features keyed by utterance id.
using FeatureStore = std::map<std::string, FeatureSequence>;

}  // namespace zrsw

#endif  // ZRSW_DSP_FEATURE_SEQUENCE_H_
