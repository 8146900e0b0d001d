// dsp/feature-sequence.cc

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

#include "zrsw/dsp/feature-sequence.h"

#include <algorithm>
#include <cmath>

#include "zrsw/base/error.h"

namespace zrsw {

std::string_view ProvenanceName(Provenance p) {
  switch (p) {
    case Provenance::kMfcc: return "mfcc";
    case Provenance::kMfccVtln: return "mfcc+vtln";
    case Provenance::kCae: return "cae";
    case Provenance::kBnf: return "bnf";
    case Provenance::kSpliced: return "spliced";
  }
  return "unknown";
}

Provenance ParseProvenance(std::string_view name) {
  for (Provenance p : {Provenance::kMfcc, Provenance::kMfccVtln, Provenance::kCae,
                       Provenance::kBnf, Provenance::kSpliced})
    if (ProvenanceName(p) == name) return p;
  Fail("unknown feature provenance '{}'", name);
}

Index FeatureSequence::FirstAtOrAfter(double time) const {
  double x = (time - first_frame_center) / frame_shift;
  Index i = static_cast<Index>(std::ceil(x - 1e-9));
  return std::clamp<Index>(i, 0, NumFrames());
}

Index FeatureSequence::FramesWithin(double start, double end) const {
  return std::max<Index>(0, FirstAtOrAfter(end) - FirstAtOrAfter(start));
}

std::pair<Index, Index> FeatureSequence::FrameRange(double start,
                                                    double end) const {
  const Index t = NumFrames();
  if (t == 0) Fail("cannot slice an empty feature sequence");
  // First index with center >= start, first index with center >= end.
  Index begin = FirstAtOrAfter(start), stop = FirstAtOrAfter(end);
  if (stop <= begin) {
    double mid = 0.5 * (start + end);
    Index nearest = static_cast<Index>(
        std::lround((mid - first_frame_center) / frame_shift));
    return {std::clamp<Index>(nearest, 0, t - 1), 1};
  }
  return {begin, stop - begin};
}

Matrix FeatureSequence::Slice(double start, double end) const {
  auto [begin, count] = FrameRange(start, end);
  return data.middleRows(begin, count);
}

}  // namespace zrsw
