// align/frame-pairs.cc

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

#include "zrsw/align/frame-pairs.h"

#include <vector>

#include "zrsw/base/error.h"
#include "zrsw/base/parallel.h"

namespace zrsw {

namespace {

Matrix SegmentFrames(const FeatureStore &store, const Segment &s) {
  auto it = store.find(s.utterance);
  if (it == store.end()) Fail("no features for utterance '{}'", s.utterance);
  if (it->second.FramesWithin(s.start, s.end) < 1)
    Fail("segment {} [{}, {}] is shorter than one frame", s.utterance, s.start, s.end);
  return it->second.Slice(s.start, s.end);
}

}  // namespace

FramePairs AlignFramePairs(const PairList &pairs, const FeatureStore &store,
                           const DtwOptions &options) {
  const auto &entries = pairs.entries;
  std::vector<Matrix> a(entries.size()), b(entries.size());
  std::vector<DtwResult> paths(entries.size());
  ParallelFor(entries.size(), [&](std::size_t i) {
    a[i] = SegmentFrames(store, entries[i].a);
    b[i] = SegmentFrames(store, entries[i].b);
    paths[i] = Dtw(a[i], b[i], options);
  });
  Index total = 0, dim = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    total += 2 * static_cast<Index>(paths[i].path.size());
    dim = a[i].cols();
  }
  FramePairs out;
  out.inputs.resize(total, dim);
  out.targets.resize(total, dim);
  Index row = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (auto [p, q] : paths[i].path) {
      out.inputs.row(row) = a[i].row(p);
      out.targets.row(row) = b[i].row(q);
      ++row;
      out.inputs.row(row) = b[i].row(q);
      out.targets.row(row) = a[i].row(p);
      ++row;
    }
  }
  return out;
}

}  // namespace zrsw
