// dsp/extract.cc

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

#include "zrsw/dsp/extract.h"

#include <vector>

#include "zrsw/base/error.h"
#include "zrsw/base/parallel.h"
#include "zrsw/dsp/cmn.h"
#include "zrsw/dsp/deltas.h"
#include "zrsw/dsp/mfcc.h"

namespace zrsw {

FeatureStore ExtractMfccStore(const CorpusManifest &manifest,
                              const MfccPipelineOptions &options,
                              const WarpAssignment *warps) {
  const auto &utts = manifest.utterances;
  std::vector<FeatureSequence> feats(utts.size());
  ParallelFor(utts.size(), [&](std::size_t i) {
    const Utterance &u = utts[i];
    if (u.samples.empty()) Fail("utterance '{}' has no audio loaded", u.id);
    double alpha = 1.0;
    if (warps != nullptr) {
      auto it = warps->find(u.speaker);
      if (it != warps->end()) alpha = it->second;
    }
    feats[i] = ComputeMfcc(u.samples, u.sample_rate, options.frame, alpha);
    feats[i].provenance = warps ? Provenance::kMfccVtln : Provenance::kMfcc;
  });
  if (options.cmn) {
    std::vector<std::string> speakers;
    for (const Utterance &u : utts) speakers.push_back(u.speaker);
    CmnPerSpeaker(std::span<FeatureSequence>(feats), speakers);
  }
  FeatureStore store;
  for (std::size_t i = 0; i < utts.size(); ++i) {
    if (options.deltas) feats[i] = AddDeltas(feats[i], options.delta_context);
    store[utts[i].id] = std::move(feats[i]);
  }
  return store;
}

Matrix StackFrames(const FeatureStore &store) {
  Index rows = 0, dim = -1;
  for (const auto &[id, f] : store) {
    rows += f.NumFrames();
    if (dim >= 0 && f.Dim() != dim) Fail("feature store mixes dimensions {} and {}", dim, f.Dim());
    dim = f.Dim();
  }
  Matrix out(rows, std::max<Index>(dim, 0));
  Index r = 0;
  for (const auto &[id, f] : store) {
    out.middleRows(r, f.NumFrames()) = f.data;
    r += f.NumFrames();
  }
  return out;
}

}  // namespace zrsw
