// eval/abx.h

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

#ifndef ZRSW_EVAL_ABX_H_
#define ZRSW_EVAL_ABX_H_

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "zrsw/align/dtw.h"
#include "zrsw/corpus/manifest.h"
#include "zrsw/dsp/feature-sequence.h"

namespace zrsw {

enum class SpeakerCondition { kWithin, kCross };

const char *SpeakerConditionName(SpeakerCondition c);
SpeakerCondition ParseSpeakerCondition(const std::string &name);

/// Three consecutive, contiguous phones of one utterance.
struct Triphone {
  std::string utterance;
  std::string speaker;
  std::array<std::string, 3> labels;
  double start = 0.0;
  double end = 0.0;
};

struct AbxTriplet {
  std::size_t a = 0;  // indices into AbxTripletSet::triphones
  std::size_t b = 0;
  std::size_t x = 0;
  SpeakerCondition condition = SpeakerCondition::kWithin;
};

struct AbxTripletSet {
  std::vector<Triphone> triphones;
  std::vector<AbxTriplet> triplets;
};

struct AbxBuildOptions {
  /// Adjacent phones further apart than this do not form a triphone.
  double max_gap = 1e-6;
  /// Keep at most this many tokens of one triphone per speaker, first in
  /// corpus order; 0 keeps all.
  std::size_t max_tokens_per_speaker = 0;
  bool within = true;
  bool cross = true;
};

std::vector<Triphone> ExtractTriphones(const CorpusManifest &manifest, double max_gap = 1e-6);

/// A and B come from one speaker and differ only in the central phone.
/// X carries A's phone sequence, is a different token from A and comes
/// from A's speaker (within) or any other speaker (cross). Enumeration
/// order is deterministic.
AbxTripletSet BuildAbxTriplets(const CorpusManifest &manifest,
                               const AbxBuildOptions &options = {});

/// How per-triplet errors are pooled. kHierarchical: mean within each
/// (contrast, speaker cell), then mean over contrasts within a speaker cell,
/// then mean over speaker cells. A contrast is the ordered pair of
/// triphones (A, B); a speaker cell is (speaker of A/B, speaker of X).
/// kFlat: mean over all triplets.
enum class AbxAveraging { kHierarchical, kFlat };

struct AbxCell {
  std::string contrast;  // "a-b-c/a-d-c"
  std::string speaker_ab;
  std::string speaker_x;
  SpeakerCondition condition = SpeakerCondition::kWithin;
  std::size_t count = 0;
  double error = 0.0;  // percent
};

struct AbxResult {
  double within_error = 0.0;  // percent; 0 when there are no such triplets
  double cross_error = 0.0;
  std::size_t num_within = 0;
  std::size_t num_cross = 0;
  std::vector<AbxCell> cells;
};

/// X is assigned to A when cost(A, X) < cost(B, X); ties count as half an
/// error. Throws on an empty triplet set.
AbxResult AbxErrorRates(const AbxTripletSet &set, const FeatureStore &store,
                        AbxAveraging averaging = AbxAveraging::kHierarchical,
                        const DtwOptions &options = {});

}  // namespace zrsw

#endif  // ZRSW_EVAL_ABX_H_
