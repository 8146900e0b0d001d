// eval/same-different.h

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

#ifndef ZRSW_EVAL_SAME_DIFFERENT_H_
#define ZRSW_EVAL_SAME_DIFFERENT_H_

#include <span>
#include <vector>

#include "zrsw/align/dtw.h"
#include "zrsw/corpus/word-pairs.h"
#include "zrsw/dsp/feature-sequence.h"

namespace zrsw {

struct ScoredPair {
  double cost = 0.0;
  bool same_word = false;
  bool swdp = false;  // same word, different speaker
};

struct CurvePoint {
  double threshold = 0.0;
  double precision = 0.0;
  double recall = 0.0;
};

struct PrecisionRecallCurve {
  /// One point per distinct cost, thresholds ascending.
  std::vector<CurvePoint> points;
  double average_precision = 0.0;
  std::size_t num_pairs = 0;
  std::size_t num_same_word = 0;
  std::size_t num_swdp = 0;
};

/// Pairs with cost <= tau count as matches. P(tau) = M_SW / M_all over all
/// matches, R(tau) = M_SWDP / |S_SWDP|. AP sums P * (increase in R) over
/// the ranked list with tied costs grouped into one step. Throws when there
/// are no SWDP pairs.
PrecisionRecallCurve AveragePrecision(std::span<const ScoredPair> pairs);

/// Length-normalized cosine DTW cost of every pair, in pair order.
std::vector<double> PairCosts(const EvalPairSet &pairs, const FeatureStore &store,
                              const DtwOptions &options = {});

PrecisionRecallCurve SameDifferentAp(const EvalPairSet &pairs, const FeatureStore &store,
                                     const DtwOptions &options = {});

}  // namespace zrsw

#endif  // ZRSW_EVAL_SAME_DIFFERENT_H_
