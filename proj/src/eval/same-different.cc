// eval/same-different.cc

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

#include "zrsw/eval/same-different.h"

#include <algorithm>
#include <numeric>

#include "zrsw/base/error.h"
#include "zrsw/base/parallel.h"

namespace zrsw {

PrecisionRecallCurve AveragePrecision(std::span<const ScoredPair> pairs) {
  PrecisionRecallCurve curve;
  curve.num_pairs = pairs.size();
  for (const ScoredPair &p : pairs) {
    if (p.swdp && !p.same_word) Fail("pair labeled SWDP but not same-word");
    curve.num_same_word += p.same_word;
    curve.num_swdp += p.swdp;
  }
  if (curve.num_swdp == 0)
    Fail("average precision is undefined without same-word different-speaker pairs");

  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pairs[a].cost < pairs[b].cost;
  });

  std::size_t matched = 0, matched_sw = 0, matched_swdp = 0;
  double previous_recall = 0.0;
  for (std::size_t i = 0; i < order.size();) {
    const double tau = pairs[order[i]].cost;
    for (; i < order.size() && pairs[order[i]].cost == tau; ++i) {
      ++matched;
      matched_sw += pairs[order[i]].same_word;
      matched_swdp += pairs[order[i]].swdp;
    }
    CurvePoint pt;
    pt.threshold = tau;
    pt.precision = static_cast<double>(matched_sw) / matched;
    pt.recall = static_cast<double>(matched_swdp) / curve.num_swdp;
    curve.average_precision += pt.precision * (pt.recall - previous_recall);
    previous_recall = pt.recall;
    curve.points.push_back(pt);
  }
  return curve;
}

std::vector<double> PairCosts(const EvalPairSet &set, const FeatureStore &store,
                              const DtwOptions &options) {
  std::vector<Matrix> unit(set.tokens.size());
  for (std::size_t i = 0; i < set.tokens.size(); ++i) {
    const WordToken &w = set.tokens[i];
    auto it = store.find(w.utterance);
    if (it == store.end()) Fail("no features for utterance '{}'", w.utterance);
    unit[i] = UnitRows(it->second.Slice(w.start, w.end));
  }
  std::vector<double> costs(set.pairs.size());
  ParallelFor(set.pairs.size(), [&](std::size_t k) {
    const LabeledPair &p = set.pairs[k];
    if (unit[p.a].cols() != unit[p.b].cols())
      Fail("feature dimension mismatch between tokens {} and {}", p.a, p.b);
    Matrix d = (1.0 - (unit[p.a] * unit[p.b].transpose()).array().max(-1.0).min(1.0))
                   .matrix();
    costs[k] = NormalizedDtwCost(d, options);
  });
  return costs;
}

PrecisionRecallCurve SameDifferentAp(const EvalPairSet &set, const FeatureStore &store,
                                     const DtwOptions &options) {
  std::vector<double> costs = PairCosts(set, store, options);
  std::vector<ScoredPair> scored(costs.size());
  for (std::size_t k = 0; k < costs.size(); ++k)
    scored[k] = {costs[k], set.pairs[k].same_word, set.pairs[k].IsSwdp()};
  return AveragePrecision(scored);
}

}  // namespace zrsw
