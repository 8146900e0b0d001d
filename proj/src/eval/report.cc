// eval/report.cc

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

#include "zrsw/eval/report.h"

namespace zrsw {

nlohmann::json ToJson(const PrecisionRecallCurve &curve, bool include_points) {
  nlohmann::json j;
  j["average_precision"] = curve.average_precision;
  j["num_pairs"] = curve.num_pairs;
  j["num_same_word"] = curve.num_same_word;
  j["num_swdp"] = curve.num_swdp;
  j["dtw_cost"] = "cosine, normalized by path length";
  if (include_points) {
    nlohmann::json pts = nlohmann::json::array();
    for (const CurvePoint &p : curve.points)
      pts.push_back({{"threshold", p.threshold}, {"precision", p.precision}, {"recall", p.recall}});
    j["curve"] = std::move(pts);
  }
  return j;
}

nlohmann::json ToJson(const AbxResult &result, bool include_cells) {
  nlohmann::json j;
  j["within_error"] = result.within_error;
  j["cross_error"] = result.cross_error;
  j["num_within"] = result.num_within;
  j["num_cross"] = result.num_cross;
  j["dtw_cost"] = "cosine, normalized by path length";
  if (include_cells) {
    nlohmann::json cells = nlohmann::json::array();
    for (const AbxCell &c : result.cells)
      cells.push_back({{"contrast", c.contrast},
                       {"speaker_ab", c.speaker_ab},
                       {"speaker_x", c.speaker_x},
                       {"condition", SpeakerConditionName(c.condition)},
                       {"count", c.count},
                       {"error", c.error}});
    j["cells"] = std::move(cells);
  }
  return j;
}

}  // namespace zrsw
