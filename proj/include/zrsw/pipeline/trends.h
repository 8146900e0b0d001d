// pipeline/trends.h

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

#ifndef ZRSW_PIPELINE_TRENDS_H_
#define ZRSW_PIPELINE_TRENDS_H_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zrsw/corpus/synth.h"

namespace zrsw {

// Synthetic worlds used by the trend experiments. Both are pure functions of
// the seed.
//
// The trend world has three high-resource languages (h, i, j) whose speakers
// span warps 0.88-1.12, and a target language t with eight training speakers
// at warp 1.0 and six evaluation speakers at warps 0.9, 1.0 and 1.1. Speakers
// carry per-phone accents and strong additive noise, so raw MFCCs are far
// from speaker invariant.
//
// The VTLN world is a single quiet, accent-free language with twelve
// evaluation speakers (four per warp), used to check warp recovery in
// isolation.
SynthWorldOptions TrendWorldOptions();
SynthWorldOptions VtlnWorldOptions();
SynthCorpus BuildTrendWorld(std::uint64_t seed);
SynthCorpus BuildVtlnWorld(std::uint64_t seed);

inline constexpr const char *kTrendTarget = "t";
inline const std::vector<std::string> kTrendHighResource = {"h", "i", "j"};

/// Check groups accepted by TrendOptions::only.
inline const std::vector<std::string> kTrendGroups = {"vtln", "cae", "bnf", "rank"};

struct TrendOptions {
  std::uint64_t seed = 1;
  int num_seeds = 5;
  /// Empty = all groups.
  std::set<std::string> only;
  double margin = 0.02;        // AP margin for directional checks
  double warp_tolerance = 0.04;
  double warp_fraction = 0.9;  // share of speakers that must be recovered
  /// Seeds a directional check may fail (4 of 5 must pass by default).
  int allowed_failures = 1;

  bool Wants(const std::string &group) const { return only.empty() || only.count(group) > 0; }
  void Validate() const;
};

struct TrendSeedResult {
  std::uint64_t seed = 0;
  int warps_recovered = 0;
  int warps_total = 0;
  std::map<std::string, double> ap;         // feature set -> AP
  std::map<std::string, double> abx_cross;  // feature set -> cross-speaker error (%)
  /// Wall-clock seconds per stage. Reported in logs only, never in JSON.
  std::map<std::string, double> seconds;
};

struct TrendCheck {
  std::string name;
  std::string group;
  std::string description;
  int passing = 0;
  int required = 0;
  int total = 0;
  bool pass = false;
};

struct TrendReport {
  TrendOptions options;
  std::vector<TrendSeedResult> seeds;
  std::vector<TrendCheck> checks;

  bool AllPass() const;
  nlohmann::json ToJson() const;
  /// Fixed-width pass/fail table, one line per check.
  std::string Table() const;
};

/// Computes every measurement needed by the selected groups for one seed.
TrendSeedResult RunTrendSeed(std::uint64_t seed, const TrendOptions &options);

/// Runs seeds options.seed .. options.seed + num_seeds - 1 and evaluates the
/// directional checks over them.
TrendReport RunTrendSuite(const TrendOptions &options);

nlohmann::json ToJson(const TrendSeedResult &r);

}  // namespace zrsw

#endif  // ZRSW_PIPELINE_TRENDS_H_
