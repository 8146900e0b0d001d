// pipeline/trends.cc

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

#include "zrsw/pipeline/trends.h"

#include <algorithm>
#include <chrono>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "zrsw/base/error.h"
#include "zrsw/bnf/bnf.h"
#include "zrsw/cae/cae.h"
#include "zrsw/corpus/word-pairs.h"
#include "zrsw/dsp/extract.h"
#include "zrsw/dsp/mel-bank.h"
#include "zrsw/eval/abx.h"
#include "zrsw/eval/same-different.h"
#include "zrsw/vtln/diag-gmm.h"
#include "zrsw/vtln/warp-estimation.h"

namespace zrsw {

namespace {

constexpr double kTrendFormantJitter = 0.08;

class Stopwatch {
 public:
  double Lap() {
    auto now = std::chrono::steady_clock::now();
    double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

// Warps the evaluation speakers after training the VTLN GMM on unwarped
// training speakers of the same language.
WarpAssignment TrainAndEstimateWarps(const CorpusManifest &train,
                                     const std::vector<const CorpusManifest *> &targets,
                                     std::uint64_t seed) {
  MfccPipelineOptions vf = DefaultVtlnFeatures();
  GmmTrainOptions go;
  go.seed = seed;
  DiagonalGmm gmm = TrainGmmEm(StackFrames(ExtractMfccStore(train, vf)), go).gmm;
  std::vector<double> grid = WarpGrid(vf.frame);
  WarpAssignment all;
  for (const CorpusManifest *m : targets) all.merge(EstimateWarps(*m, gmm, grid, vf));
  return all;
}

bool Recovered(double estimate, double truth, double tolerance) {
  return std::abs(estimate - truth) <= tolerance + 1e-9;
}

}  // namespace

SynthWorldOptions TrendWorldOptions() {
  SynthWorldOptions w;
  w.pool_size = 14;
  w.accent_spread = 0.08;
  w.min_noise_level = 0.3;
  w.max_noise_level = 0.6;
  const int kHighSpeakers = 12;
  for (const std::string &id : kTrendHighResource) {
    SynthLanguageOptions l;
    l.id = id;
    l.lexicon_size = 40;
    for (int k = 0; k < kHighSpeakers; ++k)
      l.train_warps.push_back(0.88 + 0.24 * k / (kHighSpeakers - 1));
    w.languages.push_back(l);
  }
  SynthLanguageOptions t;
  t.id = kTrendTarget;
  t.train_warps.assign(8, 1.0);
  t.eval_warps = {0.9, 0.9, 1.0, 1.0, 1.1, 1.1};
  w.languages.push_back(t);
  return w;
}

SynthWorldOptions VtlnWorldOptions() {
  SynthWorldOptions w;
  SynthLanguageOptions l;
  l.id = "v";
  l.train_warps.assign(6, 1.0);
  for (double a : {0.9, 1.0, 1.1}) l.eval_warps.insert(l.eval_warps.end(), 4, a);
  w.languages.push_back(l);
  return w;
}

SynthCorpus BuildTrendWorld(std::uint64_t seed) {
  SynthSpec spec = RandomSynthSpec(TrendWorldOptions(), seed);
  spec.formant_jitter = kTrendFormantJitter;
  return SynthesizeCorpus(spec, seed);
}

SynthCorpus BuildVtlnWorld(std::uint64_t seed) {
  return SynthesizeCorpus(RandomSynthSpec(VtlnWorldOptions(), seed), seed);
}

void TrendOptions::Validate() const {
  if (num_seeds < 1) Fail("trend suite needs at least one seed");
  if (allowed_failures < 0) Fail("allowed failures must be non-negative");
  for (const std::string &g : only)
    if (std::find(kTrendGroups.begin(), kTrendGroups.end(), g) == kTrendGroups.end())
      Fail("unknown trend group '{}' (expected vtln, cae, bnf or rank)", g);
}

TrendSeedResult RunTrendSeed(std::uint64_t seed, const TrendOptions &options) {
  TrendSeedResult r;
  r.seed = seed;
  Stopwatch clock;

  if (options.Wants("vtln")) {
    SynthCorpus world = BuildVtlnWorld(seed);
    CorpusManifest train = world.manifest.Subset({"train"});
    CorpusManifest eval = world.manifest.Subset({"eval"});
    WarpAssignment warps = TrainAndEstimateWarps(train, {&eval}, seed);
    for (const auto &[spk, a] : warps) {
      ++r.warps_total;
      r.warps_recovered += Recovered(a, world.true_warps.at(spk), options.warp_tolerance);
    }
    r.seconds["vtln-recovery"] = clock.Lap();
    spdlog::info("seed {}: warp recovery {}/{} ({:.1f}s)", seed, r.warps_recovered,
                 r.warps_total, r.seconds["vtln-recovery"]);
  }

  bool need_vtln = options.Wants("vtln") || options.Wants("cae") || options.Wants("rank");
  bool need_bnf = options.Wants("bnf") || options.Wants("rank");
  bool need_abx = options.Wants("rank");

  SynthCorpus world = BuildTrendWorld(seed);
  CorpusManifest target = world.manifest.SubsetByLanguage(kTrendTarget);
  CorpusManifest train = target.Subset({"train"});
  CorpusManifest eval = target.Subset({"eval"});
  r.seconds["world"] = clock.Lap();

  MfccPipelineOptions mo;
  EvalPairSet pairs = GenerateEvalPairs(eval, EligibleWordTokens(eval));
  FeatureStore mfcc = ExtractMfccStore(eval, mo);
  r.ap["mfcc"] = SameDifferentAp(pairs, mfcc).average_precision;

  AbxTripletSet triplets;
  if (need_abx) {
    AbxBuildOptions ao;
    ao.max_tokens_per_speaker = 3;
    ao.within = false;
    triplets = BuildAbxTriplets(eval, ao);
    r.abx_cross["mfcc"] = AbxErrorRates(triplets, mfcc).cross_error;
  }

  FeatureStore vtln;
  WarpAssignment warps;
  if (need_vtln) {
    warps = TrainAndEstimateWarps(train, {&eval, &train}, seed);
    vtln = ExtractMfccStore(eval, mo, &warps);
    r.ap["mfcc+vtln"] = SameDifferentAp(pairs, vtln).average_precision;
    if (need_abx) r.abx_cross["mfcc+vtln"] = AbxErrorRates(triplets, vtln).cross_error;
  }
  r.seconds["features"] = clock.Lap();
  spdlog::info("seed {}: world and baseline features ({:.1f}s)", seed,
               r.seconds["world"] + r.seconds["features"]);

  if (options.Wants("cae")) {
    FeatureStore train_vtln = ExtractMfccStore(train, mo, &warps);
    PairList gold = GoldSameWordPairs(EligibleWordTokens(train));
    CaeConfig cc = CaeConfig::Desk();
    cc.seed = seed;
    CaeModel cae = TrainCae(gold, train_vtln, cc);
    r.ap["cae"] = SameDifferentAp(pairs, ExtractCaeStore(cae.net, vtln)).average_precision;
    r.seconds["cae"] = clock.Lap();
    spdlog::info("seed {}: cAE trained ({:.1f}s)", seed, r.seconds["cae"]);
  }

  if (need_bnf) {
    MfccPipelineOptions bo;
    bo.frame = FrameConfig::BnfInput();
    bo.deltas = false;
    FeatureStore eval_bnf_input = ExtractMfccStore(eval, bo);
    std::vector<LabeledFrameSet> sets;
    for (int k = 0; k < 2; ++k) {
      const std::string &id = kTrendHighResource[k];
      CorpusManifest m = world.manifest.SubsetByLanguage(id);
      sets.push_back(LabelFrames(m, ExtractMfccStore(m, bo), id));
    }
    r.seconds["bnf-input"] = clock.Lap();
    BnfConfig bc = BnfConfig::Desk();
    bc.seed = seed;
    for (int n = 1; n <= 2; ++n) {
      if (n == 1 && !options.Wants("bnf")) continue;
      std::vector<LabeledFrameSet> use(sets.begin(), sets.begin() + n);
      BnfModel model = TrainMultilingual(use, bc);
      FeatureStore feats = ExtractBnfStore(model.net, eval_bnf_input);
      std::string name = fmt::format("bnf-{}", n);
      r.ap[name] = SameDifferentAp(pairs, feats).average_precision;
      if (need_abx && n == 2) r.abx_cross[name] = AbxErrorRates(triplets, feats).cross_error;
      r.seconds[name] = clock.Lap();
      spdlog::info("seed {}: {} trained ({:.1f}s)", seed, name, r.seconds[name]);
    }
  }

  std::string line;
  for (const auto &[k, v] : r.ap) line += fmt::format(" {}={:.3f}", k, v);
  spdlog::info("seed {}: AP{}", seed, line);
  if (!r.abx_cross.empty()) {
    line.clear();
    for (const auto &[k, v] : r.abx_cross) line += fmt::format(" {}={:.2f}", k, v);
    spdlog::info("seed {}: ABX cross{}", seed, line);
  }
  return r;
}

namespace {

// a beats b by at least margin.
TrendCheck Directional(const std::vector<TrendSeedResult> &seeds, const TrendOptions &o,
                       const std::string &name, const std::string &group,
                       const std::string &better, const std::string &worse) {
  TrendCheck c;
  c.name = name;
  c.group = group;
  c.description = fmt::format("AP({}) >= AP({}) + {}", better, worse, o.margin);
  c.total = static_cast<int>(seeds.size());
  c.required = std::max(1, c.total - o.allowed_failures);
  for (const TrendSeedResult &s : seeds)
    c.passing += s.ap.at(better) >= s.ap.at(worse) + o.margin;
  c.pass = c.passing >= c.required;
  return c;
}

int Sign(double x) { return (x > 0) - (x < 0); }

}  // namespace

TrendReport RunTrendSuite(const TrendOptions &options) {
  options.Validate();
  TrendReport report;
  report.options = options;
  for (int k = 0; k < options.num_seeds; ++k)
    report.seeds.push_back(RunTrendSeed(options.seed + k, options));
  const auto &seeds = report.seeds;
  int n = static_cast<int>(seeds.size());

  if (options.Wants("vtln")) {
    TrendCheck c;
    c.name = "vtln-recovery";
    c.group = "vtln";
    c.description = fmt::format("warp within +-{} for >= {:.0f}% of speakers",
                                options.warp_tolerance, 100 * options.warp_fraction);
    c.total = c.required = n;
    for (const TrendSeedResult &s : seeds)
      c.passing += s.warps_recovered >= options.warp_fraction * s.warps_total - 1e-9;
    c.pass = c.passing == c.required;
    report.checks.push_back(c);
    report.checks.push_back(Directional(seeds, options, "vtln-over-mfcc", "vtln", "mfcc+vtln", "mfcc"));
  }
  if (options.Wants("cae"))
    report.checks.push_back(Directional(seeds, options, "cae-over-vtln", "cae", "cae", "mfcc+vtln"));
  if (options.Wants("bnf")) {
    report.checks.push_back(Directional(seeds, options, "bnf1-over-mfcc", "bnf", "bnf-1", "mfcc"));
    report.checks.push_back(Directional(seeds, options, "bnf2-over-bnf1", "bnf", "bnf-2", "bnf-1"));
  }
  if (options.Wants("rank")) {
    TrendCheck c;
    c.name = "ap-abx-rank";
    c.group = "rank";
    c.description = "AP and ABX cross error rank mfcc, mfcc+vtln, bnf-2 oppositely";
    c.total = c.required = n;
    const std::vector<std::string> sets = {"mfcc", "mfcc+vtln", "bnf-2"};
    for (const TrendSeedResult &s : seeds) {
      bool agree = true;
      for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
          int ap = Sign(s.ap.at(sets[i]) - s.ap.at(sets[j]));
          int abx = Sign(s.abx_cross.at(sets[i]) - s.abx_cross.at(sets[j]));
          agree = agree && ap != 0 && ap == -abx;
        }
      c.passing += agree;
    }
    c.pass = c.passing == c.required;
    report.checks.push_back(c);
  }
  return report;
}

bool TrendReport::AllPass() const {
  return std::all_of(checks.begin(), checks.end(), [](const TrendCheck &c) { return c.pass; });
}

nlohmann::json ToJson(const TrendSeedResult &r) {
  nlohmann::json j;
  j["seed"] = r.seed;
  if (r.warps_total > 0) {
    j["warps_recovered"] = r.warps_recovered;
    j["warps_total"] = r.warps_total;
  }
  j["ap"] = r.ap;
  if (!r.abx_cross.empty()) j["abx_cross_error"] = r.abx_cross;
  return j;
}

nlohmann::json TrendReport::ToJson() const {
  nlohmann::json j;
  j["suite"] = "trends";
  j["seed"] = options.seed;
  j["num_seeds"] = options.num_seeds;
  nlohmann::json groups = nlohmann::json::array();
  for (const std::string &g : kTrendGroups)
    if (options.Wants(g)) groups.push_back(g);
  j["groups"] = groups;
  j["margin"] = options.margin;
  j["dtw_cost"] = "cosine, normalized by path length";
  j["seeds"] = nlohmann::json::array();
  for (const TrendSeedResult &s : seeds) j["seeds"].push_back(zrsw::ToJson(s));
  j["checks"] = nlohmann::json::array();
  for (const TrendCheck &c : checks)
    j["checks"].push_back({{"name", c.name},
                           {"group", c.group},
                           {"description", c.description},
                           {"passing", c.passing},
                           {"required", c.required},
                           {"total", c.total},
                           {"pass", c.pass}});
  j["pass"] = AllPass();
  return j;
}

std::string TrendReport::Table() const {
  std::string s;
  for (const TrendCheck &c : checks)
    s += fmt::format("{:<4}  {:<15} {}/{} seeds (need {})  {}\n", c.pass ? "PASS" : "FAIL",
                     c.name, c.passing, c.total, c.required, c.description);
  return s;
}

}  // namespace zrsw
