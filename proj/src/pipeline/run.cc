// pipeline/run.cc

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

#include "zrsw/pipeline/run.h"

#include <chrono>
#include <fstream>
#include <functional>
#include <set>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "zrsw/base/error.h"
#include "zrsw/bnf/bnf.h"
#include "zrsw/cae/cae.h"
#include "zrsw/corpus/word-pairs.h"
#include "zrsw/dsp/extract.h"
#include "zrsw/dsp/feature-io.h"
#include "zrsw/dsp/mel-bank.h"
#include "zrsw/eval/abx.h"
#include "zrsw/eval/report.h"
#include "zrsw/eval/same-different.h"
#include "zrsw/nnet/network-io.h"
#include "zrsw/pipeline/trends.h"
#include "zrsw/vtln/diag-gmm.h"
#include "zrsw/vtln/warp-estimation.h"

namespace zrsw {

namespace {

namespace fs = std::filesystem;

class StageRunner {
 public:
  StageRunner(const fs::path &log_path, std::map<std::string, double> *seconds)
      : log_(log_path), seconds_(seconds) {
    if (!log_) Fail("cannot write '{}'", log_path.string());
  }

  void Run(const std::string &name, const std::function<void()> &body) {
    auto start = std::chrono::steady_clock::now();
    try {
      body();
    } catch (const std::exception &e) {
      log_ << fmt::format("stage {} FAILED: {}\n", name, e.what());
      log_.flush();
      Fail("stage '{}' failed: {}", name, e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    (*seconds_)[name] = s;
    log_ << fmt::format("stage {} ok {:.3f}s\n", name, s);
    log_.flush();
    spdlog::info("stage {} done in {:.2f}s", name, s);
  }

 private:
  std::ofstream log_;
  std::map<std::string, double> *seconds_;
};

PairList PairsWithin(const PairList &all, const CorpusManifest &m) {
  PairList out;
  for (const SegmentPair &p : all.entries)
    if (m.TryFind(p.a.utterance) && m.TryFind(p.b.utterance)) out.entries.push_back(p);
  return out;
}

}  // namespace

PipelineResult RunPipeline(const ExperimentConfig &config) {
  config.Validate();
  PipelineResult result;
  result.config_hash = config.Hash();
  fs::create_directories(config.output);
  {
    std::ofstream os(config.output / "config.canonical");
    os << config.Canonical();
  }
  StageRunner stages(config.output / "pipeline.log", &result.stage_seconds);

  CorpusManifest full, train, eval;
  stages.Run("corpus", [&] {
    if (!config.synth.empty()) {
      SynthCorpus world = config.synth == "trend" ? BuildTrendWorld(config.seed)
                                                  : BuildVtlnWorld(config.seed);
      full = std::move(world.manifest);
      std::ofstream os(config.output / "true-warps.txt");
      WriteWarps(os, world.true_warps);
    } else {
      full = LoadManifest(config.manifest);
      LoadAudio(full);
    }
    CorpusManifest scoped = config.language.empty() ? full : full.SubsetByLanguage(config.language);
    train = scoped.Subset({config.train_split});
    eval = scoped.Subset({config.eval_split});
    if (eval.utterances.empty())
      Fail("no utterances in split '{}'", config.eval_split);
    SaveManifest(config.output / "corpus.tsv", scoped);
  });

  MfccPipelineOptions mo;
  mo.frame.n_mels = config.n_mels;
  mo.cmn = config.cmn;
  mo.deltas = config.deltas;

  std::map<std::string, FeatureStore> eval_sets;
  stages.Run("mfcc", [&] {
    eval_sets["mfcc"] = ExtractMfccStore(eval, mo);
    WriteFeatureStore(config.output / "features" / "mfcc", eval_sets["mfcc"]);
  });

  WarpAssignment warps;
  if (config.vtln) {
    stages.Run("vtln", [&] {
      if (train.utterances.empty()) Fail("VTLN needs utterances in split '{}'", config.train_split);
      MfccPipelineOptions vf = DefaultVtlnFeatures();
      GmmTrainOptions go;
      go.num_components = config.gmm_components;
      go.iterations = config.gmm_iterations;
      go.seed = config.seed;
      DiagonalGmm gmm = TrainGmmEm(StackFrames(ExtractMfccStore(train, vf)), go).gmm;
      SaveGmm(config.output / "vtln.gmm", gmm);
      std::vector<double> grid = WarpGrid(vf.frame);
      warps = EstimateWarps(eval, gmm, grid, vf);
      warps.merge(EstimateWarps(train, gmm, grid, vf));
      std::ofstream os(config.output / "warps.txt");
      WriteWarps(os, warps);
      eval_sets["mfcc+vtln"] = ExtractMfccStore(eval, mo, &warps);
      WriteFeatureStore(config.output / "features" / "mfcc+vtln", eval_sets["mfcc+vtln"]);
    });
  }

  if (config.model == "cae") {
    stages.Run("model", [&] {
      bool use_vtln = config.cae_input == "vtln";
      FeatureStore input = ExtractMfccStore(train, mo, use_vtln ? &warps : nullptr);
      PairList pairs = config.pairs == "gold" ? GoldSameWordPairs(EligibleWordTokens(train))
                                              : PairsWithin(full.pairs, train);
      if (pairs.entries.empty()) Fail("no training pairs for the cAE");
      CaeConfig cc = config.preset == "paper" ? CaeConfig::Paper() : CaeConfig::Desk();
      cc.seed = config.seed;
      CaeModel model = TrainCae(pairs, input, cc);
      SaveNetwork(config.output / "model.zrsn", model.net);
      eval_sets["cae"] = ExtractCaeStore(model.net, eval_sets[use_vtln ? "mfcc+vtln" : "mfcc"]);
      WriteFeatureStore(config.output / "features" / "cae", eval_sets["cae"]);
    });
  } else if (config.model == "bnf") {
    stages.Run("model", [&] {
      MfccPipelineOptions bo;
      bo.frame = FrameConfig::BnfInput();
      bo.deltas = false;
      std::vector<LabeledFrameSet> sets;
      for (const std::string &id : config.bnf_languages) {
        CorpusManifest m = full.SubsetByLanguage(id);
        if (m.utterances.empty()) Fail("no utterances for BNF language '{}'", id);
        sets.push_back(LabelFrames(m, ExtractMfccStore(m, bo), id));
      }
      BnfConfig bc = config.preset == "paper" ? BnfConfig::Paper() : BnfConfig::Desk();
      bc.seed = config.seed;
      BnfModel model = TrainMultilingual(sets, bc);
      SaveNetwork(config.output / "model.zrsn", model.net);
      eval_sets["bnf"] = ExtractBnfStore(model.net, ExtractMfccStore(eval, bo));
      WriteFeatureStore(config.output / "features" / "bnf", eval_sets["bnf"]);
    });
  }

  nlohmann::json report;
  report["config_hash"] = result.config_hash;
  report["seed"] = config.seed;
  report["results"] = nlohmann::json::object();
  std::set<std::string> wanted(config.eval_stages.begin(), config.eval_stages.end());
  if (wanted.count("sd")) {
    stages.Run("eval-sd", [&] {
      EvalPairSet pairs = GenerateEvalPairs(eval, EligibleWordTokens(eval));
      for (const auto &[name, store] : eval_sets)
        report["results"][name]["same_different"] = ToJson(SameDifferentAp(pairs, store), false);
    });
  }
  if (wanted.count("abx")) {
    stages.Run("eval-abx", [&] {
      AbxBuildOptions ao;
      ao.max_tokens_per_speaker = config.abx_max_tokens_per_speaker;
      AbxTripletSet triplets = BuildAbxTriplets(eval, ao);
      for (const auto &[name, store] : eval_sets)
        report["results"][name]["abx"] = ToJson(AbxErrorRates(triplets, store), false);
    });
  }
  {
    std::ofstream os(config.output / "report.json");
    if (!os) Fail("cannot write report in '{}'", config.output.string());
    os << report.dump(2) << "\n";
  }
  result.report = std::move(report);
  return result;
}

}  // namespace zrsw
