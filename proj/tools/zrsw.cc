// tools/zrsw.cc

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

// zrsw: command-line front end.
//
// Exit status: 0 on success, 1 when `trends` finds a failing trend, 2 on any
// error (bad arguments, unreadable input, failed stage).

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "zrsw/base/error.h"
#include "zrsw/base/parallel.h"
#include "zrsw/bnf/bnf.h"
#include "zrsw/cae/cae.h"
#include "zrsw/corpus/manifest.h"
#include "zrsw/corpus/synth.h"
#include "zrsw/corpus/wav-io.h"
#include "zrsw/corpus/word-pairs.h"
#include "zrsw/dsp/extract.h"
#include "zrsw/dsp/feature-io.h"
#include "zrsw/dsp/mel-bank.h"
#include "zrsw/eval/abx.h"
#include "zrsw/eval/report.h"
#include "zrsw/eval/same-different.h"
#include "zrsw/eval/similarity.h"
#include "zrsw/nnet/network-io.h"
#include "zrsw/pipeline/config.h"
#include "zrsw/pipeline/run.h"
#include "zrsw/pipeline/trends.h"
#include "zrsw/segeval/segeval.h"
#include "zrsw/vtln/diag-gmm.h"
#include "zrsw/vtln/warp-estimation.h"

namespace fs = std::filesystem;
using namespace zrsw;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitTrendFail = 1;
constexpr int kExitError = 2;

// Corpus selection shared by most subcommands.
struct CorpusArgs {
  std::string manifest;
  std::vector<std::string> splits;
  std::string language;

  void Add(CLI::App *app, bool required = true) {
    auto *opt = app->add_option("-m,--manifest", manifest, "Corpus manifest (TSV)");
    if (required) opt->required();
    opt->check(CLI::ExistingFile);
    app->add_option("--split", splits, "Restrict to these splits");
    app->add_option("--language", language, "Restrict to one language");
  }

  CorpusManifest Load(bool audio) const {
    CorpusManifest m = LoadManifest(manifest);
    if (!language.empty()) m = m.SubsetByLanguage(language);
    if (!splits.empty()) m = m.Subset(splits);
    if (m.utterances.empty()) Fail("no utterances selected from '{}'", manifest);
    if (audio) LoadAudio(m);
    return m;
  }
};

void WriteText(const fs::path &path, const std::string &text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream os(path);
  if (!os) Fail("cannot write '{}'", path.string());
  os << text;
}

FeatureStore RestrictTo(const FeatureStore &store, const CorpusManifest &m) {
  FeatureStore out;
  for (const Utterance &u : m.utterances) {
    auto it = store.find(u.id);
    if (it == store.end()) Fail("no features for utterance '{}'", u.id);
    out.emplace(u.id, it->second);
  }
  return out;
}

// synth -------------------------------------------------------------------

struct SynthArgs {
  std::string world = "trend";
  std::uint64_t seed = 1;
  std::string out;
};

void RunSynth(const SynthArgs &a) {
  SynthCorpus corpus = a.world == "trend" ? BuildTrendWorld(a.seed) : BuildVtlnWorld(a.seed);
  fs::path dir = a.out;
  fs::create_directories(dir / "wav");
  for (Utterance &u : corpus.manifest.utterances) {
    u.audio_path = "wav/" + u.id + ".wav";
    WriteWav(dir / u.audio_path, u.samples, u.sample_rate);
  }
  SaveManifest(dir / "corpus.tsv", corpus.manifest);
  std::ofstream os(dir / "true-warps.txt");
  WriteWarps(os, corpus.true_warps);
  spdlog::info("wrote {} utterances to {}", corpus.manifest.utterances.size(), dir.string());
}

// mfcc --------------------------------------------------------------------

struct MfccArgs {
  CorpusArgs corpus;
  std::string out;
  std::string warps;
  int n_mels = 23;
  bool no_cmn = false;
  bool no_deltas = false;
  bool bnf_input = false;
  bool csv = false;
};

void RunMfcc(const MfccArgs &a) {
  CorpusManifest m = a.corpus.Load(true);
  MfccPipelineOptions o;
  if (a.bnf_input) {
    o.frame = FrameConfig::BnfInput();
    o.deltas = false;
  } else {
    o.frame.n_mels = a.n_mels;
    o.deltas = !a.no_deltas;
  }
  o.cmn = !a.no_cmn;
  WarpAssignment warps;
  if (!a.warps.empty()) {
    std::ifstream is(a.warps);
    if (!is) Fail("cannot open warps '{}'", a.warps);
    warps = ReadWarps(is, a.warps);
  }
  FeatureStore store = ExtractMfccStore(m, o, a.warps.empty() ? nullptr : &warps);
  if (a.csv) {
    fs::create_directories(a.out);
    for (const auto &[utt, f] : store) {
      std::ofstream os(fs::path(a.out) / (utt + ".csv"));
      WriteFeaturesCsv(os, f.data);
    }
  } else {
    WriteFeatureStore(a.out, store);
  }
  spdlog::info("wrote features for {} utterances to {}", store.size(), a.out);
}

// vtln --------------------------------------------------------------------

struct VtlnArgs {
  CorpusArgs corpus;
  std::string train_split = "train";
  std::string gmm_in;
  std::string gmm_out;
  std::string warps_out = "-";
  int components = 64;
  int iterations = 20;
  std::uint64_t seed = 1;
};

void RunVtln(const VtlnArgs &a) {
  CorpusManifest m = a.corpus.Load(true);
  MfccPipelineOptions vf = DefaultVtlnFeatures();
  DiagonalGmm gmm;
  if (!a.gmm_in.empty()) {
    gmm = LoadGmm(a.gmm_in);
  } else {
    CorpusManifest train = m.Subset({a.train_split});
    if (train.utterances.empty()) Fail("no utterances in training split '{}'", a.train_split);
    GmmTrainOptions go;
    go.num_components = a.components;
    go.iterations = a.iterations;
    go.seed = a.seed;
    GmmTrainResult r = TrainGmmEm(StackFrames(ExtractMfccStore(train, vf)), go);
    spdlog::info("GMM log-likelihood {:.1f} -> {:.1f}", r.log_likelihood_trace.front(),
                 r.log_likelihood_trace.back());
    gmm = std::move(r.gmm);
    if (!a.gmm_out.empty()) SaveGmm(a.gmm_out, gmm);
  }
  WarpAssignment warps = EstimateWarps(m, gmm, WarpGrid(vf.frame), vf);
  std::ostringstream os;
  WriteWarps(os, warps);
  WriteText(a.warps_out, os.str());
}

// cae ---------------------------------------------------------------------

struct CaeArgs {
  CorpusArgs corpus;
  std::string features;
  std::string pairs = "gold";
  std::string preset = "desk";
  std::uint64_t seed = 1;
  std::string model;
  std::string model_out;
  std::string extract;
  std::string extract_out;
};

void RunCae(const CaeArgs &a) {
  DenseNetwork net;
  if (!a.model.empty()) {
    net = LoadNetwork(a.model);
  } else {
    if (a.corpus.manifest.empty() || a.features.empty())
      Fail("training needs --manifest and --features (or pass --model)");
    CorpusManifest m = a.corpus.Load(false);
    FeatureStore store = RestrictTo(ReadFeatureStore(a.features), m);
    PairList pairs;
    if (a.pairs == "gold") {
      pairs = GoldSameWordPairs(EligibleWordTokens(m));
    } else {
      for (const SegmentPair &p : m.pairs.entries)
        if (m.TryFind(p.a.utterance) && m.TryFind(p.b.utterance)) pairs.entries.push_back(p);
    }
    if (pairs.entries.empty()) Fail("no training pairs");
    CaeConfig c = a.preset == "paper" ? CaeConfig::Paper() : CaeConfig::Desk();
    c.seed = a.seed;
    CaeModel model = TrainCae(pairs, store, c);
    spdlog::info("cAE fine-tuned on {} frame pairs, final loss {:.4f}", model.num_frame_pairs,
                 model.finetune_loss.empty() ? 0.0 : model.finetune_loss.back());
    net = std::move(model.net);
    if (!a.model_out.empty()) SaveNetwork(a.model_out, net);
  }
  if (!a.extract.empty()) {
    if (a.extract_out.empty()) Fail("--extract needs --extract-out");
    WriteFeatureStore(a.extract_out, ExtractCaeStore(net, ReadFeatureStore(a.extract)));
  }
}

// bnf ---------------------------------------------------------------------

struct BnfArgs {
  std::string manifest;
  std::vector<std::string> languages;
  std::string preset = "desk";
  std::uint64_t seed = 1;
  std::string model;
  std::string model_out;
  std::string extract;
  std::string extract_out;
};

void RunBnf(const BnfArgs &a) {
  DenseNetwork net;
  if (!a.model.empty()) {
    net = LoadNetwork(a.model);
  } else {
    if (a.manifest.empty() || a.languages.empty())
      Fail("training needs --manifest and --languages (or pass --model)");
    CorpusManifest full = LoadManifest(a.manifest);
    MfccPipelineOptions bo;
    bo.frame = FrameConfig::BnfInput();
    bo.deltas = false;
    std::vector<LabeledFrameSet> sets;
    for (const std::string &id : a.languages) {
      CorpusManifest m = full.SubsetByLanguage(id);
      if (m.utterances.empty()) Fail("no utterances for language '{}'", id);
      LoadAudio(m);
      sets.push_back(LabelFrames(m, ExtractMfccStore(m, bo), id));
    }
    BnfConfig c = a.preset == "paper" ? BnfConfig::Paper() : BnfConfig::Desk();
    c.seed = a.seed;
    BnfModel model = TrainMultilingual(sets, c);
    for (const LabeledFrameSet &s : sets)
      spdlog::info("head {} frame accuracy {:.3f}", s.language, HeadAccuracy(model.net, s));
    net = std::move(model.net);
    if (!a.model_out.empty()) SaveNetwork(a.model_out, net);
  }
  if (!a.extract.empty()) {
    if (a.extract_out.empty()) Fail("--extract needs --extract-out");
    WriteFeatureStore(a.extract_out, ExtractBnfStore(net, ReadFeatureStore(a.extract)));
  }
}

// eval-sd / eval-abx / eval-seg --------------------------------------------

struct EvalSdArgs {
  CorpusArgs corpus;
  std::string features;
  std::string json = "-";
  bool curve = false;
};

void RunEvalSd(const EvalSdArgs &a) {
  CorpusManifest m = a.corpus.Load(false);
  FeatureStore store = RestrictTo(ReadFeatureStore(a.features), m);
  EvalPairSet pairs = GenerateEvalPairs(m, EligibleWordTokens(m));
  PrecisionRecallCurve c = SameDifferentAp(pairs, store);
  spdlog::info("AP {:.4f} over {} pairs ({} SWDP)", c.average_precision, c.num_pairs, c.num_swdp);
  WriteText(a.json, ToJson(c, a.curve).dump(2) + "\n");
}

struct EvalAbxArgs {
  CorpusArgs corpus;
  std::string features;
  std::string json = "-";
  int max_tokens_per_speaker = 0;
  std::string condition = "both";
  bool flat = false;
  bool cells = false;
};

void RunEvalAbx(const EvalAbxArgs &a) {
  CorpusManifest m = a.corpus.Load(false);
  FeatureStore store = RestrictTo(ReadFeatureStore(a.features), m);
  AbxBuildOptions o;
  o.max_tokens_per_speaker = a.max_tokens_per_speaker;
  o.within = a.condition != "cross";
  o.cross = a.condition != "within";
  AbxTripletSet set = BuildAbxTriplets(m, o);
  AbxResult r = AbxErrorRates(set, store, a.flat ? AbxAveraging::kFlat : AbxAveraging::kHierarchical);
  spdlog::info("ABX within {:.2f}% cross {:.2f}% ({} triplets)", r.within_error, r.cross_error,
               set.triplets.size());
  WriteText(a.json, ToJson(r, a.cells).dump(2) + "\n");
}

struct EvalSegArgs {
  CorpusArgs corpus;
  std::string segmentation;
  std::string json = "-";
};

void RunEvalSeg(const EvalSegArgs &a) {
  CorpusManifest m = a.corpus.Load(false);
  Segmentation seg = LoadSegmentation(a.segmentation);
  seg.Normalize(m);
  WriteText(a.json, ToJson(EvaluateSegmentation(seg, m)).dump(2) + "\n");
}

// simmat ------------------------------------------------------------------

struct SimmatArgs {
  std::string features;
  std::string a, b;
  double a_start = 0, a_end = -1, b_start = 0, b_end = -1;
  double clip = 0.0;
  std::string pgm;
  std::string csv;
};

Matrix Segment(const FeatureStore &store, const std::string &utt, double start, double end) {
  auto it = store.find(utt);
  if (it == store.end()) Fail("no features for utterance '{}'", utt);
  if (end < 0) return it->second.data;
  return it->second.Slice(start, end);
}

void RunSimmat(const SimmatArgs &a) {
  FeatureStore store = ReadFeatureStore(a.features);
  Matrix sim = SimilarityMatrix(Segment(store, a.a, a.a_start, a.a_end),
                                Segment(store, a.b, a.b_start, a.b_end));
  if (a.pgm.empty() && a.csv.empty()) Fail("give --pgm and/or --csv");
  if (!a.pgm.empty()) WriteSimilarityPgmFile(sim, a.clip, a.pgm);
  if (!a.csv.empty()) {
    std::ostringstream os;
    WriteSimilarityCsv(sim, os);
    WriteText(a.csv, os.str());
  }
}

// trends / run ------------------------------------------------------------

struct TrendArgs {
  std::uint64_t seed = 1;
  int num_seeds = 5;
  std::vector<std::string> only;
  double margin = 0.02;
  std::string json;
};

int RunTrends(const TrendArgs &a) {
  TrendOptions o;
  o.seed = a.seed;
  o.num_seeds = a.num_seeds;
  o.only.insert(a.only.begin(), a.only.end());
  o.margin = a.margin;
  TrendReport report = RunTrendSuite(o);
  std::cout << report.Table();
  if (!a.json.empty()) WriteText(a.json, report.ToJson().dump(2) + "\n");
  return report.AllPass() ? kExitOk : kExitTrendFail;
}

void RunConfig(const std::string &path, const std::string &output) {
  ExperimentConfig c = LoadExperimentConfig(path);
  if (!output.empty()) c.output = output;
  PipelineResult r = RunPipeline(c);
  spdlog::info("config {} seed {}: report in {}", r.config_hash, c.seed,
               (c.output / "report.json").string());
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Zero-resource subword modeling toolkit"};
  app.require_subcommand(1);
  int threads = 0;
  std::string log_level = "info";
  app.add_option("--threads", threads,
                 "Worker threads (default: $ZRSW_THREADS, else 1)")
      ->check(CLI::PositiveNumber);
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off");

  SynthArgs synth;
  auto *c_synth = app.add_subcommand("synth", "Render a synthetic corpus (wav + manifest)");
  c_synth->add_option("--world", synth.world, "trend or vtln")
      ->check(CLI::IsMember({"trend", "vtln"}));
  c_synth->add_option("--seed", synth.seed);
  c_synth->add_option("-o,--out", synth.out, "Output directory")->required();

  MfccArgs mfcc;
  auto *c_mfcc = app.add_subcommand("mfcc", "Extract MFCC features (optionally VTLN-warped)");
  mfcc.corpus.Add(c_mfcc);
  c_mfcc->add_option("-o,--out", mfcc.out, "Feature directory")->required();
  c_mfcc->add_option("--warps", mfcc.warps, "Per-speaker warp file")->check(CLI::ExistingFile);
  c_mfcc->add_option("--n-mels", mfcc.n_mels);
  c_mfcc->add_flag("--no-cmn", mfcc.no_cmn);
  c_mfcc->add_flag("--no-deltas", mfcc.no_deltas);
  c_mfcc->add_flag("--bnf-input", mfcc.bnf_input, "40 mels, 40 cepstra, no deltas");
  c_mfcc->add_flag("--csv", mfcc.csv, "Write one CSV per utterance instead");

  VtlnArgs vtln;
  auto *c_vtln = app.add_subcommand("vtln", "Train the VTLN GMM and estimate speaker warps");
  vtln.corpus.Add(c_vtln);
  c_vtln->add_option("--train-split", vtln.train_split);
  c_vtln->add_option("--gmm", vtln.gmm_in, "Use this GMM instead of training")
      ->check(CLI::ExistingFile);
  c_vtln->add_option("--gmm-out", vtln.gmm_out);
  c_vtln->add_option("--warps-out", vtln.warps_out);
  c_vtln->add_option("--components", vtln.components)->check(CLI::PositiveNumber);
  c_vtln->add_option("--iterations", vtln.iterations)->check(CLI::NonNegativeNumber);
  c_vtln->add_option("--seed", vtln.seed);

  CaeArgs cae;
  auto *c_cae = app.add_subcommand("cae", "Train a correspondence autoencoder and/or extract");
  cae.corpus.Add(c_cae, false);
  c_cae->add_option("--features", cae.features, "Input feature directory");
  c_cae->add_option("--pairs", cae.pairs, "gold or manifest")
      ->check(CLI::IsMember({"gold", "manifest"}));
  c_cae->add_option("--preset", cae.preset)->check(CLI::IsMember({"desk", "paper"}));
  c_cae->add_option("--seed", cae.seed);
  c_cae->add_option("--model", cae.model, "Load a trained model")->check(CLI::ExistingFile);
  c_cae->add_option("--model-out", cae.model_out);
  c_cae->add_option("--extract", cae.extract, "Feature directory to encode");
  c_cae->add_option("--extract-out", cae.extract_out);

  BnfArgs bnf;
  auto *c_bnf = app.add_subcommand("bnf", "Train a multilingual bottleneck network and/or extract");
  c_bnf->add_option("-m,--manifest", bnf.manifest)->check(CLI::ExistingFile);
  c_bnf->add_option("--languages", bnf.languages, "Training languages")->delimiter(',');
  c_bnf->add_option("--preset", bnf.preset)->check(CLI::IsMember({"desk", "paper"}));
  c_bnf->add_option("--seed", bnf.seed);
  c_bnf->add_option("--model", bnf.model, "Load a trained model")->check(CLI::ExistingFile);
  c_bnf->add_option("--model-out", bnf.model_out);
  c_bnf->add_option("--extract", bnf.extract, "Feature directory (mfcc --bnf-input)");
  c_bnf->add_option("--extract-out", bnf.extract_out);

  EvalSdArgs sd;
  auto *c_sd = app.add_subcommand("eval-sd", "Same-different average precision");
  sd.corpus.Add(c_sd);
  c_sd->add_option("-f,--features", sd.features)->required();
  c_sd->add_option("--json", sd.json);
  c_sd->add_flag("--curve", sd.curve, "Include the precision-recall curve");

  EvalAbxArgs abx;
  auto *c_abx = app.add_subcommand("eval-abx", "ABX phone discriminability");
  abx.corpus.Add(c_abx);
  c_abx->add_option("-f,--features", abx.features)->required();
  c_abx->add_option("--json", abx.json);
  c_abx->add_option("--max-tokens-per-speaker", abx.max_tokens_per_speaker)
      ->check(CLI::NonNegativeNumber);
  c_abx->add_option("--condition", abx.condition)
      ->check(CLI::IsMember({"within", "cross", "both"}));
  c_abx->add_flag("--flat", abx.flat, "Average over triplets instead of hierarchically");
  c_abx->add_flag("--cells", abx.cells, "Include per-cell error rates");

  EvalSegArgs seg;
  auto *c_seg = app.add_subcommand("eval-seg", "Segmentation and clustering metrics");
  seg.corpus.Add(c_seg);
  c_seg->add_option("-s,--segmentation", seg.segmentation)->required()->check(CLI::ExistingFile);
  c_seg->add_option("--json", seg.json);

  SimmatArgs sim;
  auto *c_sim = app.add_subcommand("simmat", "Frame cosine-similarity matrix of two segments");
  c_sim->add_option("-f,--features", sim.features)->required();
  c_sim->add_option("--a", sim.a)->required();
  c_sim->add_option("--b", sim.b)->required();
  c_sim->add_option("--a-start", sim.a_start);
  c_sim->add_option("--a-end", sim.a_end, "Negative = whole utterance");
  c_sim->add_option("--b-start", sim.b_start);
  c_sim->add_option("--b-end", sim.b_end);
  c_sim->add_option("--clip", sim.clip, "Similarities below this map to black");
  c_sim->add_option("--pgm", sim.pgm);
  c_sim->add_option("--csv", sim.csv);

  TrendArgs trends;
  auto *c_trends = app.add_subcommand("trends", "Synthetic trend experiments");
  c_trends->add_option("--seed", trends.seed);
  c_trends->add_option("--num-seeds", trends.num_seeds)->check(CLI::PositiveNumber);
  c_trends->add_option("--only", trends.only, "vtln, cae, bnf, rank")->delimiter(',');
  c_trends->add_option("--margin", trends.margin, "AP margin of the directional checks");
  c_trends->add_option("--json", trends.json);

  std::string config_path, config_output;
  auto *c_run = app.add_subcommand("run", "Run a pipeline described by a config file");
  c_run->add_option("config", config_path)->required()->check(CLI::ExistingFile);
  c_run->add_option("-o,--output", config_output, "Override experiment.output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    auto level = spdlog::level::from_str(log_level);
    if (level == spdlog::level::off && log_level != "off") Fail("unknown log level '{}'", log_level);
    spdlog::set_level(level);
    spdlog::set_default_logger(spdlog::stderr_logger_mt("zrsw"));
    spdlog::set_level(level);
    spdlog::set_pattern("[%H:%M:%S.%e] %l %v");
    if (threads > 0) SetDefaultThreads(threads);

    if (*c_synth) RunSynth(synth);
    else if (*c_mfcc) RunMfcc(mfcc);
    else if (*c_vtln) RunVtln(vtln);
    else if (*c_cae) RunCae(cae);
    else if (*c_bnf) RunBnf(bnf);
    else if (*c_sd) RunEvalSd(sd);
    else if (*c_abx) RunEvalAbx(abx);
    else if (*c_seg) RunEvalSeg(seg);
    else if (*c_sim) RunSimmat(sim);
    else if (*c_trends) return RunTrends(trends);
    else if (*c_run) RunConfig(config_path, config_output);
  } catch (const std::exception &e) {
    spdlog::error("{}", e.what());
    return kExitError;
  }
  return kExitOk;
}
