// tests/unit/pipeline-test.cc

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

#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "../common/fixtures.h"
#include "zrsw/base/error.h"
#include "zrsw/corpus/wav-io.h"
#include "zrsw/pipeline/config.h"
#include "zrsw/pipeline/run.h"

using namespace zrsw;
namespace fs = std::filesystem;

namespace {

ExperimentConfig Parse(const std::string &text) {
  std::istringstream is(text);
  return ReadExperimentConfig(is);
}

std::string Slurp(const fs::path &path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

// Writes a tiny synthetic corpus with wav files and returns its manifest path.
fs::path WriteTinyCorpus(const fs::path &dir) {
  fs::remove_all(dir);
  fs::create_directories(dir / "wav");
  SynthCorpus world = testing::TinyWorld(21, {"p"}, 4);
  for (Utterance &u : world.manifest.utterances) {
    u.audio_path = "wav/" + u.id + ".wav";
    WriteWav(dir / u.audio_path, u.samples, u.sample_rate);
  }
  SaveManifest(dir / "corpus.tsv", world.manifest);
  return dir / "corpus.tsv";
}

}  // namespace

TEST_CASE("config hashes ignore layout, order and spelled-out defaults") {
  ExperimentConfig a = Parse("[experiment]\nseed = 3\n[corpus]\nsynth = vtln\n");
  ExperimentConfig b = Parse(
      "; comment\n[corpus]\n  synth=vtln\ntrain_split = train\n\n[experiment]\nseed=3\n"
      "output = elsewhere\n[features]\nn_mels = 23\n");
  CHECK(a.Canonical() == b.Canonical());
  CHECK(a.Hash() == b.Hash());
  CHECK(a.Hash().size() == 16);
  ExperimentConfig c = Parse("[experiment]\nseed = 4\n[corpus]\nsynth = vtln\n");
  CHECK(c.Hash() != a.Hash());
}

TEST_CASE("FNV-1a reference values") {
  CHECK(Fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(Fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(Fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("config errors are reported, not defaulted") {
  CHECK_THROWS_AS(Parse("[corpus]\nsynth = vtln\n"), Error);
  CHECK_THROWS_AS(Parse("[experiment]\nseed = 1\nsede = 2\n[corpus]\nsynth = vtln\n"), Error);
  CHECK_THROWS_AS(Parse("[experiment]\nseed = 1\n[corpus]\nsynth = vtln\n[vtln]\nenabled = maybe\n"),
                  Error);
  CHECK_THROWS_AS(Parse("[experiment]\nseed = 1\n[corpus]\nsynth = moon\n"), Error);
  CHECK_THROWS_AS(Parse("[experiment]\nseed = 1\n"), Error);
  CHECK_THROWS_AS(Parse("[experiment]\nseed = 1\n[corpus]\nsynth = vtln\n[model]\ntype = bnf\n"),
                  Error);
  CHECK_THROWS_AS(
      Parse("[experiment]\nseed = 1\n[corpus]\nsynth = vtln\n[model]\ntype = cae\n"), Error);
}

TEST_CASE("a small pipeline run is reproducible and logs every stage") {
  fs::path root = fs::temp_directory_path() / "zrsw-pipeline-test";
  fs::path manifest = WriteTinyCorpus(root / "corpus");
  auto run = [&](const std::string &out) {
    ExperimentConfig c = Parse(
        "[experiment]\nseed = 5\n[corpus]\nmanifest = " + manifest.string() +
        "\neval_split = train\n[vtln]\nenabled = true\ngmm_components = 4\ngmm_iterations = 3\n"
        "[eval]\nstages = sd abx\n");
    c.output = root / out;
    fs::remove_all(c.output);
    return RunPipeline(c);
  };
  PipelineResult first = run("a"), second = run("b");
  CHECK(first.config_hash == second.config_hash);
  CHECK(Slurp(root / "a" / "report.json") == Slurp(root / "b" / "report.json"));
  CHECK(first.report["results"].contains("mfcc"));
  CHECK(first.report["results"].contains("mfcc+vtln"));
  CHECK(first.report["results"]["mfcc"].contains("abx"));
  for (const char *f : {"config.canonical", "corpus.tsv", "vtln.gmm", "warps.txt"})
    CHECK(fs::exists(root / "a" / f));
  std::string log = Slurp(root / "a" / "pipeline.log");
  for (const char *stage : {"corpus", "mfcc", "vtln", "eval-sd", "eval-abx"})
    CHECK(log.find(std::string("stage ") + stage + " ok") != std::string::npos);
  CHECK(first.stage_seconds.size() == 5);
}

TEST_CASE("a failing stage is named") {
  fs::path root = fs::temp_directory_path() / "zrsw-pipeline-fail";
  fs::path manifest = WriteTinyCorpus(root / "corpus");
  ExperimentConfig c = Parse("[experiment]\nseed = 5\n[corpus]\nmanifest = " + manifest.string() +
                             "\neval_split = nowhere\n");
  c.output = root / "out";
  try {
    RunPipeline(c);
    FAIL("expected a failure");
  } catch (const Error &e) {
    CHECK(std::string(e.what()).find("stage 'corpus' failed") != std::string::npos);
  }
  CHECK(Slurp(root / "out" / "pipeline.log").find("FAILED") != std::string::npos);
}
