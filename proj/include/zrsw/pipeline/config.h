// pipeline/config.h

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

#ifndef ZRSW_PIPELINE_CONFIG_H_
#define ZRSW_PIPELINE_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace zrsw {

// Batch experiment description, read from an INI file:
//
//   [experiment]
//   seed = 7
//   output = out/run1
//
//   [corpus]
//   synth = trend          ; or: manifest = data/corpus.tsv
//   language = t
//
//   [vtln]
//   enabled = true
//
//   [model]
//   type = cae             ; none | cae | bnf
//
//   [eval]
//   stages = sd abx
//
// Every key has a default except experiment.seed. Unknown sections or keys
// are errors, so typos cannot silently fall back to defaults.
struct ExperimentConfig {
  std::uint64_t seed = 0;
  std::filesystem::path output = "zrsw-out";

  // Corpus: exactly one of `manifest` and `synth`.
  std::string manifest;
  std::string synth;              // "trend" or "vtln"
  std::string language;           // restrict to one language; empty = all
  std::string train_split = "train";
  std::string eval_split = "eval";

  int n_mels = 23;
  bool cmn = true;
  bool deltas = true;

  bool vtln = false;
  int gmm_components = 64;
  int gmm_iterations = 20;

  std::string model = "none";     // none | cae | bnf
  std::string preset = "desk";    // desk | paper
  std::string cae_input = "vtln"; // mfcc | vtln
  std::string pairs = "gold";     // gold | manifest
  std::vector<std::string> bnf_languages;

  std::vector<std::string> eval_stages{"sd"};  // sd, abx
  int abx_max_tokens_per_speaker = 0;

  /// Checks value domains and stage dependencies.
  void Validate() const;

  /// One "section.key = value" line per semantic setting, in fixed order,
  /// with defaults filled in. Two files that differ only in whitespace,
  /// comments, key order or explicitly spelled defaults canonicalize
  /// identically. The output directory is not part of the canonical form.
  std::string Canonical() const;

  /// FNV-1a 64 of Canonical(), as 16 hex digits.
  std::string Hash() const;
};

ExperimentConfig ReadExperimentConfig(std::istream &is,
                                      const std::string &source = "<stream>");
ExperimentConfig LoadExperimentConfig(const std::filesystem::path &path);

std::uint64_t Fnv1a64(const std::string &bytes);

}  // namespace zrsw

#endif  // ZRSW_PIPELINE_CONFIG_H_
