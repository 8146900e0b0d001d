// pipeline/config.cc

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

#include "zrsw/pipeline/config.h"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "zrsw/base/error.h"

namespace zrsw {

namespace {

bool ParseBool(const std::string &key, const std::string &v) {
  std::string s = boost::algorithm::to_lower_copy(v);
  if (s == "true" || s == "yes" || s == "on" || s == "1") return true;
  if (s == "false" || s == "no" || s == "off" || s == "0") return false;
  Fail("{}: expected a boolean, got '{}'", key, v);
}

long long ParseInt(const std::string &key, const std::string &v) {
  std::size_t used = 0;
  long long n = 0;
  try {
    n = std::stoll(v, &used);
  } catch (const std::exception &) {
    used = 0;
  }
  if (used == 0 || used != v.size()) Fail("{}: expected an integer, got '{}'", key, v);
  return n;
}

std::vector<std::string> ParseList(const std::string &v) {
  std::vector<std::string> out;
  boost::algorithm::split(out, v, boost::algorithm::is_any_of(" \t,"),
                          boost::algorithm::token_compress_on);
  out.erase(std::remove(out.begin(), out.end(), std::string()), out.end());
  return out;
}

std::string JoinList(const std::vector<std::string> &v) { return boost::algorithm::join(v, " "); }

const char *BoolName(bool b) { return b ? "true" : "false"; }

using Setter = std::function<void(ExperimentConfig &, const std::string &key,
                                  const std::string &value)>;

const std::map<std::string, Setter> &Setters() {
  static const std::map<std::string, Setter> setters = {
      {"experiment.seed",
       [](ExperimentConfig &c, const std::string &k, const std::string &v) {
         long long n = ParseInt(k, v);
         if (n < 0) Fail("{}: seed must be non-negative", k);
         c.seed = static_cast<std::uint64_t>(n);
       }},
      {"experiment.output",
       [](ExperimentConfig &c, const std::string &, const std::string &v) { c.output = v; }},
      {"corpus.manifest",
       [](ExperimentConfig &c, const std::string &, const std::string &v) { c.manifest = v; }},
      {"corpus.synth",
       [](ExperimentConfig &c, const std::string &, const std::string &v) { c.synth = v; }},
      {"corpus.language",
       [](ExperimentConfig &c, const std::string &, const std::string &v) { c.language = v; }},
      {"corpus.train_split",
       [](ExperimentConfig &c, const std::string &, const std::string &v) { c.train_split = v; }},
      {"corpus.eval_split",
       [](ExperimentConfig &c, const std::string &, const std::string &v) { c.eval_split = v; }},
      {"features.n_mels",
       [](ExperimentConfig &c, const std::string &k, const std::string &v) {
         c.n_mels = static_cast<int>(ParseInt(k, v));
       }},
      {"features.cmn",
       [](ExperimentConfig &c, const std::string &k, const std::string &v) {
         c.cmn = ParseBool(k, v);
       }},
      {"features.deltas",
       [](ExperimentConfig &c, const std::string &k, const std::string &v) {
         c.deltas = ParseBool(k, v);
       }},
      {"vtln.enabled",
       [](ExperimentConfig &c, const std::string &k, const std::string &v) {
         c.vtln = ParseBool(k, v);
       }},
      {"vtln.gmm_components",
       [](ExperimentConfig &c, const std::string &k, const std::string &v) {
         c.gmm_components = static_cast<int>(ParseInt(k, v));
       }},
      {"vtln.gmm_iterations",
       [](ExperimentConfig &c, const std::string &k, const std::string &v) {
         c.gmm_iterations = static_cast<int>(ParseInt(k, v));
       }},
      {"model.type",
       [](ExperimentConfig &c, const std::string &, const std::string &v) { c.model = v; }},
      {"model.preset",
       [](ExperimentConfig &c, const std::string &, const std::string &v) { c.preset = v; }},
      {"model.cae_input",
       [](ExperimentConfig &c, const std::string &, const std::string &v) { c.cae_input = v; }},
      {"model.pairs",
       [](ExperimentConfig &c, const std::string &, const std::string &v) { c.pairs = v; }},
      {"model.bnf_languages",
       [](ExperimentConfig &c, const std::string &, const std::string &v) {
         c.bnf_languages = ParseList(v);
       }},
      {"eval.stages",
       [](ExperimentConfig &c, const std::string &, const std::string &v) {
         c.eval_stages = ParseList(v);
       }},
      {"eval.abx_max_tokens_per_speaker",
       [](ExperimentConfig &c, const std::string &k, const std::string &v) {
         c.abx_max_tokens_per_speaker = static_cast<int>(ParseInt(k, v));
       }},
  };
  return setters;
}

}  // namespace

void ExperimentConfig::Validate() const {
  if (manifest.empty() == synth.empty())
    Fail("config: set exactly one of corpus.manifest and corpus.synth");
  if (!synth.empty() && synth != "trend" && synth != "vtln")
    Fail("config: corpus.synth must be 'trend' or 'vtln', got '{}'", synth);
  if (n_mels < 2) Fail("config: features.n_mels must be at least 2");
  if (gmm_components < 1 || gmm_iterations < 0) Fail("config: bad GMM settings");
  if (model != "none" && model != "cae" && model != "bnf")
    Fail("config: model.type must be none, cae or bnf, got '{}'", model);
  if (preset != "desk" && preset != "paper")
    Fail("config: model.preset must be desk or paper, got '{}'", preset);
  if (cae_input != "mfcc" && cae_input != "vtln")
    Fail("config: model.cae_input must be mfcc or vtln, got '{}'", cae_input);
  if (pairs != "gold" && pairs != "manifest")
    Fail("config: model.pairs must be gold or manifest, got '{}'", pairs);
  // The stage graph is fixed (corpus, features, vtln, model, eval); the only
  // way to make it inconsistent is to consume a stage that is switched off.
  if (model == "cae" && cae_input == "vtln" && !vtln)
    Fail("config: model.cae_input = vtln needs vtln.enabled = true");
  if (model == "bnf" && bnf_languages.empty())
    Fail("config: model.type = bnf needs model.bnf_languages");
  for (const std::string &s : eval_stages)
    if (s != "sd" && s != "abx") Fail("config: unknown eval stage '{}'", s);
  if (abx_max_tokens_per_speaker < 0)
    Fail("config: eval.abx_max_tokens_per_speaker must be non-negative");
}

std::string ExperimentConfig::Canonical() const {
  std::string s;
  auto line = [&s](const char *key, const std::string &value) {
    s += fmt::format("{} = {}\n", key, value);
  };
  line("experiment.seed", std::to_string(seed));
  line("corpus.manifest", manifest);
  line("corpus.synth", synth);
  line("corpus.language", language);
  line("corpus.train_split", train_split);
  line("corpus.eval_split", eval_split);
  line("features.n_mels", std::to_string(n_mels));
  line("features.cmn", BoolName(cmn));
  line("features.deltas", BoolName(deltas));
  line("vtln.enabled", BoolName(vtln));
  line("vtln.gmm_components", std::to_string(gmm_components));
  line("vtln.gmm_iterations", std::to_string(gmm_iterations));
  line("model.type", model);
  line("model.preset", preset);
  line("model.cae_input", cae_input);
  line("model.pairs", pairs);
  line("model.bnf_languages", JoinList(bnf_languages));
  line("eval.stages", JoinList(eval_stages));
  line("eval.abx_max_tokens_per_speaker", std::to_string(abx_max_tokens_per_speaker));
  return s;
}

std::uint64_t Fnv1a64(const std::string &bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string ExperimentConfig::Hash() const { return fmt::format("{:016x}", Fnv1a64(Canonical())); }

ExperimentConfig ReadExperimentConfig(std::istream &is, const std::string &source) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error &e) {
    Fail("{}:{}: {}", source, e.line(), e.message());
  }
  ExperimentConfig c;
  bool have_seed = false;
  for (const auto &[section, body] : tree) {
    if (body.empty() && !body.data().empty())
      Fail("{}: key '{}' must be inside a section", source, section);
    for (const auto &[key, value] : body) {
      std::string full = boost::algorithm::to_lower_copy(section + "." + key);
      auto it = Setters().find(full);
      if (it == Setters().end()) Fail("{}: unknown setting '{}'", source, full);
      std::string v = boost::algorithm::trim_copy(value.data());
      try {
        it->second(c, full, v);
      } catch (const Error &e) {
        Fail("{}: {}", source, e.what());
      }
      if (full == "experiment.seed") have_seed = true;
    }
  }
  if (!have_seed) Fail("{}: experiment.seed is mandatory", source);
  c.Validate();
  return c;
}

ExperimentConfig LoadExperimentConfig(const std::filesystem::path &path) {
  std::ifstream is(path);
  if (!is) Fail("cannot open config '{}'", path.string());
  ExperimentConfig c = ReadExperimentConfig(is, path.string());
  // Relative corpus paths resolve against the config file's directory.
  if (!c.manifest.empty() && std::filesystem::path(c.manifest).is_relative())
    c.manifest = (path.parent_path() / c.manifest).lexically_normal().string();
  return c;
}

}  // namespace zrsw
