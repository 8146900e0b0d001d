// corpus/word-pairs.cc

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

#include "zrsw/corpus/word-pairs.h"

#include <algorithm>

#include "zrsw/base/error.h"

namespace zrsw {

std::vector<WordToken> EligibleWordTokens(const CorpusManifest &manifest,
                                          std::size_t min_chars,
                                          double min_duration) {
  std::vector<WordToken> out;
  for (const WordToken &w : manifest.words)
    if (Utf8Length(w.orthography) >= min_chars &&
        w.Duration() >= min_duration - 1e-9)
      out.push_back(w);
  std::stable_sort(out.begin(), out.end(), [](const WordToken &x, const WordToken &y) {
    if (x.utterance != y.utterance) return x.utterance < y.utterance;
    return x.start < y.start;
  });
  return out;
}

std::size_t EvalPairSet::CountSameWord() const {
  return std::count_if(pairs.begin(), pairs.end(),
                       [](const LabeledPair &p) { return p.same_word; });
}

std::size_t EvalPairSet::CountSwdp() const {
  return std::count_if(pairs.begin(), pairs.end(),
                       [](const LabeledPair &p) { return p.IsSwdp(); });
}

EvalPairSet GenerateEvalPairs(const CorpusManifest &manifest,
                              const std::vector<WordToken> &tokens) {
  if (tokens.size() < 2)
    Fail("need at least 2 word tokens to form pairs, got {}", tokens.size());
  EvalPairSet set;
  set.tokens = tokens;
  for (const WordToken &w : tokens) set.speakers.push_back(manifest.Find(w.utterance).speaker);
  const std::size_t n = tokens.size();
  set.pairs.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      set.pairs.push_back({i, j, tokens[i].orthography == tokens[j].orthography,
                           set.speakers[i] == set.speakers[j]});
  return set;
}

PairList GoldSameWordPairs(const std::vector<WordToken> &tokens) {
  PairList list;
  for (std::size_t i = 0; i < tokens.size(); ++i)
    for (std::size_t j = i + 1; j < tokens.size(); ++j)
      if (tokens[i].orthography == tokens[j].orthography)
        list.entries.push_back({{tokens[i].utterance, tokens[i].start, tokens[i].end},
                                {tokens[j].utterance, tokens[j].start, tokens[j].end},
                                PairKind::kGold});
  return list;
}

}  // namespace zrsw
