// corpus/word-pairs.h

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

#ifndef ZRSW_CORPUS_WORD_PAIRS_H_
#define ZRSW_CORPUS_WORD_PAIRS_H_

#include <cstddef>
#include <string>
#include <vector>

#include "zrsw/corpus/manifest.h"

namespace zrsw {

/// Tokens with at least min_chars Unicode characters and min_duration
/// seconds, ordered by (utterance, start).
std::vector<WordToken> EligibleWordTokens(const CorpusManifest &manifest,
                                          std::size_t min_chars = 5,
                                          double min_duration = 0.5);

struct LabeledPair {
  std::size_t a = 0;  // indices into EvalPairSet::tokens, a < b
  std::size_t b = 0;
  bool same_word = false;     // case-sensitive orthography match
  bool same_speaker = false;

  bool IsSwdp() const { return same_word && !same_speaker; }
};

struct EvalPairSet {
  std::vector<WordToken> tokens;
  std::vector<std::string> speakers;  // speaker of tokens[i]
  std::vector<LabeledPair> pairs;     // all C(n, 2) unordered pairs

  std::size_t CountSameWord() const;
  std::size_t CountSwdp() const;
};

/// Every unordered token pair labeled SW/DW and same/different speaker.
/// Throws if fewer than two tokens are given.
EvalPairSet GenerateEvalPairs(const CorpusManifest &manifest,
                              const std::vector<WordToken> &tokens);

/// All same-word token couples as GOLD pairs.
PairList GoldSameWordPairs(const std::vector<WordToken> &tokens);

}  // namespace zrsw

#endif  // ZRSW_CORPUS_WORD_PAIRS_H_
