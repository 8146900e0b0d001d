// tests/common/fixtures.h

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

#ifndef ZRSW_TESTS_COMMON_FIXTURES_H_
#define ZRSW_TESTS_COMMON_FIXTURES_H_

#include <string>
#include <vector>

#include "zrsw/corpus/synth.h"

namespace zrsw::testing {

// A few speakers per language and a handful of utterances each; renders in
// well under a second.
inline SynthCorpus TinyWorld(std::uint64_t seed, const std::vector<std::string> &languages,
                             int utterances = 3) {
  SynthWorldOptions w;
  w.pool_size = 10;
  for (const std::string &id : languages) {
    SynthLanguageOptions l;
    l.id = id;
    l.inventory_size = 6;
    l.lexicon_size = 4;
    l.min_word_phones = 5;
    l.max_word_phones = 6;
    l.utterances_per_speaker = utterances;
    l.train_warps = {0.95, 1.05};
    l.eval_warps = {1.0};
    w.languages.push_back(l);
  }
  return SynthesizeCorpus(RandomSynthSpec(w, seed), seed);
}

}  // namespace zrsw::testing

#endif  // ZRSW_TESTS_COMMON_FIXTURES_H_
