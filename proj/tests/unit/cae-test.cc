// tests/unit/cae-test.cc

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

#include <doctest.h>

#include "../common/fixtures.h"
#include "zrsw/base/error.h"
#include "zrsw/cae/cae.h"
#include "zrsw/corpus/word-pairs.h"
#include "zrsw/dsp/extract.h"

using namespace zrsw;

namespace {

CaeConfig SmallConfig() {
  CaeConfig c = CaeConfig::Desk();
  c.widths = {16, 6};
  c.pretrain.epochs = 2;
  c.finetune.epochs = 4;
  c.max_frame_pairs = 2000;
  return c;
}

}  // namespace

TEST_CASE("paper preset keeps the published stack") {
  CaeConfig p = CaeConfig::Paper();
  CHECK(p.widths.size() == 9);
  CHECK(p.widths.front() == 100);
  CHECK(p.FeatureDim() == 39);
  CHECK(p.pretrain.initial_lr == doctest::Approx(2.5e-4));
  CHECK(p.pretrain.epochs == 5);
  CHECK(p.finetune.initial_lr == doctest::Approx(2.5e-5));
  CHECK(p.finetune.epochs == 60);
  CHECK(p.nonlinearity == Nonlinearity::kTanh);
  CaeConfig bad = p;
  bad.widths.clear();
  CHECK_THROWS_AS(bad.Validate(), Error);
}

TEST_CASE("cAE trains on aligned word pairs and encodes every frame") {
  SynthCorpus world = testing::TinyWorld(5, {"x"}, 4);
  CorpusManifest m = world.manifest;
  FeatureStore store = ExtractMfccStore(m, MfccPipelineOptions{});
  PairList pairs = GoldSameWordPairs(EligibleWordTokens(m, 5, 0.3));
  REQUIRE(!pairs.entries.empty());

  CaeConfig c = SmallConfig();
  CaeModel model = TrainCae(pairs, store, c);
  CHECK(model.net.layers.size() == c.widths.size() + 1);
  CHECK(model.net.TapIndex() == static_cast<int>(c.widths.size()) - 1);
  CHECK(model.net.OutputDim() == 39);
  CHECK(model.num_frame_pairs > 0);
  REQUIRE(model.finetune_loss.size() == 4);
  CHECK(model.finetune_loss.back() < model.finetune_loss.front());
  REQUIRE(model.pretrain_loss.size() == 2);

  const FeatureSequence &in = store.begin()->second;
  FeatureSequence out = ExtractCae(model.net, in);
  CHECK(out.NumFrames() == in.NumFrames());
  CHECK(out.Dim() == 6);
  CHECK(out.provenance == Provenance::kCae);
  CHECK(out.frame_shift == in.frame_shift);

  CaeModel again = TrainCae(pairs, store, c);
  CHECK(again.finetune_loss == model.finetune_loss);
  CHECK(ExtractCae(again.net, in).data == out.data);
}

TEST_CASE("cAE refuses pairs without features") {
  SynthCorpus world = testing::TinyWorld(6, {"x"}, 2);
  FeatureStore store = ExtractMfccStore(world.manifest, MfccPipelineOptions{});
  PairList pairs;
  pairs.entries.push_back({{"nope", 0.0, 0.3}, {"nope", 0.3, 0.6}, PairKind::kGold});
  CHECK_THROWS_AS(TrainCae(pairs, store, SmallConfig()), Error);
}
