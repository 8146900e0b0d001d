// tests/unit/bnf-test.cc

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
#include "zrsw/bnf/bnf.h"
#include "zrsw/dsp/extract.h"

using namespace zrsw;

namespace {

MfccPipelineOptions BnfInput() {
  MfccPipelineOptions o;
  o.frame = FrameConfig::BnfInput();
  o.deltas = false;
  return o;
}

BnfConfig SmallConfig() {
  BnfConfig c = BnfConfig::Desk();
  c.hidden.assign(6, 12);
  c.bottleneck = 5;
  c.head_hidden = 10;
  c.train.epochs = 2;
  c.train.batch_size = 128;
  return c;
}

}  // namespace

TEST_CASE("paper preset keeps the published shape") {
  BnfConfig p = BnfConfig::Paper();
  CHECK(p.hidden == std::vector<Index>(6, 625));
  CHECK(p.bottleneck == 39);
  CHECK(p.splice.size() == 7);
  CHECK(p.splice[5] == std::vector<int>{-6, -3, 0});
  CHECK(p.train.initial_lr == doctest::Approx(1e-3));
  CHECK(p.train.final_lr == doctest::Approx(1e-4));
  BnfConfig d = BnfConfig::Desk();
  CHECK(d.splice == p.splice);
  BnfConfig bad = p;
  bad.splice.pop_back();
  CHECK_THROWS_AS(bad.Validate(), Error);
}

TEST_CASE("frames take the label of the phone containing their center") {
  SynthCorpus world = testing::TinyWorld(3, {"p", "q"});
  CorpusManifest m = world.manifest.SubsetByLanguage("p");
  FeatureStore store = ExtractMfccStore(m, BnfInput());
  LabeledFrameSet set = LabelFrames(m, store, "p");
  set.Validate();
  CHECK(set.class_names.front() == "<sil>");
  CHECK(std::is_sorted(set.class_names.begin() + 1, set.class_names.end()));
  std::size_t seq = 0;
  for (const Utterance &u : m.utterances) {
    const FeatureSequence &f = store.at(u.id);
    REQUIRE(set.labels[seq].size() == static_cast<std::size_t>(f.NumFrames()));
    for (Index t = 0; t < f.NumFrames(); ++t) {
      double c = f.first_frame_center + t * f.frame_shift;
      std::string expect = "<sil>";
      for (const PhoneToken &p : m.phones)
        if (p.utterance == u.id && p.start <= c && c < p.end) expect = p.label;
      CHECK(set.class_names[set.labels[seq][t]] == expect);
    }
    ++seq;
  }
  CHECK(set.NumFrames() > 0);
  CHECK_THROWS_AS(LabelFrames(m, store, "q"), Error);
}

TEST_CASE("speaker means are appended to every frame") {
  SynthCorpus world = testing::TinyWorld(4, {"p"}, 2);
  FeatureStore store = ExtractMfccStore(world.manifest, BnfInput());
  FeatureStore aug = AppendSpeakerMeans(store, world.manifest);
  auto speaker_of = world.manifest.SpeakerOf();
  for (const std::string &spk : world.manifest.Speakers()) {
    Vector sum = Vector::Zero(40);
    Index n = 0;
    for (const auto &[utt, f] : store)
      if (speaker_of.at(utt) == spk) {
        sum += f.data.colwise().sum().transpose();
        n += f.NumFrames();
      }
    for (const auto &[utt, f] : aug)
      if (speaker_of.at(utt) == spk) {
        REQUIRE(f.Dim() == 80);
        CHECK((f.data.row(0).rightCols(40).transpose() - sum / n).norm() < 1e-9);
        CHECK(f.data.leftCols(40) == store.at(utt).data);
      }
  }
}

TEST_CASE("multilingual training keeps foreign heads untouched and is reproducible") {
  SynthCorpus world = testing::TinyWorld(7, {"a", "b", "c"});
  std::vector<LabeledFrameSet> sets;
  for (const char *id : {"a", "b", "c"}) {
    CorpusManifest m = world.manifest.SubsetByLanguage(id);
    sets.push_back(LabelFrames(m, ExtractMfccStore(m, BnfInput()), id));
  }
  std::size_t batches = 0, violations = 0;
  std::map<std::string, int> seen;
  GradientObserver watch = [&](const std::string &lang, const NetworkGradient &g) {
    ++batches;
    ++seen[lang];
    for (const auto &[head, layers] : g.heads) {
      double mag = 0;
      for (const LayerGradient &l : layers)
        mag = std::max({mag, l.weights.cwiseAbs().maxCoeff(), l.bias.cwiseAbs().maxCoeff()});
      if (head == lang ? mag == 0.0 : mag != 0.0) ++violations;
    }
  };
  BnfConfig c = SmallConfig();
  BnfModel model = TrainMultilingual(sets, c, watch);
  CHECK(batches == model.num_batches);
  CHECK(violations == 0);
  CHECK(seen.size() == 3);
  CHECK(model.net.heads.size() == 3);
  CHECK(model.net.TapIndex() == 6);
  CHECK(model.net.layers[6].nonlinearity == Nonlinearity::kLinear);
  CHECK(model.net.layers[6].batch_norm);
  for (int l = 0; l < 6; ++l) {
    CHECK(model.net.layers[l].nonlinearity == Nonlinearity::kRelu);
    CHECK(model.net.layers[l].batch_norm);
  }
  CHECK(model.epoch_loss.back() < model.epoch_loss.front());

  FeatureSequence in;
  in.data = sets[0].sequences[0];
  FeatureSequence out = ExtractBnf(model.net, in);
  CHECK(out.Dim() == 5);
  CHECK(out.NumFrames() == in.NumFrames());
  CHECK(out.provenance == Provenance::kBnf);
  CHECK(HeadAccuracy(model.net, sets[0]) > 1.0 / sets[0].NumClasses());

  BnfModel again = TrainMultilingual(sets, c);
  CHECK(again.epoch_loss == model.epoch_loss);
  CHECK(ExtractBnf(again.net, in).data == out.data);
}
