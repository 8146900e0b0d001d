// tests/unit/segeval-test.cc

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

#include <sstream>

#include <doctest.h>

#include "../common/fixtures.h"
#include "../common/metric-fixtures.h"
#include "zrsw/base/error.h"
#include "zrsw/segeval/segeval.h"

using namespace zrsw;

namespace {

CorpusManifest TwoUtterances() { return testing::SegTruth(); }
Segmentation FiveTokens() { return testing::SegHypothesis(); }

}  // namespace

TEST_CASE("cluster mappings follow counts and tie rules") {
  CorpusManifest m = TwoUtterances();
  Segmentation s = FiveTokens();
  CHECK(OverlappedWords(s, m) == std::vector<std::string>{"cat", "dog", "", "dog", "cat"});
  auto m2o = MapClusters(s, m, MappingMode::kManyToOne);
  CHECK(m2o == std::map<std::string, std::string>{{"c1", "cat"}, {"c2", "dog"}, {"c3", "cat"}});
  auto o2o = MapClusters(s, m, MappingMode::kOneToOneGreedy);
  CHECK(o2o == std::map<std::string, std::string>{{"c1", "cat"}, {"c2", "dog"}});
  CHECK(ClusterPurity(s, m, m2o) == doctest::Approx(80.0));
  CHECK(ClusterPurity(s, m, o2o) == doctest::Approx(60.0));
}

TEST_CASE("WER counts one insertion for many-to-one and one more substitution for one-to-one") {
  CorpusManifest m = TwoUtterances();
  Segmentation s = FiveTokens();
  WerCounts a = UnsupervisedWer(s, m, MapClusters(s, m, MappingMode::kManyToOne));
  CHECK(a.insertions == 1);
  CHECK(a.substitutions == 0);
  CHECK(a.deletions == 0);
  CHECK(a.reference_words == 4);
  CHECK(a.Wer() == doctest::Approx(25.0));
  WerCounts b = UnsupervisedWer(s, m, MapClusters(s, m, MappingMode::kOneToOneGreedy));
  CHECK(b.substitutions == 1);
  CHECK(b.Wer() == doctest::Approx(50.0));
}

TEST_CASE("Levenshtein alignment of word strings") {
  WerCounts c = AlignWords({"a", "b", "c", "d"}, {"a", "x", "d", "e"});
  CHECK(c.substitutions + c.insertions + c.deletions == 3);
  c = AlignWords({"a", "b"}, {});
  CHECK(c.deletions == 2);
  c = AlignWords({}, {"a"});
  CHECK(c.insertions == 1);
  CHECK_THROWS_AS(c.Wer(), Error);
}

TEST_CASE("boundary and token F-scores use phone-sized tolerance windows") {
  CorpusManifest m = TwoUtterances();
  Segmentation s = FiveTokens();
  // u1: hyp boundaries 0.1 0.4 0.42 0.7 0.75 0.95; true 0.1 0.4 0.7, all hit.
  // u2: hyp 0.2 0.5 0.8 (shared edge counted once); true 0.2 0.5 0.8.
  FScore b = BoundaryFScore(s, m);
  CHECK(b.hits == 6);
  CHECK(b.num_hyp == 9);
  CHECK(b.num_true == 6);
  CHECK(b.f == doctest::Approx(0.8));
  FScore t = TokenFScore(s, m);
  CHECK(t.hits == 4);
  CHECK(t.num_hyp == 5);
  CHECK(t.num_true == 4);
  CHECK(t.f == doctest::Approx(8.0 / 9.0));

  // Moving the dog onset past its first phone loses the token; the boundary
  // at 0.4 survives as the end of cat.
  s.tokens[1].start = 0.52;
  CHECK(TokenFScore(s, m).hits == 3);
  CHECK(BoundaryFScore(s, m).hits == 6);
}

TEST_CASE("speaker and gender purity") {
  CorpusManifest m = TwoUtterances();
  Segmentation s = FiveTokens();
  CHECK(AttributePurity(s, m, Attribute::kSpeaker) == doctest::Approx(80.0));
  CHECK(AttributePurity(s, m, Attribute::kGender) == doctest::Approx(80.0));
  SegEvalReport r = EvaluateSegmentation(s, m);
  CHECK(r.num_tokens == 5);
  CHECK(r.num_clusters == 4);
  CHECK(r.wer_many_to_one == doctest::Approx(25.0));
  CHECK(r.wer_one_to_one == doctest::Approx(50.0));
  CHECK(r.cluster_purity == doctest::Approx(80.0));
  CHECK(ToJson(r)["boundary_f"].get<double>() == doctest::Approx(0.8));
}

TEST_CASE("clusters balanced over twelve speakers sit at the purity floors") {
  CorpusManifest m;
  Segmentation s;
  testing::BalancedClusters(&m, &s);
  CHECK(AttributePurity(s, m, Attribute::kGender) ==
        doctest::Approx(testing::kGenderFloor).epsilon(1e-15));
  CHECK(AttributePurity(s, m, Attribute::kSpeaker) ==
        doctest::Approx(testing::kSpeakerFloor).epsilon(1e-15));
}

TEST_CASE("one-to-one purity never exceeds many-to-one purity") {
  SynthCorpus world = testing::TinyWorld(11, {"p"});
  const CorpusManifest &m = world.manifest;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Segmentation s = NaiveSegmentation(m, 0.25, 6, seed);
    s.Normalize(m);
    double many = ClusterPurity(s, m, MapClusters(s, m, MappingMode::kManyToOne));
    double one = ClusterPurity(s, m, MapClusters(s, m, MappingMode::kOneToOneGreedy));
    CHECK(one <= many);
  }
}

TEST_CASE("segmentations round-trip and are validated") {
  CorpusManifest m = TwoUtterances();
  std::stringstream ss;
  WriteSegmentation(ss, FiveTokens());
  Segmentation back = ReadSegmentation(ss);
  REQUIRE(back.tokens.size() == 5);
  CHECK(back.tokens[1].start == 0.42);
  CHECK(back.tokens[4].cluster == "c3");
  Segmentation overlap;
  overlap.tokens = {{"u1", 0.1, 0.5, "a"}, {"u1", 0.4, 0.6, "b"}};
  CHECK_THROWS_AS(overlap.Normalize(m), Error);
  Segmentation outside;
  outside.tokens = {{"u1", 0.9, 1.2, "a"}};
  CHECK_THROWS_AS(outside.Normalize(m), Error);
  std::istringstream bad("u1 0.1 x c\n");
  CHECK_THROWS_AS(ReadSegmentation(bad), Error);
}

TEST_CASE("downsampled embeddings pick evenly spaced frames") {
  Matrix seg(5, 2);
  for (Index t = 0; t < 5; ++t) seg.row(t) << t, 10 * t;
  Vector e = EmbedDownsample(seg, 3);
  CHECK(e == (Vector(6) << 0, 0, 2, 20, 4, 40).finished());
  CHECK(EmbedDownsample(seg.topRows(4), 1) == (Vector(2) << 2, 20).finished());
  CHECK(EmbedDownsample(seg.topRows(1), 3) == (Vector(6) << 0, 0, 0, 0, 0, 0).finished());
  CHECK_THROWS_AS(EmbedDownsample(Matrix(0, 2), 3), Error);
  CHECK_THROWS_AS(EmbedDownsample(seg, 0), Error);
}
