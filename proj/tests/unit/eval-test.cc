// tests/unit/eval-test.cc

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

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include <doctest.h>

#include "../common/metric-fixtures.h"
#include "../common/oracles.h"
#include "zrsw/base/error.h"
#include "zrsw/corpus/word-pairs.h"
#include "zrsw/eval/abx.h"
#include "zrsw/eval/report.h"
#include "zrsw/eval/same-different.h"
#include "zrsw/eval/similarity.h"

using namespace zrsw;

namespace {

std::vector<ScoredPair> MakePairs(std::initializer_list<std::tuple<double, bool, bool>> rows) {
  std::vector<ScoredPair> out;
  for (auto [c, same, swdp] : rows) out.push_back({c, same, swdp});
  return out;
}

using testing::AbxFixture;

}  // namespace

TEST_CASE("AP of a hand-ranked list") {
  PrecisionRecallCurve c = AveragePrecision(testing::HandRankedPairs());
  CHECK(c.average_precision == doctest::Approx(testing::kHandRankedAp).epsilon(1e-15));
  CHECK(c.num_pairs == 5);
  CHECK(c.num_same_word == 3);
  CHECK(c.num_swdp == 2);
}

TEST_CASE("tied costs form a single step of the curve") {
  auto pairs = MakePairs({{0.1, true, true}, {0.1, false, false}, {0.2, true, true}});
  CHECK(AveragePrecision(pairs).average_precision == doctest::Approx(7.0 / 12.0).epsilon(1e-15));
  // Reordering tied entries cannot change the result.
  auto swapped = MakePairs({{0.1, false, false}, {0.1, true, true}, {0.2, true, true}});
  CHECK(AveragePrecision(swapped).average_precision ==
        AveragePrecision(pairs).average_precision);
}

TEST_CASE("AP matches a brute-force threshold sweep") {
  std::mt19937_64 rng(19);
  std::uniform_int_distribution<int> level(0, 30);
  std::bernoulli_distribution coin(0.3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<ScoredPair> pairs;
    std::vector<double> costs;
    std::vector<bool> same, swdp;
    for (int k = 0; k < 80; ++k) {
      bool s = coin(rng), d = s && coin(rng) ? false : s;
      double c = level(rng) / 30.0;  // coarse levels force ties
      pairs.push_back({c, s, d});
      costs.push_back(c);
      same.push_back(s);
      swdp.push_back(d);
    }
    pairs.push_back({0.5, true, true});
    costs.push_back(0.5);
    same.push_back(true);
    swdp.push_back(true);
    CHECK(AveragePrecision(pairs).average_precision ==
          doctest::Approx(testing::SweepAveragePrecision(costs, same, swdp)).epsilon(1e-12));
  }
}

TEST_CASE("AP rejects inconsistent labels") {
  CHECK_THROWS_AS(AveragePrecision(MakePairs({{0.1, true, false}})), Error);
  CHECK_THROWS_AS(AveragePrecision(MakePairs({{0.1, false, true}})), Error);
}

TEST_CASE("same-different costs are cosine DTW over word segments") {
  AbxFixture fx;
  CorpusManifest m = fx.manifest;
  m.words = {{"u1", "alpha", 0.1, 0.4}, {"u3", "alpha", 0.1, 0.4}, {"u2", "beta", 0.1, 0.4},
             {"u4", "alpha", 0.1, 0.3}};
  m.Validate();
  EvalPairSet set = GenerateEvalPairs(m, m.words);
  REQUIRE(set.pairs.size() == 6);
  std::vector<double> costs = PairCosts(set, fx.store);
  for (std::size_t k = 0; k < set.pairs.size(); ++k) {
    const WordToken &a = set.tokens[set.pairs[k].a], &b = set.tokens[set.pairs[k].b];
    double oracle = testing::NaiveCosineDtw(fx.store.at(a.utterance).Slice(a.start, a.end),
                                            fx.store.at(b.utterance).Slice(b.start, b.end));
    CHECK(costs[k] == doctest::Approx(oracle).epsilon(1e-12));
  }
  CHECK(set.CountSameWord() == 3);
  CHECK(set.CountSwdp() == 2);
}

TEST_CASE("ABX fixture reproduces hand-computed error rates") {
  AbxFixture fx;
  AbxTripletSet set = BuildAbxTriplets(fx.manifest);
  REQUIRE(set.triphones.size() == 5);
  std::size_t within = 0, cross = 0;
  for (const AbxTriplet &t : set.triplets)
    (t.condition == SpeakerCondition::kWithin ? within : cross)++;
  CHECK(within == 2);
  CHECK(cross == 7);

  AbxResult h = AbxErrorRates(set, fx.store);
  CHECK(h.within_error == doctest::Approx(testing::kAbxWithin).epsilon(1e-12));
  CHECK(h.cross_error == doctest::Approx(testing::kAbxCross).epsilon(1e-12));
  AbxResult flat = AbxErrorRates(set, fx.store, AbxAveraging::kFlat);
  CHECK(flat.within_error == doctest::Approx(50.0).epsilon(1e-12));
  CHECK(flat.cross_error == doctest::Approx(testing::kAbxCrossFlat).epsilon(1e-12));
  CHECK(h.num_cross == 7);
}

TEST_CASE("ABX triplets equal a brute-force enumeration of triphone tokens") {
  AbxFixture fx;
  std::vector<Triphone> tri = ExtractTriphones(fx.manifest);
  AbxTripletSet set = BuildAbxTriplets(fx.manifest);
  std::set<std::tuple<std::string, std::string, std::string>> expect, got;
  auto key = [](const Triphone &t) { return t.utterance + "@" + std::to_string(t.start); };
  for (const Triphone &a : tri)
    for (const Triphone &b : tri)
      for (const Triphone &x : tri) {
        bool contrast = a.speaker == b.speaker && a.labels[0] == b.labels[0] &&
                        a.labels[2] == b.labels[2] && a.labels[1] != b.labels[1];
        if (contrast && x.labels == a.labels && key(x) != key(a))
          expect.insert({key(a), key(b), key(x)});
      }
  for (const AbxTriplet &t : set.triplets)
    got.insert({key(set.triphones[t.a]), key(set.triphones[t.b]), key(set.triphones[t.x])});
  CHECK(got == expect);
  CHECK(got.size() == set.triplets.size());
}

TEST_CASE("ABX error is zero for perfectly separated categories") {
  AbxFixture fx;
  for (auto &[utt, f] : fx.store) {
    bool b = utt == "u1" || utt == "u3" || utt == "u5";
    f.data.col(0).setConstant(b ? 1.0 : 0.0);
    f.data.col(1).setConstant(b ? 0.0 : 1.0);
  }
  AbxResult r = AbxErrorRates(BuildAbxTriplets(fx.manifest), fx.store);
  CHECK(r.within_error == 0.0);
  CHECK(r.cross_error == 0.0);
}

TEST_CASE("ABX speaker caps and condition filters") {
  AbxFixture fx;
  AbxBuildOptions o;
  o.within = false;
  AbxTripletSet cross_only = BuildAbxTriplets(fx.manifest, o);
  for (const AbxTriplet &t : cross_only.triplets) CHECK(t.condition == SpeakerCondition::kCross);
  o.max_tokens_per_speaker = 1;
  AbxTripletSet capped = BuildAbxTriplets(fx.manifest, o);
  CHECK(capped.triplets.size() < cross_only.triplets.size());
  CHECK(ParseSpeakerCondition("cross") == SpeakerCondition::kCross);
  CHECK_THROWS_AS(ParseSpeakerCondition("across"), Error);
}

TEST_CASE("similarity matrices and their images") {
  Matrix x(2, 2), y(3, 2);
  x << 1, 0, 0, 2;
  y << 1, 0, 1, 1, 0, -3;
  Matrix s = SimilarityMatrix(x, y);
  CHECK(s(0, 0) == doctest::Approx(1.0));
  CHECK(s(0, 1) == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(s(1, 2) == doctest::Approx(-1.0));
  std::ostringstream pgm;
  WriteSimilarityPgm(s, 0.0, pgm);
  std::string img = pgm.str();
  CHECK(img.rfind("P5\n3 2\n255\n", 0) == 0);
  REQUIRE(img.size() == std::string("P5\n3 2\n255\n").size() + 6);
  CHECK(static_cast<unsigned char>(img[img.size() - 6]) == 255);
  CHECK(static_cast<unsigned char>(img.back()) == 0);
  std::vector<int> rows = {0, 1}, cols = {0, 0, 1};
  CHECK(MeanBlockSimilarity(s, rows, cols) == doctest::Approx((s(0, 0) + s(0, 1) + s(1, 2)) / 3));
  CHECK_THROWS_AS(SimilarityMatrix(x, Matrix(2, 3)), Error);
}

TEST_CASE("JSON reports carry the headline numbers") {
  auto pairs = MakePairs({{0.1, true, true}, {0.2, false, false}});
  nlohmann::json j = ToJson(AveragePrecision(pairs), true);
  CHECK(j["average_precision"].get<double>() == doctest::Approx(1.0));
  CHECK(j.contains("curve"));
  CHECK(j.contains("dtw_cost"));
  CHECK(!ToJson(AveragePrecision(pairs), false).contains("curve"));
}
