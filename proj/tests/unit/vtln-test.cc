// tests/unit/vtln-test.cc

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

#include <random>
#include <sstream>

#include <doctest.h>

#include "../common/oracles.h"
#include "zrsw/base/error.h"
#include "zrsw/dsp/mel-bank.h"
#include "zrsw/pipeline/trends.h"
#include "zrsw/vtln/diag-gmm.h"
#include "zrsw/vtln/warp-estimation.h"

using namespace zrsw;

namespace {

DiagonalGmm RandomGmm(int k, int d, std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> u(0.2, 2.0);
  Vector w(k);
  for (int i = 0; i < k; ++i) w(i) = u(rng);
  w /= w.sum();
  Matrix var(k, d);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < d; ++j) var(i, j) = u(rng);
  return DiagonalGmm(w, testing::RandomMatrix(k, d, rng, 2.0), var);
}

// Three well separated clusters plus noise.
Matrix ClusteredData(int n, int d, std::mt19937_64 &rng) {
  Matrix centers = testing::RandomMatrix(3, d, rng, 4.0);
  Matrix x = testing::RandomMatrix(n, d, rng);
  for (int i = 0; i < n; ++i) x.row(i) += centers.row(i % 3);
  return x;
}

}  // namespace

TEST_CASE("GMM densities match a direct evaluation") {
  std::mt19937_64 rng(21);
  DiagonalGmm gmm = RandomGmm(5, 4, rng);
  Matrix x = testing::RandomMatrix(12, 4, rng, 2.0);
  Vector ll = gmm.FrameLogLikelihoods(x);
  double total = 0;
  for (Index t = 0; t < x.rows(); ++t) {
    double oracle = testing::NaiveGmmLogDensity(x.row(t).transpose(), gmm.weights(), gmm.means(),
                                                gmm.variances());
    CHECK(ll(t) == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(gmm.LogLikelihood(x.row(t).transpose()) == doctest::Approx(oracle).epsilon(1e-12));
    total += oracle;
  }
  CHECK(GmmLogLikelihood(gmm, x) == doctest::Approx(total).epsilon(1e-12));
  Matrix joint = gmm.ComponentLogJoint(x);
  CHECK(joint.rows() == 12);
  CHECK(joint.cols() == 5);
}

TEST_CASE("GMM rejects malformed parameters") {
  Vector w(2);
  w << 0.5, 0.6;
  CHECK_THROWS_AS(DiagonalGmm(w, Matrix::Zero(2, 3), Matrix::Ones(2, 3)), Error);
  w << 0.5, 0.5;
  Matrix var = Matrix::Ones(2, 3);
  var(1, 2) = 0;
  CHECK_THROWS_AS(DiagonalGmm(w, Matrix::Zero(2, 3), var), Error);
}

TEST_CASE("EM never decreases the training log-likelihood") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    std::mt19937_64 rng(seed);
    Matrix x = ClusteredData(600, 3, rng);
    GmmTrainOptions o;
    o.num_components = 6;
    o.iterations = 20;
    o.seed = seed;
    GmmTrainResult r = TrainGmmEm(x, o);
    REQUIRE(r.log_likelihood_trace.size() == 21);
    for (std::size_t i = 1; i < r.log_likelihood_trace.size(); ++i)
      CHECK(r.log_likelihood_trace[i] >= r.log_likelihood_trace[i - 1] - 1e-8);
    CHECK(r.log_likelihood_trace.back() ==
          doctest::Approx(GmmLogLikelihood(r.gmm, x)).epsilon(1e-9));
    r.gmm.Check();
  }
}

TEST_CASE("EM is deterministic for a fixed seed") {
  std::mt19937_64 rng(8);
  Matrix x = ClusteredData(300, 2, rng);
  GmmTrainOptions o;
  o.num_components = 4;
  o.iterations = 5;
  GmmTrainResult a = TrainGmmEm(x, o), b = TrainGmmEm(x, o);
  CHECK(a.gmm.means() == b.gmm.means());
  CHECK(a.log_likelihood_trace == b.log_likelihood_trace);
}

TEST_CASE("GMM files round-trip exactly") {
  std::mt19937_64 rng(3);
  DiagonalGmm gmm = RandomGmm(3, 2, rng);
  std::stringstream ss;
  WriteGmm(ss, gmm);
  DiagonalGmm back = ReadGmm(ss);
  CHECK(back.weights() == gmm.weights());
  CHECK(back.means() == gmm.means());
  CHECK(back.variances() == gmm.variances());
}

TEST_CASE("warp files round-trip and reject junk") {
  WarpAssignment w{{"s1", 0.9}, {"s2", 1.14}};
  std::stringstream ss;
  WriteWarps(ss, w);
  CHECK(ReadWarps(ss) == w);
  std::stringstream bad("s1 abc\n");
  CHECK_THROWS_AS(ReadWarps(bad), Error);
}

TEST_CASE("warp estimation recovers synthetic vocal tract scales") {
  SynthCorpus world = BuildVtlnWorld(2);
  CorpusManifest train = world.manifest.Subset({"train"});
  CorpusManifest eval = world.manifest.Subset({"eval"});
  MfccPipelineOptions vf = DefaultVtlnFeatures();
  GmmTrainOptions go;
  DiagonalGmm gmm = TrainGmmEm(StackFrames(ExtractMfccStore(train, vf)), go).gmm;
  std::vector<double> grid = WarpGrid(vf.frame);
  auto scores = WarpLogLikelihoods(eval, gmm, grid, vf);
  WarpAssignment warps = EstimateWarps(eval, gmm, grid, vf);
  int recovered = 0;
  for (const auto &[spk, a] : warps) {
    // The estimate is the argmax of the per-warp scores.
    const std::vector<double> &s = scores.at(spk);
    double best = *std::max_element(s.begin(), s.end());
    auto it = std::find(grid.begin(), grid.end(), a);
    REQUIRE(it != grid.end());
    CHECK(s[it - grid.begin()] == best);
    recovered += std::abs(a - world.true_warps.at(spk)) <= 0.04 + 1e-9;
  }
  CHECK(warps.size() == 12);
  CHECK(recovered >= 11);
}
