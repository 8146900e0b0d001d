// tests/unit/nnet-test.cc

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
#include <sstream>

#include <doctest.h>

#include "../common/oracles.h"
#include "zrsw/base/error.h"
#include "zrsw/nnet/network-io.h"
#include "zrsw/nnet/network.h"
#include "zrsw/nnet/train.h"

using namespace zrsw;

namespace {

constexpr double kGradTolerance = 1e-4;

Batch RandomBatch(Index dim, std::vector<Index> segs, std::mt19937_64 &rng) {
  Index n = 0;
  for (Index s : segs) n += s;
  Batch b;
  b.input = testing::RandomMatrix(dim, n, rng);
  b.segment_lengths = std::move(segs);
  return b;
}

void RequireGradientsMatch(const std::vector<testing::TensorCheck> &checks) {
  REQUIRE(!checks.empty());
  std::size_t live = 0;
  for (const auto &c : checks) {
    INFO(c.name);
    CHECK(c.relative_error < kGradTolerance);
    live += !c.vanishing;
  }
  CHECK(live * 2 > checks.size());
}

}  // namespace

TEST_CASE("splice index clamps inside each segment") {
  // Two segments of lengths 3 and 2.
  std::vector<Index> idx = SpliceIndex(5, {3, 2}, {-1, 0, 2});
  std::vector<Index> expected = {0, 0, 2,  0, 1, 2,  1, 2, 2,  3, 3, 4,  3, 4, 4};
  CHECK(idx == expected);
  Matrix x(1, 5);
  x << 10, 11, 12, 13, 14;
  Matrix s = Splice(x, {3, 2}, {-1, 0, 2});
  REQUIRE(s.rows() == 3);
  CHECK(s(0, 3) == 13);  // first frame of segment 2 looks back to itself
  CHECK(s(2, 1) == 12);
  CHECK_THROWS_AS(SpliceIndex(5, {3, 3}, {0}), Error);
}

TEST_CASE("a perturbed input frame only reaches outputs inside its receptive field") {
  std::mt19937_64 rng(13);
  DenseNetwork net;
  net.layers.push_back(MakeLayer(3, 4, Nonlinearity::kTanh, false, {-1, 0, 1}, rng));
  net.layers.push_back(MakeLayer(4, 2, Nonlinearity::kLinear, false, {-2, 0}, rng));
  Batch b = RandomBatch(3, {12, 8}, rng);
  Matrix base = Forward(net, b, Mode::kInfer).Output();
  const Index probe = 5;  // inside segment 1
  Batch p = b;
  p.input.col(probe).array() += 0.5;
  Matrix moved = Forward(net, p, Mode::kInfer).Output();
  for (Index t = 0; t < base.cols(); ++t) {
    bool changed = (moved.col(t) - base.col(t)).norm() > 0;
    // Output t reads layer-1 frames t-2 and t; those read t-3 .. t+1.
    bool reachable = t < 12 && probe >= t - 3 && probe <= t + 1;
    INFO("t = " << t);
    CHECK(changed == reachable);
  }
}

TEST_CASE("gradients of every layer type match central differences") {
  std::mt19937_64 rng(31);
  struct Case {
    const char *name;
    Nonlinearity f;
    bool bn;
    std::vector<int> splice;
  };
  const Case cases[] = {
      {"linear", Nonlinearity::kLinear, false, {0}},
      {"tanh", Nonlinearity::kTanh, false, {-1, 0, 1}},
      {"relu", Nonlinearity::kRelu, false, {-2, 0}},
      {"relu+batchnorm", Nonlinearity::kRelu, true, {-1, 0, 1}},
      {"linear+batchnorm", Nonlinearity::kLinear, true, {0}},
  };
  for (const Case &c : cases) {
    SUBCASE(c.name) {
      DenseNetwork net;
      net.layers.push_back(MakeLayer(4, 5, Nonlinearity::kTanh, false, {0}, rng));
      net.layers.push_back(MakeLayer(5, 6, c.f, c.bn, c.splice, rng));
      net.layers.push_back(MakeLayer(6, 3, Nonlinearity::kTanh, false, {0}, rng));
      for (auto &l : net.layers) l.bias = testing::RandomMatrix(l.OutputDim(), 1, rng, 0.1);
      Batch b = RandomBatch(4, {7, 5}, rng);
      Matrix proj = testing::RandomMatrix(3, 12, rng);
      auto checks = testing::CheckGradients(net, testing::ProjectionLoss(b, proj), {});
      RequireGradientsMatch(checks);
      // Only a bias feeding batch norm through a linear unit is inert.
      for (const auto &t : checks)
        CHECK(t.vanishing == (c.bn && c.f == Nonlinearity::kLinear && t.name == "trunk.1.bias"));
    }
  }
}

TEST_CASE("block-softmax head gradients match central differences and spare other heads") {
  std::mt19937_64 rng(37);
  DenseNetwork net;
  net.layers.push_back(MakeLayer(4, 6, Nonlinearity::kRelu, true, {-1, 0, 1}, rng));
  net.layers.push_back(MakeLayer(6, 3, Nonlinearity::kLinear, true, {0}, rng));
  for (const char *name : {"a", "b"}) {
    OutputHead h;
    h.name = name;
    h.layers.push_back(MakeLayer(3, 5, Nonlinearity::kRelu, false, {0}, rng));
    h.layers.push_back(MakeLayer(5, 4, Nonlinearity::kLinear, false, {0}, rng));
    net.heads.push_back(h);
  }
  net.Validate();
  Batch b = RandomBatch(4, {6, 6}, rng);
  std::vector<int> labels = {0, 1, 2, 3, 0, 1, 2, 3, 3, 2, 1, 0};
  RequireGradientsMatch(
      testing::CheckGradients(net, testing::HeadCrossEntropyLoss(b, "a", labels), {"a"}));
}

TEST_CASE("foreign heads receive exactly zero gradient") {
  std::mt19937_64 rng(41);
  DenseNetwork net;
  net.layers.push_back(MakeLayer(3, 4, Nonlinearity::kRelu, true, {0}, rng));
  for (const char *name : {"x", "y", "z"}) {
    OutputHead h;
    h.name = name;
    h.layers.push_back(MakeLayer(4, 3, Nonlinearity::kLinear, false, {0}, rng));
    net.heads.push_back(h);
  }
  Batch b = RandomBatch(3, {8}, rng);
  std::string head = "y";
  ForwardState s = Forward(net, b, Mode::kTrain, &head);
  Matrix d;
  CrossEntropyLoss(s.Output(), {0, 1, 2, 0, 1, 2, 0, 1}, &d);
  NetworkGradient g = Backward(net, s, d);
  CHECK(g.heads.at("y")[0].weights.norm() > 0);
  for (const char *other : {"x", "z"}) {
    CHECK(g.heads.at(other)[0].weights.cwiseAbs().maxCoeff() == 0.0);
    CHECK(g.heads.at(other)[0].bias.cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("inference batch norm uses running statistics") {
  std::mt19937_64 rng(43);
  DenseNetwork net;
  net.layers.push_back(MakeLayer(2, 3, Nonlinearity::kLinear, true, {0}, rng));
  net.layers[0].running_mean << 1, 2, 3;
  net.layers[0].running_var << 4, 1, 0.25;
  Batch b = RandomBatch(2, {5}, rng);
  Matrix out = Forward(net, b, Mode::kInfer).Output();
  Matrix act = net.layers[0].weights * b.input;
  for (Index r = 0; r < 3; ++r)
    for (Index t = 0; t < 5; ++t)
      CHECK(out(r, t) == doctest::Approx((act(r, t) - net.layers[0].running_mean(r)) /
                                         std::sqrt(net.layers[0].running_var(r) + kBatchNormEpsilon)));
  // Infer-mode gradients are those of a fixed affine map.
  Matrix proj = testing::RandomMatrix(3, 5, rng);
  testing::NetworkLoss loss = [&](const DenseNetwork &n, NetworkGradient *g) {
    ForwardState s = Forward(n, b, Mode::kInfer);
    if (g) *g = Backward(n, s, proj);
    return (s.Output().array() * proj.array()).sum();
  };
  RequireGradientsMatch(testing::CheckGradients(net, loss, {}));
  // Training-mode outputs are standardized per unit.
  Matrix train = Forward(net, b, Mode::kTrain).Output();
  for (Index r = 0; r < 3; ++r) CHECK(train.row(r).mean() == doctest::Approx(0.0).scale(1));
}

TEST_CASE("losses have their textbook values") {
  Matrix logits(3, 2);
  logits << 1, 0, 2, 0, 3, 0;
  Matrix grad;
  double ce = CrossEntropyLoss(logits, {2, 0}, &grad);
  double lse = std::log(std::exp(1) + std::exp(2) + std::exp(3));
  CHECK(ce == doctest::Approx(((lse - 3) + std::log(3.0)) / 2));
  CHECK(grad.col(1).sum() == doctest::Approx(0.0).scale(1));
  CHECK(grad(0, 1) == doctest::Approx((1.0 / 3 - 1) / 2));
  CHECK(Accuracy(logits, {2, 1}) == 0.5);
  Matrix y(1, 2), t(1, 2);
  y << 1, 2;
  t << 0, 0;
  CHECK(SquaredErrorLoss(y, t, &grad) == doctest::Approx(1.25));
  CHECK(grad(0, 1) == doctest::Approx(1.0));
  CHECK_THROWS_AS(CrossEntropyLoss(logits, {3, 0}, nullptr), Error);
}

TEST_CASE("networks round-trip through their binary format") {
  std::mt19937_64 rng(47);
  DenseNetwork net;
  net.input_offset = Vector::Constant(4, 0.5);
  net.input_scale = Vector::Constant(4, 2.0);
  net.layers.push_back(MakeLayer(4, 5, Nonlinearity::kRelu, true, {-3, 0, 3}, rng));
  net.layers.push_back(MakeLayer(5, 2, Nonlinearity::kTanh, false, {0}, rng));
  net.tap = 0;
  OutputHead h;
  h.name = "lang";
  h.layers.push_back(MakeLayer(2, 7, Nonlinearity::kLinear, false, {0}, rng));
  net.heads.push_back(h);
  std::stringstream ss;
  WriteNetwork(ss, net);
  DenseNetwork back = ReadNetwork(ss);
  CHECK(back.tap == 0);
  CHECK(back.layers[0].splice == std::vector<int>{-3, 0, 3});
  CHECK(back.layers[0].weights == net.layers[0].weights);
  CHECK(back.layers[0].running_var == net.layers[0].running_var);
  CHECK(back.Head("lang").layers[0].weights == h.layers[0].weights);
  Matrix x = testing::RandomMatrix(9, 4, rng);
  CHECK(ExtractTap(back, x) == ExtractTap(net, x));
  std::stringstream bad("ZRSNxxxx");
  CHECK_THROWS_AS(ReadNetwork(bad), Error);
}

TEST_CASE("regression training lowers the loss deterministically") {
  std::mt19937_64 rng(53);
  Matrix x = testing::RandomMatrix(400, 3, rng);
  Matrix y = (x * testing::RandomMatrix(3, 2, rng)).array().tanh().matrix();
  auto train = [&] {
    std::mt19937_64 init(1);
    DenseNetwork net;
    net.layers.push_back(MakeLayer(3, 8, Nonlinearity::kTanh, false, {0}, init));
    net.layers.push_back(MakeLayer(8, 2, Nonlinearity::kLinear, false, {0}, init));
    TrainConfig c;
    c.initial_lr = 0.05;
    c.final_lr = 0.01;
    c.epochs = 20;
    c.batch_size = 32;
    c.momentum = 0.9;
    TrainTrace t = TrainRegression(net, x, y, c);
    return std::make_pair(net, t);
  };
  auto [net, trace] = train();
  CHECK(trace.epoch_loss.back() < 0.25 * trace.epoch_loss.front());
  auto [net2, trace2] = train();
  CHECK(trace.epoch_loss == trace2.epoch_loss);
  CHECK(net.layers[0].weights == net2.layers[0].weights);
}

TEST_CASE("learning rate decays geometrically") {
  TrainConfig c;
  c.initial_lr = 1e-3;
  c.final_lr = 1e-4;
  CHECK(LearningRate(c, 0, 11) == doctest::Approx(1e-3));
  CHECK(LearningRate(c, 10, 11) == doctest::Approx(1e-4));
  CHECK(LearningRate(c, 5, 11) == doctest::Approx(std::sqrt(1e-7)));
}
