// nnet/train.cc

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

#include "zrsw/nnet/train.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "zrsw/base/error.h"

namespace zrsw {

void TrainConfig::Validate() const {
  if (!(initial_lr >= 0.0) || !(final_lr >= 0.0) || final_lr > initial_lr)
    Fail("learning rates must satisfy 0 <= final ({}) <= initial ({})", final_lr, initial_lr);
  if (epochs < 1) Fail("epochs must be at least 1, got {}", epochs);
  if (batch_size < 1) Fail("batch size must be at least 1, got {}", batch_size);
  if (!(momentum >= 0.0 && momentum < 1.0)) Fail("momentum {} outside [0, 1)", momentum);
  if (!(bn_momentum > 0.0 && bn_momentum <= 1.0))
    Fail("batch-norm momentum {} outside (0, 1]", bn_momentum);
}

double LearningRate(const TrainConfig &config, std::size_t step, std::size_t total_steps) {
  if (config.initial_lr == 0.0) return 0.0;
  if (total_steps <= 1 || config.final_lr == config.initial_lr) return config.initial_lr;
  double frac = static_cast<double>(step) / static_cast<double>(total_steps - 1);
  return config.initial_lr * std::pow(config.final_lr / config.initial_lr, frac);
}

SgdOptimizer::SgdOptimizer(const DenseNetwork &net, double momentum)
    : momentum_(momentum) {
  if (momentum_ > 0.0) velocity_ = NetworkGradient::ZerosLike(net);
}

void SgdOptimizer::Step(DenseNetwork &net, const NetworkGradient &grad, double lr) {
  if (momentum_ == 0.0) {
    ApplySgd(net, grad, lr);
    return;
  }
  auto blend = [&](std::vector<LayerGradient> &v, const std::vector<LayerGradient> &g) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i].weights = momentum_ * v[i].weights + g[i].weights;
      v[i].bias = momentum_ * v[i].bias + g[i].bias;
    }
  };
  blend(velocity_.trunk, grad.trunk);
  NetworkGradient step;
  step.trunk = velocity_.trunk;
  for (const auto &[name, g] : grad.heads) {
    blend(velocity_.heads.at(name), g);
    step.heads[name] = velocity_.heads.at(name);
  }
  ApplySgd(net, step, lr);
}

namespace {

// Shared framewise loop; loss_fn fills the output gradient for a batch.
template <typename LossFn>
TrainTrace TrainFramewise(DenseNetwork &net, const Matrix &inputs, const TrainConfig &config,
                          const std::string *head, LossFn &&loss_fn) {
  config.Validate();
  net.Validate();
  const Index n = inputs.rows();
  if (n < 1) Fail("training set is empty");
  if (inputs.cols() != net.InputDim())
    Fail("training inputs have dimension {}, network expects {}", inputs.cols(), net.InputDim());
  std::mt19937_64 rng(config.seed);
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  const std::size_t batches_per_epoch = (n + config.batch_size - 1) / config.batch_size;
  const std::size_t total = batches_per_epoch * config.epochs;
  SgdOptimizer opt(net, config.momentum);
  TrainTrace trace;
  std::size_t step = 0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double sum = 0.0;
    for (std::size_t b = 0; b < batches_per_epoch; ++b, ++step) {
      Index begin = b * config.batch_size, end = std::min<Index>(n, begin + config.batch_size);
      std::vector<Index> rows(order.begin() + begin, order.begin() + end);
      Batch batch{inputs(rows, Eigen::all).transpose(), FramewiseSegments(end - begin)};
      ForwardState state = Forward(net, batch, Mode::kTrain, head);
      Matrix d;
      double loss = loss_fn(state.Output(), rows, &d);
      if (!std::isfinite(loss))
        Fail("training diverged: loss {} at epoch {}, batch {}", loss, epoch + 1, b + 1);
      sum += loss;
      opt.Step(net, Backward(net, state, d), LearningRate(config, step, total));
      UpdateRunningStats(net, state, config.bn_momentum);
    }
    trace.epoch_loss.push_back(sum / batches_per_epoch);
  }
  return trace;
}

}  // namespace

TrainTrace TrainRegression(DenseNetwork &net, const Matrix &inputs, const Matrix &targets,
                           const TrainConfig &config) {
  if (targets.rows() != inputs.rows())
    Fail("{} targets for {} training frames", targets.rows(), inputs.rows());
  if (targets.cols() != net.OutputDim())
    Fail("targets have dimension {}, network outputs {}", targets.cols(), net.OutputDim());
  return TrainFramewise(net, inputs, config, nullptr,
                        [&](const Matrix &out, const std::vector<Index> &rows, Matrix *d) {
                          Matrix t = targets(rows, Eigen::all).transpose();
                          return SquaredErrorLoss(out, t, d);
                        });
}

TrainTrace TrainClassifier(DenseNetwork &net, const Matrix &inputs,
                           const std::vector<int> &labels, const std::string &head,
                           const TrainConfig &config) {
  if (static_cast<Index>(labels.size()) != inputs.rows())
    Fail("{} labels for {} training frames", labels.size(), inputs.rows());
  net.Head(head);
  return TrainFramewise(net, inputs, config, &head,
                        [&](const Matrix &out, const std::vector<Index> &rows, Matrix *d) {
                          std::vector<int> y(rows.size());
                          for (std::size_t i = 0; i < rows.size(); ++i) y[i] = labels[rows[i]];
                          return CrossEntropyLoss(out, y, d);
                        });
}

PretrainResult LayerwisePretrain(const Matrix &data, const std::vector<Index> &widths,
                                 Nonlinearity f, const TrainConfig &config) {
  if (widths.empty()) Fail("pretraining needs at least one layer width");
  if (data.rows() < 1) Fail("pretraining data is empty");
  PretrainResult result;
  std::mt19937_64 rng(config.seed);
  Matrix codes = data;
  for (std::size_t k = 0; k < widths.size(); ++k) {
    DenseNetwork ae;
    ae.layers.push_back(MakeLayer(codes.cols(), widths[k], f, false, {0}, rng));
    ae.layers.push_back(MakeLayer(widths[k], codes.cols(), Nonlinearity::kLinear, false, {0}, rng));
    TrainConfig c = config;
    c.seed = config.seed + 1000003ull * (k + 1);
    result.layer_loss.push_back(TrainRegression(ae, codes, codes, c).epoch_loss);
    result.net.layers.push_back(ae.layers.front());
    DenseNetwork encoder;
    encoder.layers.push_back(ae.layers.front());
    codes = ExtractTap(encoder, codes);
  }
  return result;
}

}  // namespace zrsw
