// nnet/train.h

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

#ifndef ZRSW_NNET_TRAIN_H_
#define ZRSW_NNET_TRAIN_H_

#include <cstdint>
#include <string>
#include <vector>

#include "zrsw/nnet/network.h"

namespace zrsw {

enum class Loss { kSquaredError, kCrossEntropy };

struct TrainConfig {
  double initial_lr = 1e-3;
  double final_lr = 1e-4;
  int epochs = 1;
  Index batch_size = 256;
  std::uint64_t seed = 1;
  Loss loss = Loss::kSquaredError;
  /// Heavy-ball momentum; 0 gives plain SGD.
  double momentum = 0.0;
  /// Weight of the newest batch in batch-norm running statistics.
  double bn_momentum = 0.1;

  /// Throws unless 0 <= final_lr <= initial_lr, epochs >= 1, batch_size >= 1.
  void Validate() const;
};

/// initial * (final / initial)^(step / (total_steps - 1)); constant when
/// total_steps <= 1 or final == initial; 0 when initial is 0.
double LearningRate(const TrainConfig &config, std::size_t step, std::size_t total_steps);

/// SGD with optional momentum; velocity covers every head.
class SgdOptimizer {
 public:
  SgdOptimizer(const DenseNetwork &net, double momentum);
  void Step(DenseNetwork &net, const NetworkGradient &grad, double lr);

 private:
  double momentum_;
  NetworkGradient velocity_;
};

struct TrainTrace {
  std::vector<double> epoch_loss;  // mean batch loss per epoch
};

/// Framewise squared-error regression (rows = frames). Frames are shuffled
/// each epoch with a generator seeded from config.seed.
TrainTrace TrainRegression(DenseNetwork &net, const Matrix &inputs, const Matrix &targets,
                           const TrainConfig &config);

/// Framewise softmax classification through the named head.
TrainTrace TrainClassifier(DenseNetwork &net, const Matrix &inputs,
                           const std::vector<int> &labels, const std::string &head,
                           const TrainConfig &config);

struct PretrainResult {
  DenseNetwork net;                            // encoder layers only
  std::vector<std::vector<double>> layer_loss;  // per stacked layer, per epoch
};

/// Greedy stacking: layer k is trained as a one-hidden-layer autoencoder
/// (encoder f, linear decoder) on the codes of layers 0..k-1, then frozen;
/// decoders are discarded. data rows are frames, already normalized.
PretrainResult LayerwisePretrain(const Matrix &data, const std::vector<Index> &widths,
                                 Nonlinearity f, const TrainConfig &config);

}  // namespace zrsw

#endif  // ZRSW_NNET_TRAIN_H_
