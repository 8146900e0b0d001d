// cae/cae.h

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

#ifndef ZRSW_CAE_CAE_H_
#define ZRSW_CAE_CAE_H_

#include <vector>

#include "zrsw/align/dtw.h"
#include "zrsw/corpus/manifest.h"
#include "zrsw/dsp/feature-sequence.h"
#include "zrsw/nnet/network.h"
#include "zrsw/nnet/train.h"

namespace zrsw {

struct CaeConfig {
  /// Encoder widths; the last one is the extracted feature dimension.
  std::vector<Index> widths{100, 100, 100, 100, 100, 100, 100, 100, 39};
  Nonlinearity nonlinearity = Nonlinearity::kTanh;
  TrainConfig pretrain;
  TrainConfig finetune;
  DtwOptions dtw;
  /// Fine-tune on a seeded random subset of this many aligned frame
  /// couples; 0 keeps all.
  Index max_frame_pairs = 0;
  std::uint64_t seed = 1;

  /// Eight 100-unit layers plus 39, pretraining at 2.5e-4 for 5 epochs and
  /// fine-tuning at 2.5e-5 for 60 epochs.
  static CaeConfig Paper();
  /// Smaller stack with larger steps and momentum and at most 100k frame
  /// couples, sized for a single core.
  static CaeConfig Desk();

  Index FeatureDim() const { return widths.empty() ? 0 : widths.back(); }
  void Validate() const;
};

struct CaeModel {
  /// Encoder stack plus a linear output layer; tap = final hidden layer.
  DenseNetwork net;
  std::vector<std::vector<double>> pretrain_loss;
  std::vector<double> finetune_loss;
  Index num_frame_pairs = 0;  // aligned couples before subsampling
};

/// Pretrains layer-wise on every frame of `store`, then fine-tunes on the
/// DTW-aligned frame couples of `pairs` under squared error. Inputs and
/// targets are z-normalized with statistics of the pretraining frames.
CaeModel TrainCae(const PairList &pairs, const FeatureStore &store, const CaeConfig &config);

/// Forward pass truncated at the tap layer; frame count is preserved.
FeatureSequence ExtractCae(const DenseNetwork &net, const FeatureSequence &input);
FeatureStore ExtractCaeStore(const DenseNetwork &net, const FeatureStore &inputs);

}  // namespace zrsw

#endif  // ZRSW_CAE_CAE_H_
