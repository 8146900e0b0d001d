// bnf/bnf.h

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

#ifndef ZRSW_BNF_BNF_H_
#define ZRSW_BNF_BNF_H_

#include <functional>
#include <string>
#include <vector>

#include "zrsw/corpus/manifest.h"
#include "zrsw/dsp/feature-sequence.h"
#include "zrsw/nnet/network.h"
#include "zrsw/nnet/train.h"

namespace zrsw {

/// Frame-labeled training data of one language. Class 0 is silence (frames
/// whose center lies outside every phone); classes 1.. follow class_names.
struct LabeledFrameSet {
  std::string language;
  std::vector<std::string> class_names;
  std::vector<Matrix> sequences;  // rows are frames
  std::vector<std::vector<int>> labels;

  int NumClasses() const { return static_cast<int>(class_names.size()); }
  Index NumFrames() const;
  /// Throws on mismatched lengths, labels out of range or an empty set.
  void Validate() const;
};

/// Labels every frame of the language's utterances from phone alignments.
LabeledFrameSet LabelFrames(const CorpusManifest &manifest, const FeatureStore &store,
                            const std::string &language);

/// Appends to every frame the mean feature vector of its speaker, a fixed
/// per-speaker auxiliary input in place of an i-vector.
FeatureStore AppendSpeakerMeans(const FeatureStore &store, const CorpusManifest &manifest);

struct BnfConfig {
  std::vector<Index> hidden{625, 625, 625, 625, 625, 625};
  Index bottleneck = 39;
  /// One offset list per hidden layer and one for the bottleneck.
  std::vector<std::vector<int>> splice{{-1, 0, 1}, {-1, 0, 1}, {-1, 0, 1}, {-3, 0, 3},
                                       {-3, 0, 3}, {-6, -3, 0}, {0}};
  /// Width of the ReLU layer inside each language head.
  Index head_hidden = 625;
  TrainConfig train;
  std::uint64_t seed = 1;

  static BnfConfig Paper();
  /// Narrow layers and more epochs with momentum, same splicing.
  static BnfConfig Desk();
  void Validate() const;
};

/// Called after every batch with the batch language and its gradient
/// (all heads present, foreign ones untouched by that batch).
using GradientObserver = std::function<void(const std::string &, const NetworkGradient &)>;

struct BnfModel {
  DenseNetwork net;  // tap = bottleneck
  std::vector<double> epoch_loss;
  std::size_t num_batches = 0;
};

/// Shared trunk, one head per language. Each epoch cuts every language into
/// batches of whole utterances and visits all batches in a seeded global
/// shuffle, so languages interleave in proportion to their size. Only the
/// batch language's head receives error.
BnfModel TrainMultilingual(const std::vector<LabeledFrameSet> &sets, const BnfConfig &config,
                           const GradientObserver &observer = {});

/// Infer-mode forward to the bottleneck over the whole sequence.
FeatureSequence ExtractBnf(const DenseNetwork &net, const FeatureSequence &input);
FeatureStore ExtractBnfStore(const DenseNetwork &net, const FeatureStore &inputs);

/// Frame accuracy of the language's head over a labeled set (infer mode).
double HeadAccuracy(const DenseNetwork &net, const LabeledFrameSet &set);

}  // namespace zrsw

#endif  // ZRSW_BNF_BNF_H_
