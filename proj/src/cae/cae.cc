// cae/cae.cc

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

#include "zrsw/cae/cae.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "zrsw/align/frame-pairs.h"
#include "zrsw/base/error.h"
#include "zrsw/base/parallel.h"
#include "zrsw/dsp/extract.h"

namespace zrsw {

CaeConfig CaeConfig::Paper() {
  CaeConfig c;
  c.pretrain.initial_lr = c.pretrain.final_lr = 2.5e-4;
  c.pretrain.epochs = 5;
  c.finetune.initial_lr = c.finetune.final_lr = 2.5e-5;
  c.finetune.epochs = 60;
  return c;
}

CaeConfig CaeConfig::Desk() {
  CaeConfig c;
  c.widths = {100, 100, 100, 39};
  c.pretrain.initial_lr = c.pretrain.final_lr = 0.01;
  c.pretrain.momentum = 0.9;
  c.pretrain.epochs = 3;
  c.finetune.initial_lr = 0.01;
  c.finetune.final_lr = 0.001;
  c.finetune.momentum = 0.9;
  c.finetune.epochs = 10;
  c.max_frame_pairs = 100000;
  return c;
}

void CaeConfig::Validate() const {
  if (widths.empty()) Fail("cAE needs at least one layer");
  for (Index w : widths)
    if (w < 1) Fail("cAE layer width {} invalid", w);
  pretrain.Validate();
  finetune.Validate();
}

CaeModel TrainCae(const PairList &pairs, const FeatureStore &store, const CaeConfig &config) {
  config.Validate();
  if (pairs.entries.empty()) Fail("cAE fine-tuning needs at least one pair");
  Matrix frames = StackFrames(store);
  if (frames.rows() < 1) Fail("cAE pretraining needs at least one frame");

  DenseNetwork norm;
  norm.layers.push_back(DenseLayer{});
  norm.layers.back().weights = Matrix::Identity(frames.cols(), frames.cols());
  norm.layers.back().bias = Vector::Zero(frames.cols());
  SetInputNormalization(norm, frames);
  auto normalize = [&](const Matrix &rows) -> Matrix {
    return (rows.rowwise() - norm.input_offset.transpose()).array().rowwise() *
           norm.input_scale.transpose().array();
  };

  CaeModel model;
  TrainConfig pre = config.pretrain;
  pre.seed = config.seed;
  PretrainResult pr = LayerwisePretrain(normalize(frames), config.widths, config.nonlinearity, pre);
  model.pretrain_loss = std::move(pr.layer_loss);
  model.net = std::move(pr.net);
  model.net.tap = static_cast<int>(model.net.layers.size()) - 1;
  std::mt19937_64 rng(config.seed ^ 0x5eedcae5ull);
  model.net.layers.push_back(MakeLayer(config.FeatureDim(), frames.cols(), Nonlinearity::kLinear,
                                       false, {0}, rng));

  FramePairs fp = AlignFramePairs(pairs, store, config.dtw);
  model.num_frame_pairs = fp.size();
  if (config.max_frame_pairs > 0 && fp.size() > config.max_frame_pairs) {
    std::vector<Index> keep(fp.size());
    std::iota(keep.begin(), keep.end(), 0);
    std::mt19937_64 pick(config.seed ^ 0xa11a11ull);
    std::shuffle(keep.begin(), keep.end(), pick);
    keep.resize(config.max_frame_pairs);
    std::sort(keep.begin(), keep.end());
    fp.inputs = Matrix(fp.inputs(keep, Eigen::all));
    fp.targets = Matrix(fp.targets(keep, Eigen::all));
  }
  Matrix inputs = normalize(fp.inputs);
  Matrix targets = normalize(fp.targets);
  TrainConfig fine = config.finetune;
  fine.seed = config.seed + 17;
  model.finetune_loss = TrainRegression(model.net, inputs, targets, fine).epoch_loss;
  // Raw features go straight in; normalization is part of the network.
  model.net.input_offset = norm.input_offset;
  model.net.input_scale = norm.input_scale;
  return model;
}

FeatureSequence ExtractCae(const DenseNetwork &net, const FeatureSequence &input) {
  if (input.Dim() != net.InputDim())
    Fail("cAE expects {}-dimensional features, got {}", net.InputDim(), input.Dim());
  FeatureSequence out;
  out.frame_shift = input.frame_shift;
  out.first_frame_center = input.first_frame_center;
  out.provenance = Provenance::kCae;
  if (input.NumFrames() == 0) {
    out.data.resize(0, net.layers[net.TapIndex()].OutputDim());
    return out;
  }
  out.data = ExtractTap(net, input.data, FramewiseSegments(input.NumFrames()));
  return out;
}

FeatureStore ExtractCaeStore(const DenseNetwork &net, const FeatureStore &inputs) {
  std::vector<const std::pair<const std::string, FeatureSequence> *> items;
  for (const auto &kv : inputs) items.push_back(&kv);
  std::vector<FeatureSequence> outs(items.size());
  ParallelFor(items.size(), [&](std::size_t i) { outs[i] = ExtractCae(net, items[i]->second); });
  FeatureStore store;
  for (std::size_t i = 0; i < items.size(); ++i) store.emplace(items[i]->first, std::move(outs[i]));
  return store;
}

}  // namespace zrsw
