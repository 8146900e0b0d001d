// bnf/bnf.cc

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

#include "zrsw/bnf/bnf.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "zrsw/base/error.h"
#include "zrsw/base/parallel.h"

namespace zrsw {

Index LabeledFrameSet::NumFrames() const {
  Index n = 0;
  for (const Matrix &m : sequences) n += m.rows();
  return n;
}

void LabeledFrameSet::Validate() const {
  if (sequences.empty()) Fail("language '{}' has no training sequences", language);
  if (labels.size() != sequences.size())
    Fail("language '{}': {} label sequences for {} feature sequences", language, labels.size(),
         sequences.size());
  for (std::size_t i = 0; i < sequences.size(); ++i) {
    if (static_cast<Index>(labels[i].size()) != sequences[i].rows())
      Fail("language '{}': sequence {} has {} frames but {} labels", language, i,
           sequences[i].rows(), labels[i].size());
    for (int y : labels[i])
      if (y < 0 || y >= NumClasses())
        Fail("language '{}': label {} outside [0, {})", language, y, NumClasses());
  }
}

LabeledFrameSet LabelFrames(const CorpusManifest &manifest, const FeatureStore &store,
                            const std::string &language) {
  LabeledFrameSet set;
  set.language = language;
  std::set<std::string> labels;
  for (const PhoneToken &p : manifest.phones)
    if (manifest.Find(p.utterance).language == language) labels.insert(p.label);
  set.class_names.push_back("<sil>");
  set.class_names.insert(set.class_names.end(), labels.begin(), labels.end());
  auto class_of = [&](const std::string &label) {
    return static_cast<int>(std::lower_bound(set.class_names.begin() + 1, set.class_names.end(),
                                             label) - set.class_names.begin());
  };
  for (const Utterance &u : manifest.utterances) {
    if (u.language != language) continue;
    auto it = store.find(u.id);
    if (it == store.end()) Fail("no features for utterance '{}'", u.id);
    const FeatureSequence &f = it->second;
    if (f.NumFrames() == 0) continue;
    std::vector<int> y(f.NumFrames(), 0);
    std::vector<PhoneToken> phones = manifest.PhonesOf(u.id);
    std::size_t k = 0;
    for (Index t = 0; t < f.NumFrames(); ++t) {
      double center = f.first_frame_center + t * f.frame_shift;
      while (k < phones.size() && phones[k].end <= center) ++k;
      if (k < phones.size() && phones[k].start <= center) y[t] = class_of(phones[k].label);
    }
    set.sequences.push_back(f.data);
    set.labels.push_back(std::move(y));
  }
  if (set.sequences.empty()) Fail("no utterances of language '{}' have features", language);
  return set;
}

FeatureStore AppendSpeakerMeans(const FeatureStore &store, const CorpusManifest &manifest) {
  const std::map<std::string, std::string> speaker_of = manifest.SpeakerOf();
  auto speaker = [&](const std::string &utt) -> const std::string & {
    auto it = speaker_of.find(utt);
    if (it == speaker_of.end()) Fail("utterance '{}' is not in the manifest", utt);
    return it->second;
  };
  std::map<std::string, std::pair<Vector, Index>> sums;
  for (const auto &[utt, f] : store) {
    auto &s = sums[speaker(utt)];
    if (s.first.size() == 0) s.first = Vector::Zero(f.Dim());
    if (s.first.size() != f.Dim()) Fail("feature dimension differs within speaker data");
    s.first += f.data.colwise().sum().transpose();
    s.second += f.NumFrames();
  }
  FeatureStore out;
  for (const auto &[utt, f] : store) {
    const auto &s = sums.at(speaker(utt));
    Vector mean = s.second ? Vector(s.first / static_cast<double>(s.second)) : s.first;
    FeatureSequence g = f;
    g.data.resize(f.NumFrames(), f.Dim() + mean.size());
    g.data.leftCols(f.Dim()) = f.data;
    g.data.rightCols(mean.size()).rowwise() = mean.transpose();
    out.emplace(utt, std::move(g));
  }
  return out;
}

BnfConfig BnfConfig::Paper() {
  BnfConfig c;
  c.train.initial_lr = 1e-3;
  c.train.final_lr = 1e-4;
  c.train.epochs = 2;
  return c;
}

BnfConfig BnfConfig::Desk() {
  BnfConfig c = Paper();
  c.hidden.assign(6, 64);
  c.head_hidden = 64;
  c.train.initial_lr = 0.02;
  c.train.final_lr = 0.002;
  c.train.momentum = 0.9;
  c.train.epochs = 8;
  return c;
}

void BnfConfig::Validate() const {
  if (hidden.empty()) Fail("BNF needs at least one hidden layer");
  if (splice.size() != hidden.size() + 1)
    Fail("BNF needs {} splice lists (hidden layers plus bottleneck), got {}", hidden.size() + 1,
         splice.size());
  for (const auto &s : splice)
    if (s.empty()) Fail("BNF splice list is empty");
  if (bottleneck < 1 || head_hidden < 1) Fail("BNF layer widths must be positive");
  train.Validate();
}

namespace {

struct BatchRef {
  std::size_t language;
  std::vector<std::size_t> sequences;
};

}  // namespace

BnfModel TrainMultilingual(const std::vector<LabeledFrameSet> &sets, const BnfConfig &config,
                           const GradientObserver &observer) {
  config.Validate();
  if (sets.empty()) Fail("multilingual training needs at least one language");
  std::set<std::string> names;
  for (const LabeledFrameSet &s : sets) {
    s.Validate();
    if (!names.insert(s.language).second) Fail("language '{}' given twice", s.language);
  }
  const Index dim = sets.front().sequences.front().cols();
  for (const LabeledFrameSet &s : sets)
    for (const Matrix &m : s.sequences)
      if (m.cols() != dim) Fail("language '{}' features have dimension {}, expected {}",
                                s.language, m.cols(), dim);

  std::mt19937_64 rng(config.seed);
  BnfModel model;
  DenseNetwork &net = model.net;
  Index in = dim;
  for (std::size_t i = 0; i < config.hidden.size(); ++i) {
    net.layers.push_back(
        MakeLayer(in, config.hidden[i], Nonlinearity::kRelu, true, config.splice[i], rng));
    in = config.hidden[i];
  }
  net.layers.push_back(
      MakeLayer(in, config.bottleneck, Nonlinearity::kLinear, true, config.splice.back(), rng));
  net.tap = static_cast<int>(net.layers.size()) - 1;
  for (const LabeledFrameSet &s : sets) {
    OutputHead h;
    h.name = s.language;
    h.layers.push_back(
        MakeLayer(config.bottleneck, config.head_hidden, Nonlinearity::kRelu, false, {0}, rng));
    h.layers.push_back(
        MakeLayer(config.head_hidden, s.NumClasses(), Nonlinearity::kLinear, false, {0}, rng));
    net.heads.push_back(std::move(h));
  }
  Matrix all(0, dim);
  {
    Index total = 0;
    for (const LabeledFrameSet &s : sets) total += s.NumFrames();
    all.resize(total, dim);
    Index r = 0;
    for (const LabeledFrameSet &s : sets)
      for (const Matrix &m : s.sequences) {
        all.middleRows(r, m.rows()) = m;
        r += m.rows();
      }
  }
  SetInputNormalization(net, all);
  net.Validate();

  auto make_batches = [&]() {
    std::vector<BatchRef> batches;
    for (std::size_t l = 0; l < sets.size(); ++l) {
      std::vector<std::size_t> order(sets[l].sequences.size());
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      BatchRef cur{l, {}};
      Index frames = 0;
      for (std::size_t i : order) {
        cur.sequences.push_back(i);
        frames += sets[l].sequences[i].rows();
        if (frames >= config.train.batch_size) {
          batches.push_back(std::move(cur));
          cur = BatchRef{l, {}};
          frames = 0;
        }
      }
      if (!cur.sequences.empty()) batches.push_back(std::move(cur));
    }
    std::shuffle(batches.begin(), batches.end(), rng);
    return batches;
  };

  std::vector<std::vector<BatchRef>> schedule;
  std::size_t total = 0;
  for (int e = 0; e < config.train.epochs; ++e) {
    schedule.push_back(make_batches());
    total += schedule.back().size();
  }
  SgdOptimizer opt(net, config.train.momentum);
  std::size_t step = 0;
  for (int e = 0; e < config.train.epochs; ++e) {
    double sum = 0.0;
    for (const BatchRef &b : schedule[e]) {
      const LabeledFrameSet &s = sets[b.language];
      Batch batch;
      Index frames = 0;
      for (std::size_t i : b.sequences) frames += s.sequences[i].rows();
      batch.input.resize(dim, frames);
      std::vector<int> labels;
      labels.reserve(frames);
      Index c = 0;
      for (std::size_t i : b.sequences) {
        const Matrix &m = s.sequences[i];
        batch.input.middleCols(c, m.rows()) = m.transpose();
        batch.segment_lengths.push_back(m.rows());
        labels.insert(labels.end(), s.labels[i].begin(), s.labels[i].end());
        c += m.rows();
      }
      ForwardState state = Forward(net, batch, Mode::kTrain, &s.language);
      Matrix d;
      double loss = CrossEntropyLoss(state.Output(), labels, &d);
      if (!std::isfinite(loss))
        Fail("BNF training diverged: loss {} at epoch {}, step {}", loss, e + 1, step + 1);
      NetworkGradient g = Backward(net, state, d);
      if (observer) observer(s.language, g);
      opt.Step(net, g, LearningRate(config.train, step, total));
      UpdateRunningStats(net, state, config.train.bn_momentum);
      sum += loss;
      ++step;
    }
    model.epoch_loss.push_back(sum / schedule[e].size());
  }
  model.num_batches = step;
  return model;
}

FeatureSequence ExtractBnf(const DenseNetwork &net, const FeatureSequence &input) {
  if (input.Dim() != net.InputDim())
    Fail("BNF network expects {}-dimensional features, got {}", net.InputDim(), input.Dim());
  FeatureSequence out;
  out.frame_shift = input.frame_shift;
  out.first_frame_center = input.first_frame_center;
  out.provenance = Provenance::kBnf;
  if (input.NumFrames() == 0) {
    out.data.resize(0, net.layers[net.TapIndex()].OutputDim());
    return out;
  }
  out.data = ExtractTap(net, input.data);
  return out;
}

FeatureStore ExtractBnfStore(const DenseNetwork &net, const FeatureStore &inputs) {
  std::vector<const std::pair<const std::string, FeatureSequence> *> items;
  for (const auto &kv : inputs) items.push_back(&kv);
  std::vector<FeatureSequence> outs(items.size());
  ParallelFor(items.size(), [&](std::size_t i) { outs[i] = ExtractBnf(net, items[i]->second); });
  FeatureStore store;
  for (std::size_t i = 0; i < items.size(); ++i) store.emplace(items[i]->first, std::move(outs[i]));
  return store;
}

double HeadAccuracy(const DenseNetwork &net, const LabeledFrameSet &set) {
  set.Validate();
  std::size_t correct = 0, total = 0;
  for (std::size_t i = 0; i < set.sequences.size(); ++i) {
    Batch b{set.sequences[i].transpose(), {}};
    ForwardState s = Forward(net, b, Mode::kInfer, &set.language);
    double acc = Accuracy(s.Output(), set.labels[i]);
    correct += static_cast<std::size_t>(std::lround(acc * set.labels[i].size()));
    total += set.labels[i].size();
  }
  return total ? static_cast<double>(correct) / total : 0.0;
}

}  // namespace zrsw
