// nnet/network.cc

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

#include "zrsw/nnet/network.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "zrsw/base/error.h"

namespace zrsw {

const char *NonlinearityName(Nonlinearity f) {
  switch (f) {
    case Nonlinearity::kLinear: return "linear";
    case Nonlinearity::kTanh: return "tanh";
    case Nonlinearity::kRelu: return "relu";
  }
  return "?";
}

Nonlinearity ParseNonlinearity(const std::string &name) {
  if (name == "linear") return Nonlinearity::kLinear;
  if (name == "tanh") return Nonlinearity::kTanh;
  if (name == "relu") return Nonlinearity::kRelu;
  Fail("unknown nonlinearity '{}'", name);
}

DenseLayer MakeLayer(Index input_dim, Index output_dim, Nonlinearity f, bool batch_norm,
                     std::vector<int> splice, std::mt19937_64 &rng) {
  if (input_dim < 1 || output_dim < 1) Fail("layer dimensions must be positive");
  if (splice.empty()) Fail("layer splice list is empty");
  DenseLayer layer;
  layer.splice = std::move(splice);
  Index fan_in = input_dim * static_cast<Index>(layer.splice.size());
  double s = std::sqrt((f == Nonlinearity::kRelu ? 6.0 : 3.0) / fan_in);
  std::uniform_real_distribution<double> u(-s, s);
  layer.weights.resize(output_dim, fan_in);
  // Filled row by row so the draw order does not depend on storage order.
  for (Index r = 0; r < output_dim; ++r)
    for (Index c = 0; c < fan_in; ++c) layer.weights(r, c) = u(rng);
  layer.bias = Vector::Zero(output_dim);
  layer.nonlinearity = f;
  layer.batch_norm = batch_norm;
  if (batch_norm) {
    layer.running_mean = Vector::Zero(output_dim);
    layer.running_var = Vector::Ones(output_dim);
  }
  return layer;
}

Index DenseNetwork::InputDim() const {
  return layers.empty() ? 0 : layers.front().InputDim();
}

Index DenseNetwork::OutputDim() const {
  return layers.empty() ? 0 : layers.back().OutputDim();
}

int DenseNetwork::TapIndex() const {
  return tap < 0 ? static_cast<int>(layers.size()) - 1 : tap;
}

const OutputHead &DenseNetwork::Head(const std::string &name) const {
  for (const OutputHead &h : heads)
    if (h.name == name) return h;
  Fail("network has no output head '{}'", name);
}

OutputHead &DenseNetwork::Head(const std::string &name) {
  for (OutputHead &h : heads)
    if (h.name == name) return h;
  Fail("network has no output head '{}'", name);
}

namespace {

void CheckLayer(const DenseLayer &l, const std::string &where) {
  if (l.splice.empty()) Fail("{}: empty splice list", where);
  if (l.weights.cols() % static_cast<Index>(l.splice.size()) != 0)
    Fail("{}: {} weight columns do not divide into {} spliced frames", where, l.weights.cols(),
         l.splice.size());
  if (l.bias.size() != l.weights.rows()) Fail("{}: bias size mismatch", where);
  if (l.batch_norm) {
    if (l.running_mean.size() != l.OutputDim() || l.running_var.size() != l.OutputDim())
      Fail("{}: batch-norm statistics have the wrong size", where);
    if ((l.running_var.array() <= 0.0).any())
      Fail("{}: batch-norm running variance must be positive", where);
  }
}

void CheckChain(const std::vector<DenseLayer> &layers, Index input_dim, const std::string &what) {
  Index dim = input_dim;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    std::string where = what + " layer " + std::to_string(i);
    CheckLayer(layers[i], where);
    if (layers[i].InputDim() != dim)
      Fail("{}: expects input dimension {}, previous layer gives {}", where,
           layers[i].InputDim(), dim);
    dim = layers[i].OutputDim();
  }
}

}  // namespace

void DenseNetwork::Validate() const {
  if (layers.empty()) Fail("network has no layers");
  if (input_offset.size() != input_scale.size() ||
      (input_offset.size() != 0 && input_offset.size() != InputDim()))
    Fail("input normalization does not match input dimension {}", InputDim());
  CheckChain(layers, InputDim(), "trunk");
  if (tap >= static_cast<int>(layers.size()) || tap < -1) Fail("tap index {} out of range", tap);
  std::set<std::string> names;
  for (const OutputHead &h : heads) {
    if (!names.insert(h.name).second) Fail("duplicate output head '{}'", h.name);
    if (h.layers.empty()) Fail("output head '{}' has no layers", h.name);
    CheckChain(h.layers, OutputDim(), "head '" + h.name + "'");
  }
}

std::size_t DenseNetwork::NumParameters() const {
  std::size_t n = 0;
  auto count = [&](const std::vector<DenseLayer> &ls) {
    for (const DenseLayer &l : ls) n += l.weights.size() + l.bias.size();
  };
  count(layers);
  for (const OutputHead &h : heads) count(h.layers);
  return n;
}

std::vector<Index> FramewiseSegments(Index num_frames) {
  return std::vector<Index>(num_frames, 1);
}

std::vector<Index> SpliceIndex(Index num_frames, const std::vector<Index> &segment_lengths,
                               const std::vector<int> &offsets) {
  if (num_frames < 1) Fail("cannot splice an empty sequence");
  std::vector<Index> lengths = segment_lengths;
  if (lengths.empty()) lengths.push_back(num_frames);
  Index total = 0;
  for (Index n : lengths) {
    if (n < 1) Fail("segment of length {} in a batch", n);
    total += n;
  }
  if (total != num_frames)
    Fail("segment lengths sum to {}, batch has {} frames", total, num_frames);
  const Index k = static_cast<Index>(offsets.size());
  std::vector<Index> index(num_frames * k);
  Index start = 0;
  for (Index n : lengths) {
    for (Index t = 0; t < n; ++t)
      for (Index j = 0; j < k; ++j)
        index[(start + t) * k + j] = start + std::clamp<Index>(t + offsets[j], 0, n - 1);
    start += n;
  }
  return index;
}

Matrix Splice(const Matrix &input, const std::vector<Index> &segment_lengths,
              const std::vector<int> &offsets) {
  if (offsets.size() == 1 && offsets[0] == 0) {
    if (input.cols() < 1) Fail("cannot splice an empty sequence");
    return input;
  }
  std::vector<Index> index = SpliceIndex(input.cols(), segment_lengths, offsets);
  const Index d = input.rows(), k = static_cast<Index>(offsets.size());
  Matrix out(d * k, input.cols());
  for (Index t = 0; t < input.cols(); ++t)
    for (Index j = 0; j < k; ++j) out.block(j * d, t, d, 1) = input.col(index[t * k + j]);
  return out;
}

namespace {

void ApplyNonlinearity(Nonlinearity f, Matrix &m) {
  switch (f) {
    case Nonlinearity::kLinear: break;
    case Nonlinearity::kTanh: m = m.array().tanh().matrix(); break;
    case Nonlinearity::kRelu: m = m.array().max(0.0).matrix(); break;
  }
}

LayerCache ForwardLayer(const DenseLayer &layer, const Matrix &input,
                        const std::vector<Index> &segments, Mode mode) {
  if (input.rows() != layer.InputDim())
    Fail("layer expects input dimension {}, got {}", layer.InputDim(), input.rows());
  LayerCache c;
  c.spliced = Splice(input, segments, layer.splice);
  c.activation = layer.weights * c.spliced;
  c.activation.colwise() += layer.bias;
  ApplyNonlinearity(layer.nonlinearity, c.activation);
  if (!layer.batch_norm) {
    c.output = c.activation;
    return c;
  }
  const Index n = c.activation.cols();
  if (mode == Mode::kTrain) {
    c.bn_mean = c.activation.rowwise().mean();
    Vector var = (c.activation.colwise() - c.bn_mean).array().square().rowwise().sum() / n;
    c.bn_inv_std = (var.array() + kBatchNormEpsilon).rsqrt();
    c.bn_batch_stats = true;
  } else {
    c.bn_mean = layer.running_mean;
    c.bn_inv_std = (layer.running_var.array() + kBatchNormEpsilon).rsqrt();
  }
  c.output = (c.activation.colwise() - c.bn_mean).array().colwise() * c.bn_inv_std.array();
  return c;
}

}  // namespace

const Matrix &ForwardState::Output() const {
  if (!head.empty()) return head.back().output;
  if (!trunk.empty()) return trunk.back().output;
  return input;
}

ForwardState Forward(const DenseNetwork &net, const Batch &batch, Mode mode,
                     const std::string *head, int stop_after) {
  if (net.layers.empty()) Fail("network has no layers");
  if (batch.input.rows() != net.InputDim())
    Fail("network expects input dimension {}, got {}", net.InputDim(), batch.input.rows());
  if (batch.input.cols() < 1) Fail("empty batch");
  ForwardState s;
  s.segment_lengths = batch.segment_lengths;
  if (net.input_offset.size() != 0) {
    s.input = (batch.input.colwise() - net.input_offset).array().colwise() *
              net.input_scale.array();
  } else {
    s.input = batch.input;
  }
  int last = stop_after < 0 ? static_cast<int>(net.layers.size()) - 1
                            : std::min<int>(stop_after, net.layers.size() - 1);
  const Matrix *x = &s.input;
  s.trunk.reserve(last + 1);
  for (int i = 0; i <= last; ++i) {
    s.trunk.push_back(ForwardLayer(net.layers[i], *x, s.segment_lengths, mode));
    x = &s.trunk.back().output;
  }
  if (head != nullptr && stop_after < 0) {
    for (std::size_t h = 0; h < net.heads.size(); ++h)
      if (net.heads[h].name == *head) s.head_index = static_cast<int>(h);
    if (s.head_index < 0) Fail("network has no output head '{}'", *head);
    const OutputHead &oh = net.heads[s.head_index];
    s.head.reserve(oh.layers.size());
    for (const DenseLayer &l : oh.layers) {
      s.head.push_back(ForwardLayer(l, *x, s.segment_lengths, mode));
      x = &s.head.back().output;
    }
  }
  return s;
}

Matrix ExtractTap(const DenseNetwork &net, const Matrix &frames_by_row,
                  const std::vector<Index> &segment_lengths) {
  Batch b{frames_by_row.transpose(), segment_lengths};
  ForwardState s = Forward(net, b, Mode::kInfer, nullptr, net.TapIndex());
  return s.Output().transpose();
}

NetworkGradient NetworkGradient::ZerosLike(const DenseNetwork &net) {
  NetworkGradient g;
  auto zeros = [](const std::vector<DenseLayer> &ls) {
    std::vector<LayerGradient> out;
    for (const DenseLayer &l : ls)
      out.push_back({Matrix::Zero(l.weights.rows(), l.weights.cols()), Vector::Zero(l.bias.size())});
    return out;
  };
  g.trunk = zeros(net.layers);
  for (const OutputHead &h : net.heads) g.heads[h.name] = zeros(h.layers);
  return g;
}

double NetworkGradient::SquaredNorm() const {
  double s = 0.0;
  for (const LayerGradient &l : trunk) s += l.weights.squaredNorm() + l.bias.squaredNorm();
  for (const auto &[name, ls] : heads)
    for (const LayerGradient &l : ls) s += l.weights.squaredNorm() + l.bias.squaredNorm();
  return s;
}

namespace {

// Takes dL/d(output) of one layer, fills its parameter gradient and returns
// dL/d(input).
Matrix BackwardLayer(const DenseLayer &layer, const LayerCache &c,
                     const std::vector<Index> &segments, Matrix d, LayerGradient &g) {
  const Index n = d.cols();
  if (layer.batch_norm && !c.bn_batch_stats) {
    d = (d.array().colwise() * c.bn_inv_std.array()).matrix();
  } else if (layer.batch_norm) {
    Matrix xhat = (c.activation.colwise() - c.bn_mean).array().colwise() * c.bn_inv_std.array();
    Vector sum_d = d.rowwise().sum();
    Vector sum_dx = (d.array() * xhat.array()).rowwise().sum();
    Matrix da = (static_cast<double>(n) * d).colwise() - sum_d;
    da -= (xhat.array().colwise() * sum_dx.array()).matrix();
    d = (da.array().colwise() * (c.bn_inv_std.array() / n)).matrix();
  }
  switch (layer.nonlinearity) {
    case Nonlinearity::kLinear: break;
    case Nonlinearity::kTanh: d.array() *= 1.0 - c.activation.array().square(); break;
    case Nonlinearity::kRelu: d.array() *= (c.activation.array() > 0.0).cast<double>(); break;
  }
  g.weights.noalias() = d * c.spliced.transpose();
  g.bias = d.rowwise().sum();
  Matrix ds = layer.weights.transpose() * d;
  if (layer.splice.size() == 1 && layer.splice[0] == 0) return ds;
  const Index dim = layer.InputDim(), k = static_cast<Index>(layer.splice.size());
  std::vector<Index> index = SpliceIndex(n, segments, layer.splice);
  Matrix dx = Matrix::Zero(dim, n);
  for (Index t = 0; t < n; ++t)
    for (Index j = 0; j < k; ++j) dx.col(index[t * k + j]) += ds.block(j * dim, t, dim, 1);
  return dx;
}

}  // namespace

NetworkGradient Backward(const DenseNetwork &net, const ForwardState &state,
                         const Matrix &d_output) {
  const Matrix &out = state.Output();
  if (d_output.rows() != out.rows() || d_output.cols() != out.cols())
    Fail("output gradient shape {}x{} does not match output {}x{}", d_output.rows(),
         d_output.cols(), out.rows(), out.cols());
  NetworkGradient g = NetworkGradient::ZerosLike(net);
  Matrix d = d_output;
  if (state.head_index >= 0) {
    const OutputHead &h = net.heads[state.head_index];
    auto &hg = g.heads[h.name];
    for (int i = static_cast<int>(state.head.size()) - 1; i >= 0; --i)
      d = BackwardLayer(h.layers[i], state.head[i], state.segment_lengths, std::move(d), hg[i]);
  }
  for (int i = static_cast<int>(state.trunk.size()) - 1; i >= 0; --i)
    d = BackwardLayer(net.layers[i], state.trunk[i], state.segment_lengths, std::move(d),
                      g.trunk[i]);
  return g;
}

double SquaredErrorLoss(const Matrix &output, const Matrix &targets, Matrix *grad) {
  if (output.rows() != targets.rows() || output.cols() != targets.cols())
    Fail("target shape {}x{} does not match output {}x{}", targets.rows(), targets.cols(),
         output.rows(), output.cols());
  const double n = static_cast<double>(output.cols());
  Matrix diff = output - targets;
  double loss = 0.5 * diff.squaredNorm() / n;
  if (grad) *grad = diff / n;
  return loss;
}

double CrossEntropyLoss(const Matrix &logits, const std::vector<int> &labels, Matrix *grad) {
  if (static_cast<Index>(labels.size()) != logits.cols())
    Fail("{} labels for {} frames", labels.size(), logits.cols());
  const double n = static_cast<double>(logits.cols());
  double loss = 0.0;
  if (grad) grad->resize(logits.rows(), logits.cols());
  for (Index t = 0; t < logits.cols(); ++t) {
    int y = labels[t];
    if (y < 0 || y >= logits.rows()) Fail("label {} outside [0, {})", y, logits.rows());
    double m = logits.col(t).maxCoeff();
    Vector e = (logits.col(t).array() - m).exp();
    double z = e.sum();
    loss += std::log(z) + m - logits(y, t);
    if (grad) {
      grad->col(t) = e / (z * n);
      (*grad)(y, t) -= 1.0 / n;
    }
  }
  return loss / n;
}

double Accuracy(const Matrix &logits, const std::vector<int> &labels) {
  if (static_cast<Index>(labels.size()) != logits.cols())
    Fail("{} labels for {} frames", labels.size(), logits.cols());
  std::size_t correct = 0;
  for (Index t = 0; t < logits.cols(); ++t) {
    Index best;
    logits.col(t).maxCoeff(&best);
    correct += best == labels[t];
  }
  return logits.cols() ? static_cast<double>(correct) / logits.cols() : 0.0;
}

void ApplySgd(DenseNetwork &net, const NetworkGradient &grad, double lr) {
  if (grad.trunk.size() != net.layers.size()) Fail("gradient does not match network");
  for (std::size_t i = 0; i < net.layers.size(); ++i) {
    net.layers[i].weights -= lr * grad.trunk[i].weights;
    net.layers[i].bias -= lr * grad.trunk[i].bias;
  }
  for (const auto &[name, gs] : grad.heads) {
    OutputHead &h = net.Head(name);
    for (std::size_t i = 0; i < h.layers.size(); ++i) {
      h.layers[i].weights -= lr * gs[i].weights;
      h.layers[i].bias -= lr * gs[i].bias;
    }
  }
}

void UpdateRunningStats(DenseNetwork &net, const ForwardState &state, double momentum) {
  auto update = [&](DenseLayer &l, const LayerCache &c) {
    if (!l.batch_norm || !c.bn_batch_stats) return;
    Vector var = c.bn_inv_std.array().square().inverse() - kBatchNormEpsilon;
    l.running_mean = (1.0 - momentum) * l.running_mean + momentum * c.bn_mean;
    l.running_var = ((1.0 - momentum) * l.running_var + momentum * var).cwiseMax(1e-12);
  };
  for (std::size_t i = 0; i < state.trunk.size(); ++i) update(net.layers[i], state.trunk[i]);
  if (state.head_index >= 0) {
    OutputHead &h = net.heads[state.head_index];
    for (std::size_t i = 0; i < state.head.size(); ++i) update(h.layers[i], state.head[i]);
  }
}

void SetInputNormalization(DenseNetwork &net, const Matrix &frames_by_row) {
  if (frames_by_row.rows() < 1) Fail("cannot normalize inputs from zero frames");
  if (frames_by_row.cols() != net.InputDim())
    Fail("normalization data has dimension {}, network expects {}", frames_by_row.cols(),
         net.InputDim());
  net.input_offset = frames_by_row.colwise().mean().transpose();
  Vector var = (frames_by_row.rowwise() - net.input_offset.transpose())
                   .array().square().colwise().mean().transpose();
  net.input_scale = var.array().sqrt().max(1e-8).inverse();
}

}  // namespace zrsw
