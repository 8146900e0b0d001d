// nnet/network.h

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

#ifndef ZRSW_NNET_NETWORK_H_
#define ZRSW_NNET_NETWORK_H_

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "zrsw/base/matrix.h"

namespace zrsw {

enum class Nonlinearity { kLinear, kTanh, kRelu };

const char *NonlinearityName(Nonlinearity f);
Nonlinearity ParseNonlinearity(const std::string &name);

/// Affine transform of the spliced input, a pointwise nonlinearity and an
/// optional batch normalization (no learned scale or shift) on the result.
/// Activations are column-major: one column per frame.
struct DenseLayer {
  std::vector<int> splice{0};
  Matrix weights;  // out x (in * splice.size())
  Vector bias;     // out
  Nonlinearity nonlinearity = Nonlinearity::kLinear;
  bool batch_norm = false;
  Vector running_mean;  // out, when batch_norm
  Vector running_var;

  Index InputDim() const { return splice.empty() ? 0 : weights.cols() / splice.size(); }
  Index OutputDim() const { return weights.rows(); }
};

/// Fan-in scaled uniform initialization: U(-s, s), s = sqrt(3 / fan_in) for
/// linear/tanh layers and sqrt(6 / fan_in) for ReLU layers. Bias zero.
DenseLayer MakeLayer(Index input_dim, Index output_dim, Nonlinearity f, bool batch_norm,
                     std::vector<int> splice, std::mt19937_64 &rng);

/// A per-language classifier stacked on the trunk; its last layer emits
/// logits (softmax is part of the loss).
struct OutputHead {
  std::string name;
  std::vector<DenseLayer> layers;
};

struct DenseNetwork {
  /// Inputs are mapped to (x - input_offset) .* input_scale first; empty
  /// vectors mean no normalization.
  Vector input_offset;
  Vector input_scale;
  std::vector<DenseLayer> layers;
  /// Layer whose output is the extracted representation; -1 = last layer.
  int tap = -1;
  std::vector<OutputHead> heads;

  Index InputDim() const;
  Index OutputDim() const;  // of the trunk
  int TapIndex() const;
  const OutputHead &Head(const std::string &name) const;
  OutputHead &Head(const std::string &name);
  /// Throws on incompatible consecutive dimensions, bad batch-norm state or
  /// duplicate head names.
  void Validate() const;
  std::size_t NumParameters() const;
};

/// Frames of one or more sequences laid side by side. segment_lengths
/// partitions the columns into sequences for splicing; empty means one
/// sequence.
struct Batch {
  Matrix input;  // dim x frames
  std::vector<Index> segment_lengths;
};

/// Every frame its own sequence (splicing replicates the frame).
std::vector<Index> FramewiseSegments(Index num_frames);

enum class Mode { kTrain, kInfer };

/// Source columns of a spliced matrix: entry t * |offsets| + k is the input
/// column used for offset k at output column t, clamped inside t's segment.
std::vector<Index> SpliceIndex(Index num_frames, const std::vector<Index> &segment_lengths,
                               const std::vector<int> &offsets);

/// Concatenation of the input columns at t + o for every offset o.
Matrix Splice(const Matrix &input, const std::vector<Index> &segment_lengths,
              const std::vector<int> &offsets);

struct LayerCache {
  Matrix spliced;      // layer input after splicing
  Matrix activation;   // f(W s + b), before batch norm
  Vector bn_mean;      // statistics used by batch norm
  Vector bn_inv_std;
  bool bn_batch_stats = false;  // statistics depend on the batch (train mode)
  Matrix output;
};

struct ForwardState {
  Matrix input;  // after input normalization
  std::vector<Index> segment_lengths;
  std::vector<LayerCache> trunk;
  std::vector<LayerCache> head;
  int head_index = -1;  // into DenseNetwork::heads

  const Matrix &Output() const;
};

constexpr double kBatchNormEpsilon = 1e-5;

/// Runs the trunk, then the named head if given. stop_after limits the trunk
/// to layers [0, stop_after] and skips heads. Throws on dimension mismatch
/// or an unknown head.
ForwardState Forward(const DenseNetwork &net, const Batch &batch, Mode mode,
                     const std::string *head = nullptr, int stop_after = -1);

/// Convenience inference: rows are frames in and out. Extraction stops at
/// the tap layer.
Matrix ExtractTap(const DenseNetwork &net, const Matrix &frames_by_row,
                  const std::vector<Index> &segment_lengths = {});

struct LayerGradient {
  Matrix weights;
  Vector bias;
};

struct NetworkGradient {
  std::vector<LayerGradient> trunk;
  std::map<std::string, std::vector<LayerGradient>> heads;

  /// Zero gradients shaped like every parameter of net, all heads included.
  static NetworkGradient ZerosLike(const DenseNetwork &net);
  double SquaredNorm() const;
};

/// Exact backpropagation of d_output (gradient of the loss with respect to
/// ForwardState::Output()). Gradients of heads not used stay zero.
NetworkGradient Backward(const DenseNetwork &net, const ForwardState &state,
                         const Matrix &d_output);

/// Mean over frames of 0.5 ||y - t||^2. Writes dL/dy when grad != nullptr.
double SquaredErrorLoss(const Matrix &output, const Matrix &targets, Matrix *grad);

/// Mean over frames of -log softmax(logits)[label].
double CrossEntropyLoss(const Matrix &logits, const std::vector<int> &labels, Matrix *grad);

/// Fraction of frames whose argmax logit equals the label.
double Accuracy(const Matrix &logits, const std::vector<int> &labels);

/// params -= lr * grad for every trunk layer and every head present in grad.
void ApplySgd(DenseNetwork &net, const NetworkGradient &grad, double lr);

/// running = (1 - momentum) * running + momentum * batch statistic for every
/// batch-normalized layer visited by state.
void UpdateRunningStats(DenseNetwork &net, const ForwardState &state, double momentum);

/// Sets input_offset/input_scale to the per-dimension mean and 1/std of
/// the rows of frames (std floored at 1e-8).
void SetInputNormalization(DenseNetwork &net, const Matrix &frames_by_row);

}  // namespace zrsw

#endif  // ZRSW_NNET_NETWORK_H_
