// vtln/diag-gmm.h

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

#ifndef ZRSW_VTLN_DIAG_GMM_H_
#define ZRSW_VTLN_DIAG_GMM_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "zrsw/base/matrix.h"

namespace zrsw {

/// K-component mixture of diagonal-covariance Gaussians.
class DiagonalGmm {
 public:
  DiagonalGmm() = default;
  DiagonalGmm(Vector weights, Matrix means, Matrix variances);

  Index NumComponents() const { return means_.rows(); }
  Index Dim() const { return means_.cols(); }
  const Vector &weights() const { return weights_; }
  const Matrix &means() const { return means_; }
  const Matrix &variances() const { return variances_; }

  /// log p(x) for one frame.
  double LogLikelihood(const Eigen::Ref<const Vector> &frame) const;
  /// Per-frame log p(x_t) (T values).
  Vector FrameLogLikelihoods(const Matrix &frames) const;
  /// Per-frame component log joint log(w_k N(x_t; k)), T x K.
  Matrix ComponentLogJoint(const Matrix &frames) const;

  /// Throws unless weights form a simplex (1e-9) and variances are positive.
  void Check() const;

 private:
  void CacheConstants();

  Vector weights_;
  Matrix means_;
  Matrix variances_;
  Vector log_norm_;  // log w_k - 0.5 sum_d log(2 pi var_kd)
  Matrix inv_var_;
};

/// Sum over frames of log sum_k w_k N(x_t; mu_k, diag var_k).
double GmmLogLikelihood(const DiagonalGmm &gmm, const Matrix &frames);

struct GmmTrainOptions {
  int num_components = 64;
  int iterations = 20;
  std::uint64_t seed = 1;
  /// Floor per dimension = fraction x global variance of that dimension.
  double variance_floor_fraction = 1e-3;
  /// Frames used for k-means++ seeding (0 = all).
  Index seeding_subsample = 5000;
};

struct GmmTrainResult {
  DiagonalGmm gmm;
  /// Total log-likelihood of the training data before EM and after each
  /// iteration (iterations + 1 entries).
  std::vector<double> log_likelihood_trace;
};

GmmTrainResult TrainGmmEm(const Matrix &frames, const GmmTrainOptions &options);

/// "ZRSG" container: version, K, D, weights, means, variances (f64).
void WriteGmm(std::ostream &os, const DiagonalGmm &gmm);
DiagonalGmm ReadGmm(std::istream &is, const std::string &source = "<stream>");
void SaveGmm(const std::filesystem::path &path, const DiagonalGmm &gmm);
DiagonalGmm LoadGmm(const std::filesystem::path &path);

}  // namespace zrsw

#endif  // ZRSW_VTLN_DIAG_GMM_H_
