// vtln/diag-gmm.cc

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

#include "zrsw/vtln/diag-gmm.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>

#include "zrsw/base/binary-io.h"
#include "zrsw/base/error.h"

namespace zrsw {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double LogSumExp(const Eigen::Ref<const Vector> &v) {
  double m = v.maxCoeff();
  if (m == kNegInf) return kNegInf;
  return m + std::log((v.array() - m).exp().sum());
}

}  // namespace

DiagonalGmm::DiagonalGmm(Vector weights, Matrix means, Matrix variances)
    : weights_(std::move(weights)),
      means_(std::move(means)),
      variances_(std::move(variances)) {
  Check();
  CacheConstants();
}

void DiagonalGmm::Check() const {
  if (means_.rows() < 1 || means_.cols() < 1) Fail("GMM must have K >= 1 and D >= 1");
  if (weights_.size() != means_.rows() || variances_.rows() != means_.rows() ||
      variances_.cols() != means_.cols())
    Fail("GMM parameter shapes disagree");
  if ((weights_.array() < 0.0).any() || std::abs(weights_.sum() - 1.0) > 1e-9)
    Fail("GMM weights do not form a simplex (sum {})", weights_.sum());
  if (!(variances_.array() > 0.0).all() || !variances_.allFinite() || !means_.allFinite())
    Fail("GMM variances must be positive and parameters finite");
}

void DiagonalGmm::CacheConstants() {
  inv_var_ = variances_.cwiseInverse();
  log_norm_.resize(weights_.size());
  for (Index k = 0; k < weights_.size(); ++k) {
    double log_w = weights_(k) > 0.0 ? std::log(weights_(k)) : kNegInf;
    log_norm_(k) = log_w - 0.5 * (variances_.row(k).array() *
                                  (2.0 * std::numbers::pi)).log().sum();
  }
}

Matrix DiagonalGmm::ComponentLogJoint(const Matrix &frames) const {
  if (frames.cols() != Dim())
    Fail("GMM of dimension {} given frames of dimension {}", Dim(), frames.cols());
  // Direct (x - mu)^2 form; the expanded quadratic loses precision when
  // variances are floored far below the squared means.
  Matrix out(frames.rows(), NumComponents());
  for (Index k = 0; k < NumComponents(); ++k) {
    out.col(k) = ((frames.rowwise() - means_.row(k)).array().square().rowwise() *
                  inv_var_.row(k).array())
                     .rowwise()
                     .sum()
                     .matrix() *
                     -0.5 +
                 Vector::Constant(frames.rows(), log_norm_(k));
  }
  return out;
}

Vector DiagonalGmm::FrameLogLikelihoods(const Matrix &frames) const {
  Matrix joint = ComponentLogJoint(frames);
  Vector out(frames.rows());
  for (Index t = 0; t < frames.rows(); ++t) out(t) = LogSumExp(joint.row(t).transpose());
  return out;
}

double DiagonalGmm::LogLikelihood(const Eigen::Ref<const Vector> &frame) const {
  Matrix one = frame.transpose();
  return FrameLogLikelihoods(one)(0);
}

double GmmLogLikelihood(const DiagonalGmm &gmm, const Matrix &frames) {
  if (frames.cols() != gmm.Dim())
    Fail("GMM of dimension {} given frames of dimension {}", gmm.Dim(), frames.cols());
  return gmm.FrameLogLikelihoods(frames).sum();
}

namespace {

// k-means++ seeding followed by a few Lloyd iterations on a subsample.
Matrix SeedMeans(const Matrix &frames, int k, Index subsample, std::mt19937_64 &rng) {
  std::vector<Index> rows(frames.rows());
  for (Index i = 0; i < frames.rows(); ++i) rows[i] = i;
  if (subsample > 0 && frames.rows() > subsample) {
    std::shuffle(rows.begin(), rows.end(), rng);
    rows.resize(subsample);
    std::sort(rows.begin(), rows.end());
  }
  Matrix data(rows.size(), frames.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) data.row(i) = frames.row(rows[i]);
  const Index n = data.rows();

  Matrix centers(k, data.cols());
  std::uniform_int_distribution<Index> first(0, n - 1);
  centers.row(0) = data.row(first(rng));
  Vector best = (data.rowwise() - centers.row(0)).rowwise().squaredNorm();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int c = 1; c < k; ++c) {
    double total = best.sum();
    Index pick = 0;
    if (total > 0.0) {
      double target = unit(rng) * total, acc = 0.0;
      for (pick = 0; pick < n - 1; ++pick) {
        acc += best(pick);
        if (acc >= target) break;
      }
    } else {
      pick = first(rng);
    }
    centers.row(c) = data.row(pick);
    best = best.cwiseMin((data.rowwise() - centers.row(c)).rowwise().squaredNorm());
  }
  for (int iter = 0; iter < 5; ++iter) {
    Matrix sums = Matrix::Zero(k, data.cols());
    Vector counts = Vector::Zero(k);
    for (Index i = 0; i < n; ++i) {
      Index arg;
      (centers.rowwise() - data.row(i)).rowwise().squaredNorm().minCoeff(&arg);
      sums.row(arg) += data.row(i);
      counts(arg) += 1.0;
    }
    for (int c = 0; c < k; ++c)
      if (counts(c) > 0.0) centers.row(c) = sums.row(c) / counts(c);
  }
  return centers;
}

}  // namespace

GmmTrainResult TrainGmmEm(const Matrix &frames, const GmmTrainOptions &options) {
  const int k = options.num_components;
  const Index n = frames.rows(), d = frames.cols();
  if (d < 1) Fail("GMM training needs D >= 1");
  if (k < 1 || k > n) Fail("GMM training needs 1 <= K <= N (K={}, N={})", k, n);
  if (options.iterations < 0) Fail("negative iteration count");
  if (!frames.allFinite()) Fail("GMM training data contains non-finite values");

  Vector mean = frames.colwise().mean().transpose();
  Vector global_var =
      (frames.rowwise() - mean.transpose()).cwiseAbs2().colwise().mean().transpose();
  Vector floor = (global_var * options.variance_floor_fraction)
                     .cwiseMax(std::numeric_limits<double>::min() * 1e10);
  // Degenerate (constant) dimensions still get a usable floor.
  for (Index j = 0; j < d; ++j)
    if (!(floor(j) > 1e-12)) floor(j) = 1e-12;

  std::mt19937_64 rng(options.seed);
  Matrix means = SeedMeans(frames, k, options.seeding_subsample, rng);
  Matrix vars = global_var.cwiseMax(floor).transpose().replicate(k, 1);
  Vector weights = Vector::Constant(k, 1.0 / k);

  GmmTrainResult result;
  DiagonalGmm gmm(weights, means, vars);
  for (int iter = 0; iter <= options.iterations; ++iter) {
    Matrix joint = gmm.ComponentLogJoint(frames);
    double total = 0.0;
    for (Index t = 0; t < n; ++t) {
      double lse = LogSumExp(joint.row(t).transpose());
      total += lse;
      joint.row(t) = (joint.row(t).array() - lse).exp();
    }
    result.log_likelihood_trace.push_back(total);
    if (iter == options.iterations) break;

    // M-step; components with no responsibility keep their mean and variance.
    Vector occupancy = joint.colwise().sum().transpose();
    Matrix first = joint.transpose() * frames;
    Matrix second = joint.transpose() * frames.cwiseAbs2();
    for (int c = 0; c < k; ++c) {
      if (occupancy(c) <= 0.0) continue;
      means.row(c) = first.row(c) / occupancy(c);
      Vector var = second.row(c).transpose() / occupancy(c) -
                   means.row(c).transpose().cwiseAbs2();
      vars.row(c) = var.cwiseMax(floor).transpose();
    }
    weights = occupancy / occupancy.sum();
    gmm = DiagonalGmm(weights, means, vars);
  }
  result.gmm = gmm;
  return result;
}

void WriteGmm(std::ostream &os, const DiagonalGmm &gmm) {
  BinaryWriter w(os);
  w.Magic("ZRSG");
  w.U32(1);
  w.VectorF64(gmm.weights());
  w.MatrixF64(gmm.means());
  w.MatrixF64(gmm.variances());
}

DiagonalGmm ReadGmm(std::istream &is, const std::string &source) {
  BinaryReader r(is, source);
  r.ExpectMagic("ZRSG");
  if (std::uint32_t v = r.U32(); v != 1) Fail("{}: unsupported GMM version {}", source, v);
  Vector weights = r.VectorF64();
  Matrix means = r.MatrixF64();
  Matrix vars = r.MatrixF64();
  return DiagonalGmm(std::move(weights), std::move(means), std::move(vars));
}

void SaveGmm(const std::filesystem::path &path, const DiagonalGmm &gmm) {
  std::ofstream os(path, std::ios::binary);
  if (!os) Fail("cannot write GMM '{}'", path.string());
  WriteGmm(os, gmm);
}

DiagonalGmm LoadGmm(const std::filesystem::path &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) Fail("cannot open GMM '{}'", path.string());
  return ReadGmm(is, path.string());
}

}  // namespace zrsw
