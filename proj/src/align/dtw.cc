// align/dtw.cc

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

#include "zrsw/align/dtw.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "zrsw/base/error.h"

namespace zrsw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool InBand(Index i, Index j, Index tx, Index ty, int band) {
  if (band <= 0 || tx == 1 || ty == 1) return true;
  double expected = static_cast<double>(i) * (ty - 1) / (tx - 1);
  return std::abs(j - expected) <= band;
}

// Step-length and cost tables filled by the DP. Predecessor codes:
// 0 = diagonal, 1 = from (i-1, j), 2 = from (i, j-1).
struct Tables {
  Matrix cost;
  Matrix length;
  Eigen::Matrix<signed char, Eigen::Dynamic, Eigen::Dynamic> from;
};

Tables Fill(const Matrix &d, const DtwOptions &options, bool keep_from) {
  const Index tx = d.rows(), ty = d.cols();
  Tables t;
  t.cost = Matrix::Constant(tx, ty, kInf);
  t.length = Matrix::Zero(tx, ty);
  if (keep_from) t.from.setConstant(tx, ty, -1);
  for (Index i = 0; i < tx; ++i) {
    for (Index j = 0; j < ty; ++j) {
      if (!InBand(i, j, tx, ty, options.band)) continue;
      if (i == 0 && j == 0) {
        t.cost(0, 0) = d(0, 0);
        t.length(0, 0) = 1;
        continue;
      }
      double best = kInf;
      double len = 0;
      signed char arg = -1;
      if (i > 0 && j > 0 && t.cost(i - 1, j - 1) < best) {
        best = t.cost(i - 1, j - 1);
        len = t.length(i - 1, j - 1);
        arg = 0;
      }
      if (i > 0 && t.cost(i - 1, j) < best) {
        best = t.cost(i - 1, j);
        len = t.length(i - 1, j);
        arg = 1;
      }
      if (j > 0 && t.cost(i, j - 1) < best) {
        best = t.cost(i, j - 1);
        len = t.length(i, j - 1);
        arg = 2;
      }
      if (arg < 0) continue;
      t.cost(i, j) = best + d(i, j);
      t.length(i, j) = len + 1;
      if (keep_from) t.from(i, j) = arg;
    }
  }
  if (!std::isfinite(t.cost(tx - 1, ty - 1)))
    Fail("DTW band of {} frames admits no path for lengths {} and {}", options.band, tx, ty);
  return t;
}

}  // namespace

Matrix UnitRows(const Matrix &m) {
  Matrix out = m;
  for (Index r = 0; r < m.rows(); ++r) {
    double n = m.row(r).norm();
    if (n > 0.0) out.row(r) /= n;
  }
  return out;
}

double CosineDistance(const Eigen::Ref<const Vector> &x, const Eigen::Ref<const Vector> &y) {
  if (x.size() != y.size())
    Fail("cosine distance between vectors of dimension {} and {}", x.size(), y.size());
  double nx = x.norm(), ny = y.norm();
  if (nx == 0.0 || ny == 0.0) return 1.0;
  double sim = x.dot(y) / (nx * ny);
  return 1.0 - std::clamp(sim, -1.0, 1.0);
}

Matrix CosineDistanceMatrix(const Matrix &x, const Matrix &y) {
  if (x.cols() != y.cols())
    Fail("cosine distance between frames of dimension {} and {}", x.cols(), y.cols());
  Matrix sim = UnitRows(x) * UnitRows(y).transpose();
  Matrix d = (1.0 - sim.array().max(-1.0).min(1.0)).matrix();
  // Zero frames: distance 1 regardless of the dot product (which is 0 anyway).
  return d;
}

DtwResult Dtw(const Matrix &distances, const DtwOptions &options) {
  if (distances.rows() < 1 || distances.cols() < 1) Fail("DTW of an empty sequence");
  Tables t = Fill(distances, options, true);
  DtwResult r;
  Index i = distances.rows() - 1, j = distances.cols() - 1;
  r.total_cost = t.cost(i, j);
  while (true) {
    r.path.emplace_back(i, j);
    if (i == 0 && j == 0) break;
    switch (t.from(i, j)) {
      case 0: --i; --j; break;
      case 1: --i; break;
      default: --j; break;
    }
  }
  std::reverse(r.path.begin(), r.path.end());
  r.normalized_cost = r.total_cost / static_cast<double>(r.path.size());
  return r;
}

DtwResult Dtw(const Matrix &x, const Matrix &y, const FrameDistance &distance,
              const DtwOptions &options) {
  if (x.rows() < 1 || y.rows() < 1) Fail("DTW of an empty sequence");
  if (x.cols() != y.cols())
    Fail("DTW between frames of dimension {} and {}", x.cols(), y.cols());
  Matrix d(x.rows(), y.rows());
  for (Index i = 0; i < x.rows(); ++i)
    for (Index j = 0; j < y.rows(); ++j)
      d(i, j) = distance(x.row(i).transpose(), y.row(j).transpose());
  return Dtw(d, options);
}

DtwResult Dtw(const Matrix &x, const Matrix &y, const DtwOptions &options) {
  if (x.rows() < 1 || y.rows() < 1) Fail("DTW of an empty sequence");
  return Dtw(CosineDistanceMatrix(x, y), options);
}

double NormalizedDtwCost(const Matrix &distances, const DtwOptions &options) {
  if (distances.rows() < 1 || distances.cols() < 1) Fail("DTW of an empty sequence");
  Tables t = Fill(distances, options, false);
  Index i = distances.rows() - 1, j = distances.cols() - 1;
  return t.cost(i, j) / t.length(i, j);
}

double DtwNormalizedCost(const Matrix &x, const Matrix &y, const DtwOptions &options) {
  if (x.rows() < 1 || y.rows() < 1) Fail("DTW of an empty sequence");
  return NormalizedDtwCost(CosineDistanceMatrix(x, y), options);
}

}  // namespace zrsw
