// align/dtw.h

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

#ifndef ZRSW_ALIGN_DTW_H_
#define ZRSW_ALIGN_DTW_H_

#include <functional>
#include <utility>
#include <vector>

#include "zrsw/base/matrix.h"

namespace zrsw {

/// 1 - x.y / (|x| |y|); a zero vector is at distance 1 from everything.
double CosineDistance(const Eigen::Ref<const Vector> &x,
                      const Eigen::Ref<const Vector> &y);

/// All pairwise cosine distances, Tx x Ty.
Matrix CosineDistanceMatrix(const Matrix &x, const Matrix &y);

using FrameDistance = std::function<double(const Eigen::Ref<const Vector> &,
                                           const Eigen::Ref<const Vector> &)>;

struct DtwOptions {
  /// Sakoe-Chiba band half-width in frames, measured from the diagonal
  /// rescaled to the two lengths; <= 0 disables the band.
  int band = 0;
};

struct DtwResult {
  std::vector<std::pair<Index, Index>> path;  // (0,0) ... (Tx-1, Ty-1)
  double total_cost = 0.0;
  double normalized_cost = 0.0;  // total_cost / path length
};

/// Minimum-total-cost monotone alignment with steps (1,0), (0,1), (1,1), unit
/// weights. Among equal-cost predecessors the diagonal wins, then (1,0).
DtwResult Dtw(const Matrix &distances, const DtwOptions &options = {});
DtwResult Dtw(const Matrix &x, const Matrix &y, const FrameDistance &distance,
              const DtwOptions &options = {});
/// Cosine-distance DTW.
DtwResult Dtw(const Matrix &x, const Matrix &y, const DtwOptions &options = {});

/// Normalized DTW cost of a precomputed distance matrix, no path kept.
double NormalizedDtwCost(const Matrix &distances, const DtwOptions &options = {});

/// Rows scaled to unit length (zero rows unchanged); UnitRows(x) *
/// UnitRows(y)^T is the cosine similarity matrix.
Matrix UnitRows(const Matrix &m);

/// Normalized cosine DTW cost without materializing the path.
double DtwNormalizedCost(const Matrix &x, const Matrix &y, const DtwOptions &options = {});

}  // namespace zrsw

#endif  // ZRSW_ALIGN_DTW_H_
