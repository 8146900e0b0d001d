// eval/similarity.cc

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

#include "zrsw/eval/similarity.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <vector>

#include <fmt/format.h>

#include "zrsw/align/dtw.h"
#include "zrsw/base/error.h"

namespace zrsw {

Matrix SimilarityMatrix(const Matrix &x, const Matrix &y) {
  if (x.cols() != y.cols())
    Fail("similarity matrix needs equal dimensions, got {} and {}", x.cols(), y.cols());
  return (UnitRows(x) * UnitRows(y).transpose()).array().max(-1.0).min(1.0).matrix();
}

void WriteSimilarityPgm(const Matrix &sim, double clip, std::ostream &os) {
  if (!(clip < 1.0)) Fail("similarity clip must be below 1, got {}", clip);
  os << "P5\n" << sim.cols() << " " << sim.rows() << "\n255\n";
  std::vector<unsigned char> row(sim.cols());
  for (Index i = 0; i < sim.rows(); ++i) {
    for (Index j = 0; j < sim.cols(); ++j) {
      double v = (std::max(sim(i, j), clip) - clip) / (1.0 - clip);
      row[j] = static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
    }
    os.write(reinterpret_cast<const char *>(row.data()), row.size());
  }
  if (!os) Fail("failed writing PGM image");
}

void WriteSimilarityPgmFile(const Matrix &sim, double clip, const std::string &path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) Fail("cannot open '{}' for writing", path);
  WriteSimilarityPgm(sim, clip, os);
}

void WriteSimilarityCsv(const Matrix &sim, std::ostream &os) {
  for (Index i = 0; i < sim.rows(); ++i) {
    for (Index j = 0; j < sim.cols(); ++j) os << (j ? "," : "") << fmt::format("{:.9g}", sim(i, j));
    os << "\n";
  }
}

double MeanBlockSimilarity(const Matrix &sim, const std::vector<int> &row_labels,
                           const std::vector<int> &col_labels) {
  if (row_labels.size() != static_cast<std::size_t>(sim.rows()) ||
      col_labels.size() != static_cast<std::size_t>(sim.cols()))
    Fail("block labels do not match the similarity matrix shape");
  double sum = 0.0;
  std::size_t n = 0;
  for (Index i = 0; i < sim.rows(); ++i)
    for (Index j = 0; j < sim.cols(); ++j)
      if (row_labels[i] >= 0 && row_labels[i] == col_labels[j]) {
        sum += sim(i, j);
        ++n;
      }
  if (n == 0) Fail("no frames share a block label");
  return sum / n;
}

}  // namespace zrsw
