// eval/similarity.h

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

#ifndef ZRSW_EVAL_SIMILARITY_H_
#define ZRSW_EVAL_SIMILARITY_H_

#include <ostream>
#include <string>
#include <vector>

#include "zrsw/base/matrix.h"

namespace zrsw {

/// Entry (i, j) is the cosine similarity of frame i of x and frame j of y.
/// A zero frame has similarity 0 with everything. Throws on a dimension
/// mismatch.
Matrix SimilarityMatrix(const Matrix &x, const Matrix &y);

/// 8-bit binary PGM, rows = frames of x. Values below clip render as the
/// clip floor; [clip, 1] maps linearly to [0, 255].
void WriteSimilarityPgm(const Matrix &sim, double clip, std::ostream &os);
void WriteSimilarityPgmFile(const Matrix &sim, double clip, const std::string &path);

/// Raw (unclipped) values, one row per line.
void WriteSimilarityCsv(const Matrix &sim, std::ostream &os);

/// Mean similarity over the cells where both frames fall in spans with the
/// same label; used to quantify diagonal-band width.
double MeanBlockSimilarity(const Matrix &sim, const std::vector<int> &row_labels,
                           const std::vector<int> &col_labels);

}  // namespace zrsw

#endif  // ZRSW_EVAL_SIMILARITY_H_
