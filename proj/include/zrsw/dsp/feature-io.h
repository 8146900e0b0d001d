// dsp/feature-io.h

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

#ifndef ZRSW_DSP_FEATURE_IO_H_
#define ZRSW_DSP_FEATURE_IO_H_

#include <filesystem>
#include <iosfwd>
#include <string>

#include "zrsw/dsp/feature-sequence.h"

namespace zrsw {

// ZRSF layout: "ZRSF", version u32 (=1), T u32, D u32, then T*D row-major
// float32, all little-endian. Timing and provenance are not stored; readers
// get the default 25 ms / 10 ms framing.
inline constexpr std::uint32_t kFeatureFormatVersion = 1;

void WriteFeatures(std::ostream &os, const Matrix &data);
Matrix ReadFeatures(std::istream &is, const std::string &source = "<stream>");

void WriteFeatureFile(const std::filesystem::path &path, const FeatureSequence &f);
FeatureSequence ReadFeatureFile(const std::filesystem::path &path);

/// Comma-separated rows, 9 significant digits.
void WriteFeaturesCsv(std::ostream &os, const Matrix &data);

/// One <utterance>.zrsf file per entry.
void WriteFeatureStore(const std::filesystem::path &dir, const FeatureStore &store);
FeatureStore ReadFeatureStore(const std::filesystem::path &dir);

}  // namespace zrsw

#endif  // ZRSW_DSP_FEATURE_IO_H_
