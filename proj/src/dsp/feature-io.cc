// dsp/feature-io.cc

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

#include "zrsw/dsp/feature-io.h"

#include <fstream>

#include <fmt/format.h>

#include "zrsw/base/binary-io.h"
#include "zrsw/base/error.h"

namespace zrsw {

void WriteFeatures(std::ostream &os, const Matrix &data) {
  BinaryWriter w(os);
  w.Magic("ZRSF");
  w.U32(kFeatureFormatVersion);
  w.U32(static_cast<std::uint32_t>(data.rows()));
  w.U32(static_cast<std::uint32_t>(data.cols()));
  for (Index r = 0; r < data.rows(); ++r)
    for (Index c = 0; c < data.cols(); ++c) w.F32(static_cast<float>(data(r, c)));
}

Matrix ReadFeatures(std::istream &is, const std::string &source) {
  BinaryReader r(is, source);
  r.ExpectMagic("ZRSF");
  std::uint32_t version = r.U32();
  if (version != kFeatureFormatVersion)
    Fail("{}: unsupported feature format version {}", source, version);
  std::uint32_t rows = r.U32(), cols = r.U32();
  if (static_cast<std::uint64_t>(rows) * cols > (1ull << 31))
    Fail("{}: implausible feature size {}x{}", source, rows, cols);
  Matrix m(rows, cols);
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) m(i, j) = r.F32();
  if (!m.allFinite()) Fail("{}: non-finite feature values", source);
  return m;
}

void WriteFeatureFile(const std::filesystem::path &path, const FeatureSequence &f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) Fail("cannot open '{}' for writing", path.string());
  WriteFeatures(os, f.data);
  if (!os) Fail("write to '{}' failed", path.string());
}

FeatureSequence ReadFeatureFile(const std::filesystem::path &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) Fail("cannot open feature file '{}'", path.string());
  FeatureSequence f;
  f.data = ReadFeatures(is, path.string());
  return f;
}

void WriteFeaturesCsv(std::ostream &os, const Matrix &data) {
  for (Index r = 0; r < data.rows(); ++r) {
    for (Index c = 0; c < data.cols(); ++c)
      os << (c ? "," : "") << fmt::format("{:.9g}", data(r, c));
    os << '\n';
  }
}

void WriteFeatureStore(const std::filesystem::path &dir, const FeatureStore &store) {
  std::filesystem::create_directories(dir);
  for (const auto &[utt, feats] : store) WriteFeatureFile(dir / (utt + ".zrsf"), feats);
}

FeatureStore ReadFeatureStore(const std::filesystem::path &dir) {
  if (!std::filesystem::is_directory(dir))
    Fail("feature directory '{}' does not exist", dir.string());
  FeatureStore store;
  for (const auto &entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() != ".zrsf") continue;
    store[entry.path().stem().string()] = ReadFeatureFile(entry.path());
  }
  return store;
}

}  // namespace zrsw
