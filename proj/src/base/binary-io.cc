// base/binary-io.cc

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

#include "zrsw/base/binary-io.h"

#include <bit>
#include <cstring>

#include "zrsw/base/error.h"

namespace zrsw {

static_assert(std::endian::native == std::endian::little,
              "binary containers assume a little-endian host");

bool AllFinite(const Matrix &m) { return m.allFinite(); }

void BinaryWriter::Magic(std::string_view magic) {
  os_.write(magic.data(), static_cast<std::streamsize>(magic.size()));
}

void BinaryWriter::U32(std::uint32_t v) {
  os_.write(reinterpret_cast<const char *>(&v), sizeof(v));
}

void BinaryWriter::F32(float v) {
  os_.write(reinterpret_cast<const char *>(&v), sizeof(v));
}

void BinaryWriter::F64(double v) {
  os_.write(reinterpret_cast<const char *>(&v), sizeof(v));
}

void BinaryWriter::String(std::string_view s) {
  U32(static_cast<std::uint32_t>(s.size()));
  os_.write(s.data(), static_cast<std::streamsize>(s.size()));
}

void BinaryWriter::MatrixF64(const Matrix &m) {
  U32(static_cast<std::uint32_t>(m.rows()));
  U32(static_cast<std::uint32_t>(m.cols()));
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) F64(m(r, c));
}

void BinaryWriter::VectorF64(const Vector &v) {
  U32(static_cast<std::uint32_t>(v.size()));
  for (Index i = 0; i < v.size(); ++i) F64(v(i));
}

void BinaryReader::Read(char *dst, std::size_t n) {
  is_.read(dst, static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(is_.gcount()) != n)
    Fail("{}: unexpected end of data", source_);
}

void BinaryReader::ExpectMagic(std::string_view magic) {
  std::string got(magic.size(), '\0');
  Read(got.data(), got.size());
  if (got != magic)
    Fail("{}: bad magic '{}', expected '{}'", source_, got, magic);
}

std::uint32_t BinaryReader::U32() {
  std::uint32_t v;
  Read(reinterpret_cast<char *>(&v), sizeof(v));
  return v;
}

float BinaryReader::F32() {
  float v;
  Read(reinterpret_cast<char *>(&v), sizeof(v));
  return v;
}

double BinaryReader::F64() {
  double v;
  Read(reinterpret_cast<char *>(&v), sizeof(v));
  return v;
}

std::string BinaryReader::String() {
  std::uint32_t n = U32();
  if (n > (1u << 24)) Fail("{}: implausible string length {}", source_, n);
  std::string s(n, '\0');
  Read(s.data(), n);
  return s;
}

Matrix BinaryReader::MatrixF64() {
  std::uint32_t rows = U32(), cols = U32();
  if (static_cast<std::uint64_t>(rows) * cols > (1ull << 32))
    Fail("{}: implausible matrix size {}x{}", source_, rows, cols);
  Matrix m(rows, cols);
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) m(r, c) = F64();
  return m;
}

Vector BinaryReader::VectorF64() {
  std::uint32_t n = U32();
  if (n > (1u << 30)) Fail("{}: implausible vector size {}", source_, n);
  Vector v(n);
  for (Index i = 0; i < v.size(); ++i) v(i) = F64();
  return v;
}

}  // namespace zrsw
