// base/binary-io.h

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

#ifndef ZRSW_BASE_BINARY_IO_H_
#define ZRSW_BASE_BINARY_IO_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "zrsw/base/matrix.h"

namespace zrsw {

// Little-endian primitives shared by the ZRS* binary containers
// (features ZRSF, GMMs ZRSG, networks ZRSN).
class BinaryWriter {
 public:
  explicit BinaryWriter(std::ostream &os) : os_(os) {}

  void Magic(std::string_view magic);
  void U32(std::uint32_t v);
  void F32(float v);
  void F64(double v);
  void String(std::string_view s);
  /// Rows, cols as u32 then row-major f64.
  void MatrixF64(const Matrix &m);
  void VectorF64(const Vector &v);

 private:
  std::ostream &os_;
};

class BinaryReader {
 public:
  BinaryReader(std::istream &is, std::string source)
      : is_(is), source_(std::move(source)) {}

  /// Throws unless the next four bytes equal `magic`.
  void ExpectMagic(std::string_view magic);
  std::uint32_t U32();
  float F32();
  double F64();
  std::string String();
  Matrix MatrixF64();
  Vector VectorF64();

 private:
  void Read(char *dst, std::size_t n);

  std::istream &is_;
  std::string source_;
};

}  // namespace zrsw

#endif  // ZRSW_BASE_BINARY_IO_H_
