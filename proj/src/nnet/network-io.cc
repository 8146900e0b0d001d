// nnet/network-io.cc

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

#include "zrsw/nnet/network-io.h"

#include <fstream>

#include "zrsw/base/binary-io.h"
#include "zrsw/base/error.h"

namespace zrsw {

namespace {

constexpr std::uint32_t kVersion = 1;

void WriteLayers(BinaryWriter &w, const std::vector<DenseLayer> &layers) {
  w.U32(static_cast<std::uint32_t>(layers.size()));
  for (const DenseLayer &l : layers) {
    w.U32(static_cast<std::uint32_t>(l.splice.size()));
    for (int o : l.splice) w.U32(static_cast<std::uint32_t>(o));
    w.String(NonlinearityName(l.nonlinearity));
    w.MatrixF64(l.weights);
    w.VectorF64(l.bias);
    w.U32(l.batch_norm ? 1 : 0);
    if (l.batch_norm) {
      w.VectorF64(l.running_mean);
      w.VectorF64(l.running_var);
    }
  }
}

std::vector<DenseLayer> ReadLayers(BinaryReader &r) {
  std::vector<DenseLayer> layers(r.U32());
  for (DenseLayer &l : layers) {
    l.splice.resize(r.U32());
    for (int &o : l.splice) o = static_cast<std::int32_t>(r.U32());
    l.nonlinearity = ParseNonlinearity(r.String());
    l.weights = r.MatrixF64();
    l.bias = r.VectorF64();
    l.batch_norm = r.U32() != 0;
    if (l.batch_norm) {
      l.running_mean = r.VectorF64();
      l.running_var = r.VectorF64();
    }
  }
  return layers;
}

}  // namespace

void WriteNetwork(std::ostream &os, const DenseNetwork &net) {
  net.Validate();
  BinaryWriter w(os);
  w.Magic("ZRSN");
  w.U32(kVersion);
  w.VectorF64(net.input_offset);
  w.VectorF64(net.input_scale);
  w.U32(static_cast<std::uint32_t>(net.tap));
  WriteLayers(w, net.layers);
  w.U32(static_cast<std::uint32_t>(net.heads.size()));
  for (const OutputHead &h : net.heads) {
    w.String(h.name);
    WriteLayers(w, h.layers);
  }
  if (!os) Fail("failed writing network");
}

DenseNetwork ReadNetwork(std::istream &is, const std::string &source) {
  BinaryReader r(is, source);
  r.ExpectMagic("ZRSN");
  if (std::uint32_t v = r.U32(); v != kVersion)
    Fail("{}: unsupported network version {}", source, v);
  DenseNetwork net;
  net.input_offset = r.VectorF64();
  net.input_scale = r.VectorF64();
  net.tap = static_cast<std::int32_t>(r.U32());
  net.layers = ReadLayers(r);
  net.heads.resize(r.U32());
  for (OutputHead &h : net.heads) {
    h.name = r.String();
    h.layers = ReadLayers(r);
  }
  try {
    net.Validate();
  } catch (const Error &e) {
    Fail("{}: {}", source, e.what());
  }
  return net;
}

void SaveNetwork(const std::filesystem::path &path, const DenseNetwork &net) {
  std::ofstream os(path, std::ios::binary);
  if (!os) Fail("cannot write network '{}'", path.string());
  WriteNetwork(os, net);
}

DenseNetwork LoadNetwork(const std::filesystem::path &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) Fail("cannot open network '{}'", path.string());
  return ReadNetwork(is, path.string());
}

}  // namespace zrsw
