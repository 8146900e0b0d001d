// nnet/network-io.h

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

#ifndef ZRSW_NNET_NETWORK_IO_H_
#define ZRSW_NNET_NETWORK_IO_H_

#include <filesystem>
#include <iosfwd>
#include <string>

#include "zrsw/nnet/network.h"

namespace zrsw {

/// "ZRSN" container, version 1: input normalization, tap, trunk layers and
/// the head table; parameters as little-endian f64.
void WriteNetwork(std::ostream &os, const DenseNetwork &net);
DenseNetwork ReadNetwork(std::istream &is, const std::string &source = "<stream>");
void SaveNetwork(const std::filesystem::path &path, const DenseNetwork &net);
DenseNetwork LoadNetwork(const std::filesystem::path &path);

}  // namespace zrsw

#endif  // ZRSW_NNET_NETWORK_IO_H_
