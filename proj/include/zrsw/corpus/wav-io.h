// corpus/wav-io.h

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

#ifndef ZRSW_CORPUS_WAV_IO_H_
#define ZRSW_CORPUS_WAV_IO_H_

#include <filesystem>
#include <span>
#include <vector>

namespace zrsw {

struct WavData {
  int sample_rate = 0;
  std::vector<float> samples;  // mono, in [-1, 1]
};

/// Mono 16-bit PCM RIFF/WAVE only.
WavData ReadWav(const std::filesystem::path &path);
void WriteWav(const std::filesystem::path &path, std::span<const float> samples,
              int sample_rate);

}  // namespace zrsw

#endif  // ZRSW_CORPUS_WAV_IO_H_
