// corpus/wav-io.cc

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

#include "zrsw/corpus/wav-io.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "zrsw/base/binary-io.h"
#include "zrsw/base/error.h"

namespace zrsw {

WavData ReadWav(const std::filesystem::path &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) Fail("cannot open wav file '{}'", path.string());
  BinaryReader r(is, path.string());
  r.ExpectMagic("RIFF");
  r.U32();
  r.ExpectMagic("WAVE");
  WavData wav;
  int channels = 0, bits = 0;
  while (true) {
    char id[4];
    is.read(id, 4);
    if (is.gcount() != 4) Fail("{}: no data chunk", path.string());
    std::uint32_t size = r.U32();
    if (std::memcmp(id, "fmt ", 4) == 0) {
      std::uint16_t format = 0, ch = 0, block = 0, bps = 0;
      std::uint32_t rate = 0, byte_rate = 0;
      is.read(reinterpret_cast<char *>(&format), 2);
      is.read(reinterpret_cast<char *>(&ch), 2);
      is.read(reinterpret_cast<char *>(&rate), 4);
      is.read(reinterpret_cast<char *>(&byte_rate), 4);
      is.read(reinterpret_cast<char *>(&block), 2);
      is.read(reinterpret_cast<char *>(&bps), 2);
      if (!is) Fail("{}: truncated fmt chunk", path.string());
      if (format != 1) Fail("{}: only PCM wav is supported", path.string());
      is.ignore(size - 16);
      channels = ch;
      bits = bps;
      wav.sample_rate = static_cast<int>(rate);
    } else if (std::memcmp(id, "data", 4) == 0) {
      if (channels != 1 || bits != 16)
        Fail("{}: expected mono 16-bit PCM, got {} channels {} bits", path.string(),
             channels, bits);
      std::vector<std::int16_t> raw(size / 2);
      is.read(reinterpret_cast<char *>(raw.data()),
              static_cast<std::streamsize>(raw.size() * 2));
      if (static_cast<std::size_t>(is.gcount()) != raw.size() * 2)
        Fail("{}: truncated data chunk", path.string());
      wav.samples.resize(raw.size());
      std::transform(raw.begin(), raw.end(), wav.samples.begin(),
                     [](std::int16_t s) { return static_cast<float>(s) / 32768.0f; });
      return wav;
    } else {
      is.ignore(size + (size & 1));
    }
  }
}

void WriteWav(const std::filesystem::path &path, std::span<const float> samples,
              int sample_rate) {
  std::ofstream os(path, std::ios::binary);
  if (!os) Fail("cannot open '{}' for writing", path.string());
  BinaryWriter w(os);
  auto data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
  w.Magic("RIFF");
  w.U32(36 + data_bytes);
  w.Magic("WAVE");
  w.Magic("fmt ");
  w.U32(16);
  std::uint16_t header[2] = {1, 1};  // PCM, mono
  os.write(reinterpret_cast<const char *>(header), 4);
  w.U32(static_cast<std::uint32_t>(sample_rate));
  w.U32(static_cast<std::uint32_t>(sample_rate * 2));
  std::uint16_t block[2] = {2, 16};
  os.write(reinterpret_cast<const char *>(block), 4);
  w.Magic("data");
  w.U32(data_bytes);
  for (float s : samples) {
    // Same scale as the reader; +1.0 saturates at 32767.
    long q = std::lround(static_cast<double>(s) * 32768.0);
    auto v = static_cast<std::int16_t>(std::clamp(q, -32768L, 32767L));
    os.write(reinterpret_cast<const char *>(&v), 2);
  }
  if (!os) Fail("write to '{}' failed", path.string());
}

}  // namespace zrsw
