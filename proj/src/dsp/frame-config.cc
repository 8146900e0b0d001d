// dsp/frame-config.cc

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

#include "zrsw/dsp/frame-config.h"

#include <cmath>

#include "zrsw/base/error.h"

namespace zrsw {

FrameConfig FrameConfig::BnfInput() {
  FrameConfig c;
  c.n_mels = 40;
  c.n_ceps = 40;
  return c;
}

double FrameConfig::HighCutoff(int sample_rate) const {
  double nyquist = 0.5 * sample_rate;
  return high_cutoff > 0.0 ? high_cutoff : nyquist;
}

int FrameConfig::WindowSamples(int sample_rate) const {
  return static_cast<int>(std::lround(window * sample_rate));
}

int FrameConfig::ShiftSamples(int sample_rate) const {
  return static_cast<int>(std::lround(shift * sample_rate));
}

void FrameConfig::Validate(int sample_rate) const {
  if (sample_rate <= 0) Fail("sample rate must be positive, got {}", sample_rate);
  if (!(window > 0.0) || !(shift > 0.0)) Fail("window and shift must be positive");
  if (shift > window) Fail("frame shift {} exceeds window {}", shift, window);
  if (preemphasis < 0.0 || preemphasis >= 1.0)
    Fail("preemphasis {} outside [0,1)", preemphasis);
  if (fft_size <= 0 || (fft_size & (fft_size - 1)) != 0)
    Fail("fft_size {} is not a power of two", fft_size);
  if (WindowSamples(sample_rate) > fft_size)
    Fail("window of {} samples exceeds fft_size {}", WindowSamples(sample_rate),
         fft_size);
  if (n_mels < 1) Fail("n_mels must be positive");
  if (n_ceps < 1 || n_ceps > n_mels)
    Fail("n_ceps {} must lie in [1, n_mels={}]", n_ceps, n_mels);
  double nyquist = 0.5 * sample_rate;
  if (HighCutoff(sample_rate) > nyquist + 1e-9)
    Fail("high cutoff {} Hz exceeds Nyquist {} Hz", HighCutoff(sample_rate), nyquist);
  if (low_cutoff < 0.0 || low_cutoff >= HighCutoff(sample_rate))
    Fail("low cutoff {} Hz must be below high cutoff", low_cutoff);
  if (!(log_floor > 0.0)) Fail("log floor must be positive");
  if (!(warp_min > 0.0) || warp_min > warp_max || !(warp_step > 0.0))
    Fail("bad warp grid [{}, {}] step {}", warp_min, warp_max, warp_step);
  if (!(warp_knee > 0.0) || warp_knee >= 1.0)
    Fail("warp knee fraction {} outside (0,1)", warp_knee);
}

}  // namespace zrsw
