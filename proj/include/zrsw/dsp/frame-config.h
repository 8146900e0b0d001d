// dsp/frame-config.h

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

#ifndef ZRSW_DSP_FRAME_CONFIG_H_
#define ZRSW_DSP_FRAME_CONFIG_H_

namespace zrsw {

/// Framing, filterbank and cepstral settings for MFCC extraction.
struct FrameConfig {
  double window = 0.025;       // seconds
  double shift = 0.010;        // seconds
  double preemphasis = 0.97;
  int fft_size = 512;
  int n_mels = 23;
  int n_ceps = 13;
  double low_cutoff = 20.0;    // Hz
  double high_cutoff = 0.0;    // Hz; <= 0 means Nyquist
  double log_floor = 1e-10;

  // VTLN warp grid and knee (as a fraction of Nyquist).
  double warp_min = 0.80;
  double warp_max = 1.20;
  double warp_step = 0.02;
  double warp_knee = 0.85;

  /// 40 mels, 40 cepstra: the input layout for bottleneck training.
  static FrameConfig BnfInput();

  double HighCutoff(int sample_rate) const;
  int WindowSamples(int sample_rate) const;
  int ShiftSamples(int sample_rate) const;

  /// Throws if any invariant fails for this sample rate.
  void Validate(int sample_rate) const;
};

}  // namespace zrsw

#endif  // ZRSW_DSP_FRAME_CONFIG_H_
