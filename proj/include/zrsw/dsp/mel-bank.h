// dsp/mel-bank.h

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

#ifndef ZRSW_DSP_MEL_BANK_H_
#define ZRSW_DSP_MEL_BANK_H_

#include <vector>

#include "zrsw/base/matrix.h"
#include "zrsw/dsp/frame-config.h"

namespace zrsw {

double MelScale(double hz);
double InverseMelScale(double mel);

/// Piecewise-linear VTLN warp of a physical frequency. Below the knee the map
/// is f -> f / alpha; above it a straight line joins the knee to
/// (nyquist, nyquist). The knee sits at warp_knee * nyquist * min(1, alpha)
/// so the map stays monotone for alpha < 1.
double VtlnWarpFrequency(double hz, double alpha, double nyquist,
                         double knee_fraction);

/// The alpha values {warp_min, warp_min + step, ..., warp_max}.
std::vector<double> WarpGrid(const FrameConfig &config);

struct WarpedMelBank {
  double alpha = 1.0;
  int sample_rate = 0;
  /// n_mels x (fft_size / 2 + 1), rows are triangular filters.
  Matrix filters;
  /// Physical center frequency of each filter.
  std::vector<double> centers_hz;
};

/// Triangular filters equally spaced on the mel axis of the warped frequency.
/// Throws if alpha lies outside [warp_min, warp_max].
WarpedMelBank WarpMelBank(const FrameConfig &config, int sample_rate,
                          double alpha);

}  // namespace zrsw

#endif  // ZRSW_DSP_MEL_BANK_H_
