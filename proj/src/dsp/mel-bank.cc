// dsp/mel-bank.cc

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

#include "zrsw/dsp/mel-bank.h"

#include <algorithm>
#include <cmath>

#include "zrsw/base/error.h"

namespace zrsw {

double MelScale(double hz) { return 1127.0 * std::log(1.0 + hz / 700.0); }

double InverseMelScale(double mel) {
  return 700.0 * (std::exp(mel / 1127.0) - 1.0);
}

namespace {

double KneeFrequency(double alpha, double nyquist, double knee_fraction) {
  return knee_fraction * nyquist * std::min(1.0, alpha);
}

// Inverse of VtlnWarpFrequency: warped frequency back to physical.
double UnwarpFrequency(double warped, double alpha, double nyquist,
                       double knee_fraction) {
  double knee = KneeFrequency(alpha, nyquist, knee_fraction);
  double knee_out = knee / alpha;
  if (warped <= knee_out) return warped * alpha;
  return knee + (warped - knee_out) * (nyquist - knee) / (nyquist - knee_out);
}

}  // namespace

double VtlnWarpFrequency(double hz, double alpha, double nyquist,
                         double knee_fraction) {
  double knee = KneeFrequency(alpha, nyquist, knee_fraction);
  if (hz <= knee) return hz / alpha;
  double knee_out = knee / alpha;
  return knee_out + (nyquist - knee_out) * (hz - knee) / (nyquist - knee);
}

std::vector<double> WarpGrid(const FrameConfig &config) {
  std::vector<double> grid;
  int n = static_cast<int>(
      std::floor((config.warp_max - config.warp_min) / config.warp_step + 1e-6));
  for (int i = 0; i <= n; ++i) {
    // Round to 1e-9 so grid values print and compare cleanly.
    double a = config.warp_min + i * config.warp_step;
    grid.push_back(std::round(a * 1e9) / 1e9);
  }
  return grid;
}

WarpedMelBank WarpMelBank(const FrameConfig &config, int sample_rate,
                          double alpha) {
  config.Validate(sample_rate);
  if (alpha < config.warp_min - 1e-9 || alpha > config.warp_max + 1e-9)
    Fail("warp factor {} outside grid range [{}, {}]", alpha, config.warp_min,
         config.warp_max);

  const double nyquist = 0.5 * sample_rate;
  const int num_bins = config.fft_size / 2 + 1;
  const double mel_low = MelScale(config.low_cutoff);
  const double mel_high = MelScale(config.HighCutoff(sample_rate));
  const double mel_delta = (mel_high - mel_low) / (config.n_mels + 1);

  WarpedMelBank bank;
  bank.alpha = alpha;
  bank.sample_rate = sample_rate;
  bank.filters = Matrix::Zero(config.n_mels, num_bins);

  std::vector<double> bin_mel(num_bins);
  for (int k = 0; k < num_bins; ++k) {
    double hz = static_cast<double>(k) * sample_rate / config.fft_size;
    bin_mel[k] = MelScale(VtlnWarpFrequency(hz, alpha, nyquist, config.warp_knee));
  }
  for (int m = 0; m < config.n_mels; ++m) {
    double left = mel_low + m * mel_delta;
    double center = left + mel_delta;
    double right = center + mel_delta;
    for (int k = 0; k < num_bins; ++k) {
      double mel = bin_mel[k];
      if (mel > left && mel < right) {
        bank.filters(m, k) =
            mel <= center ? (mel - left) / (center - left)
                          : (right - mel) / (right - center);
      }
    }
    bank.centers_hz.push_back(UnwarpFrequency(InverseMelScale(center), alpha,
                                              nyquist, config.warp_knee));
  }
  return bank;
}

}  // namespace zrsw
