// dsp/mfcc.cc

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

#include "zrsw/dsp/mfcc.h"

#include <cmath>
#include <mutex>
#include <numbers>
#include <vector>

#include <fftw3.h>

#include "zrsw/base/error.h"

namespace zrsw {

namespace {

// FFTW's planner is not re-entrant; execution of a plan is.
std::mutex &PlannerMutex() {
  static std::mutex m;
  return m;
}

class RealFft {
 public:
  explicit RealFft(int n) : n_(n) {
    in_ = fftw_alloc_real(n);
    out_ = fftw_alloc_complex(n / 2 + 1);
    std::lock_guard<std::mutex> lock(PlannerMutex());
    plan_ = fftw_plan_dft_r2c_1d(n, in_, out_, FFTW_ESTIMATE);
  }
  ~RealFft() {
    {
      std::lock_guard<std::mutex> lock(PlannerMutex());
      fftw_destroy_plan(plan_);
    }
    fftw_free(in_);
    fftw_free(out_);
  }
  RealFft(const RealFft &) = delete;
  RealFft &operator=(const RealFft &) = delete;

  double *input() { return in_; }

  // Writes |X_k|^2 for k = 0..n/2 into row.
  template <typename Row>
  void PowerInto(Row &&row) {
    fftw_execute(plan_);
    for (int k = 0; k <= n_ / 2; ++k)
      row(k) = out_[k][0] * out_[k][0] + out_[k][1] * out_[k][1];
  }

 private:
  int n_;
  double *in_;
  fftw_complex *out_;
  fftw_plan plan_;
};

}  // namespace

Index NumFrames(Index num_samples, const FrameConfig &config, int sample_rate) {
  Index window = config.WindowSamples(sample_rate);
  Index shift = config.ShiftSamples(sample_rate);
  if (num_samples < window) return 0;
  return 1 + (num_samples - window) / shift;
}

Matrix PowerSpectrogram(std::span<const float> samples, int sample_rate,
                        const FrameConfig &config) {
  config.Validate(sample_rate);
  const int window = config.WindowSamples(sample_rate);
  const int shift = config.ShiftSamples(sample_rate);
  const Index num_frames = NumFrames(samples.size(), config, sample_rate);
  if (num_frames < 1)
    Fail("input of {} samples is shorter than one {}-sample window",
         samples.size(), window);
  for (float s : samples)
    if (!std::isfinite(s)) Fail("non-finite audio sample");

  std::vector<double> hamming(window);
  for (int i = 0; i < window; ++i)
    hamming[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / (window - 1));

  RealFft fft(config.fft_size);
  Matrix power(num_frames, config.fft_size / 2 + 1);
  std::vector<double> frame(window);
  for (Index t = 0; t < num_frames; ++t) {
    const float *src = samples.data() + t * shift;
    double mean = 0.0;
    for (int i = 0; i < window; ++i) mean += src[i];
    mean /= window;
    for (int i = 0; i < window; ++i) frame[i] = src[i] - mean;
    for (int i = window - 1; i > 0; --i) frame[i] -= config.preemphasis * frame[i - 1];
    frame[0] -= config.preemphasis * frame[0];

    double *in = fft.input();
    for (int i = 0; i < window; ++i) in[i] = frame[i] * hamming[i];
    for (int i = window; i < config.fft_size; ++i) in[i] = 0.0;
    fft.PowerInto([&](int k) -> double & { return power(t, k); });
  }
  return power;
}

Matrix LogMelEnergies(const Matrix &power, const WarpedMelBank &bank,
                      const FrameConfig &config) {
  if (power.cols() != bank.filters.cols())
    Fail("power spectrum has {} bins, mel bank expects {}", power.cols(),
         bank.filters.cols());
  Matrix energies = power * bank.filters.transpose();
  return energies.array().max(config.log_floor).log().matrix();
}

Matrix DctMatrix(int n_ceps, int n_mels) {
  Matrix dct(n_ceps, n_mels);
  for (int k = 0; k < n_ceps; ++k) {
    double scale = std::sqrt((k == 0 ? 1.0 : 2.0) / n_mels);
    for (int m = 0; m < n_mels; ++m)
      dct(k, m) = scale * std::cos(std::numbers::pi * k * (m + 0.5) / n_mels);
  }
  return dct;
}

FeatureSequence MfccFromPower(const Matrix &power, const WarpedMelBank &bank,
                              const FrameConfig &config) {
  FeatureSequence out;
  out.data = LogMelEnergies(power, bank, config) *
             DctMatrix(config.n_ceps, config.n_mels).transpose();
  out.frame_shift = config.shift;
  out.first_frame_center = 0.5 * config.window;
  out.provenance = bank.alpha == 1.0 ? Provenance::kMfcc : Provenance::kMfccVtln;
  return out;
}

FeatureSequence ComputeMfcc(std::span<const float> samples, int sample_rate,
                            const FrameConfig &config, double alpha) {
  WarpedMelBank bank = WarpMelBank(config, sample_rate, alpha);
  return MfccFromPower(PowerSpectrogram(samples, sample_rate, config), bank,
                       config);
}

}  // namespace zrsw
