// dsp/mfcc.h

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

#ifndef ZRSW_DSP_MFCC_H_
#define ZRSW_DSP_MFCC_H_

#include <span>

#include "zrsw/base/matrix.h"
#include "zrsw/dsp/feature-sequence.h"
#include "zrsw/dsp/frame-config.h"
#include "zrsw/dsp/mel-bank.h"

namespace zrsw {

/// Number of frames for n samples: 1 + floor((n - window) / shift).
Index NumFrames(Index num_samples, const FrameConfig &config, int sample_rate);

/// Per-frame power spectrum (T x fft_size/2+1) after DC removal,
/// pre-emphasis and Hamming windowing. Independent of the warp factor, so
/// VTLN grid searches compute it once per utterance.
Matrix PowerSpectrogram(std::span<const float> samples, int sample_rate,
                        const FrameConfig &config);

/// log(max(filterbank energy, log_floor)), T x n_mels.
Matrix LogMelEnergies(const Matrix &power, const WarpedMelBank &bank,
                      const FrameConfig &config);

/// Orthonormal DCT-II rows 0..n_ceps-1 (n_ceps x n_mels).
Matrix DctMatrix(int n_ceps, int n_mels);

FeatureSequence MfccFromPower(const Matrix &power, const WarpedMelBank &bank,
                              const FrameConfig &config);

/// MFCCs with the mel bank warped by alpha (1.0 is unwarped).
FeatureSequence ComputeMfcc(std::span<const float> samples, int sample_rate,
                            const FrameConfig &config, double alpha = 1.0);

}  // namespace zrsw

#endif  // ZRSW_DSP_MFCC_H_
