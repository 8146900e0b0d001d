// dsp/extract.h

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

#ifndef ZRSW_DSP_EXTRACT_H_
#define ZRSW_DSP_EXTRACT_H_

#include <map>
#include <string>

#include "zrsw/corpus/manifest.h"
#include "zrsw/dsp/feature-sequence.h"
#include "zrsw/dsp/frame-config.h"

namespace zrsw {

struct MfccPipelineOptions {
  FrameConfig frame;
  bool cmn = true;
  bool deltas = true;
  int delta_context = 2;
};

/// Speaker -> warp factor.
using WarpAssignment = std::map<std::string, double>;

/// MFCC (warped per speaker when `warps` is given; missing speakers use 1.0),
/// then per-speaker CMN, then deltas. Utterances must carry samples.
FeatureStore ExtractMfccStore(const CorpusManifest &manifest,
                              const MfccPipelineOptions &options,
                              const WarpAssignment *warps = nullptr);

/// All frames of `store` stacked in key order.
Matrix StackFrames(const FeatureStore &store);

}  // namespace zrsw

#endif  // ZRSW_DSP_EXTRACT_H_
