// dsp/cmn.h

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

#ifndef ZRSW_DSP_CMN_H_
#define ZRSW_DSP_CMN_H_

#include <map>
#include <span>
#include <string>

#include "zrsw/dsp/feature-sequence.h"

namespace zrsw {

/// Subtracts, per speaker, the mean of every coefficient over all of that
/// speaker's frames. speakers[i] owns features[i].
void CmnPerSpeaker(std::span<FeatureSequence> features,
                   std::span<const std::string> speakers);

/// Store variant; speaker_of maps every utterance in the store to a speaker.
void CmnPerSpeaker(FeatureStore &store,
                   const std::map<std::string, std::string> &speaker_of);

}  // namespace zrsw

#endif  // ZRSW_DSP_CMN_H_
