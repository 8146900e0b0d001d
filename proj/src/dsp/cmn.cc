// dsp/cmn.cc

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

#include "zrsw/dsp/cmn.h"

#include <vector>

#include "zrsw/base/error.h"

namespace zrsw {

void CmnPerSpeaker(std::span<FeatureSequence> features,
                   std::span<const std::string> speakers) {
  if (features.size() != speakers.size())
    Fail("CMN: {} feature sequences but {} speaker labels", features.size(),
         speakers.size());
  struct Accum {
    Vector sum;
    Index frames = 0;
  };
  std::map<std::string, Accum> stats;
  for (std::size_t i = 0; i < features.size(); ++i) {
    const Matrix &m = features[i].data;
    if (m.rows() == 0)
      Fail("CMN: speaker '{}' has an empty feature sequence", speakers[i]);
    Accum &acc = stats[speakers[i]];
    if (acc.frames == 0) acc.sum = Vector::Zero(m.cols());
    if (acc.sum.size() != m.cols())
      Fail("CMN: dimension mismatch within speaker '{}'", speakers[i]);
    acc.sum += m.colwise().sum().transpose();
    acc.frames += m.rows();
  }
  for (std::size_t i = 0; i < features.size(); ++i) {
    const Accum &acc = stats.at(speakers[i]);
    Vector mean = acc.sum / static_cast<double>(acc.frames);
    features[i].data.rowwise() -= mean.transpose();
  }
}

void CmnPerSpeaker(FeatureStore &store,
                   const std::map<std::string, std::string> &speaker_of) {
  std::vector<FeatureSequence> seqs;
  std::vector<std::string> speakers, ids;
  for (auto &[utt, feats] : store) {
    auto it = speaker_of.find(utt);
    if (it == speaker_of.end()) Fail("CMN: utterance '{}' has no speaker", utt);
    ids.push_back(utt);
    speakers.push_back(it->second);
    seqs.push_back(std::move(feats));
  }
  CmnPerSpeaker(std::span<FeatureSequence>(seqs), speakers);
  for (std::size_t i = 0; i < ids.size(); ++i) store[ids[i]] = std::move(seqs[i]);
}

}  // namespace zrsw
