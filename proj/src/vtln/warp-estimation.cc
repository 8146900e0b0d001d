// vtln/warp-estimation.cc

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

#include "zrsw/vtln/warp-estimation.h"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "zrsw/base/error.h"
#include "zrsw/base/parallel.h"
#include "zrsw/dsp/cmn.h"
#include "zrsw/dsp/deltas.h"
#include "zrsw/dsp/mfcc.h"

namespace zrsw {

MfccPipelineOptions DefaultVtlnFeatures() {
  MfccPipelineOptions o;
  o.deltas = false;
  return o;
}

std::map<std::string, std::vector<double>> WarpLogLikelihoods(
    const CorpusManifest &manifest, const DiagonalGmm &gmm,
    const std::vector<double> &grid, const MfccPipelineOptions &features) {
  if (grid.empty()) Fail("empty warp grid");
  std::map<std::string, std::vector<const Utterance *>> by_speaker;
  for (const Utterance &u : manifest.utterances) by_speaker[u.speaker].push_back(&u);

  std::vector<std::string> speakers;
  for (const auto &[s, utts] : by_speaker) speakers.push_back(s);
  std::vector<std::vector<double>> scores(speakers.size());

  ParallelFor(speakers.size(), [&](std::size_t si) {
    const auto &utts = by_speaker.at(speakers[si]);
    std::vector<Matrix> power;
    Index frames = 0;
    for (const Utterance *u : utts) {
      if (u->samples.empty()) Fail("utterance '{}' has no audio loaded", u->id);
      power.push_back(PowerSpectrogram(u->samples, u->sample_rate, features.frame));
      frames += power.back().rows();
    }
    if (frames == 0) Fail("speaker '{}' has zero frames", speakers[si]);
    const int sample_rate = utts.front()->sample_rate;
    for (double alpha : grid) {
      WarpedMelBank bank = WarpMelBank(features.frame, sample_rate, alpha);
      std::vector<FeatureSequence> feats;
      for (const Matrix &p : power) feats.push_back(MfccFromPower(p, bank, features.frame));
      if (features.cmn) {
        std::vector<std::string> labels(feats.size(), speakers[si]);
        CmnPerSpeaker(std::span<FeatureSequence>(feats), labels);
      }
      double total = 0.0;
      for (FeatureSequence &f : feats) {
        if (features.deltas) f = AddDeltas(f, features.delta_context);
        total += GmmLogLikelihood(gmm, f.data);
      }
      scores[si].push_back(total);
    }
  });
  std::map<std::string, std::vector<double>> out;
  for (std::size_t i = 0; i < speakers.size(); ++i) out[speakers[i]] = scores[i];
  return out;
}

WarpAssignment EstimateWarps(const CorpusManifest &manifest, const DiagonalGmm &gmm,
                             const std::vector<double> &grid,
                             const MfccPipelineOptions &features) {
  WarpAssignment warps;
  for (const auto &[speaker, scores] : WarpLogLikelihoods(manifest, gmm, grid, features)) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
      if (scores[i] > scores[best]) {
        best = i;
      } else if (scores[i] == scores[best]) {
        double di = std::abs(grid[i] - 1.0), db = std::abs(grid[best] - 1.0);
        if (di < db || (di == db && grid[i] < grid[best])) best = i;
      }
    }
    warps[speaker] = grid[best];
  }
  return warps;
}

void WriteWarps(std::ostream &os, const WarpAssignment &warps) {
  for (const auto &[speaker, alpha] : warps) os << fmt::format("{}\t{:.4f}\n", speaker, alpha);
}

WarpAssignment ReadWarps(std::istream &is, const std::string &source) {
  WarpAssignment warps;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string speaker;
    double alpha = 0.0;
    if (!(ss >> speaker >> alpha) || !(alpha > 0.0))
      Fail("{}:{}: expected '<speaker> <alpha>'", source, line_no);
    warps[speaker] = alpha;
  }
  return warps;
}

}  // namespace zrsw
