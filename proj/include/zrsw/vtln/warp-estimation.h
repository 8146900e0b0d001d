// vtln/warp-estimation.h

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

#ifndef ZRSW_VTLN_WARP_ESTIMATION_H_
#define ZRSW_VTLN_WARP_ESTIMATION_H_

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "zrsw/corpus/manifest.h"
#include "zrsw/dsp/extract.h"
#include "zrsw/vtln/diag-gmm.h"

namespace zrsw {

/// Features the VTLN acoustic model sees: MFCC + per-speaker CMN, no deltas.
MfccPipelineOptions DefaultVtlnFeatures();

/// Picks, per speaker, the grid value maximizing the GMM log-likelihood of
/// that speaker's features re-extracted with the warped mel bank. Ties go to
/// the value closest to 1.0, then to the smaller value. Power spectra are
/// computed once per utterance.
WarpAssignment EstimateWarps(const CorpusManifest &manifest, const DiagonalGmm &gmm,
                             const std::vector<double> &grid,
                             const MfccPipelineOptions &features);

/// Per-speaker log-likelihood for every grid value (speaker -> values in grid
/// order). Exposed for diagnostics and tests.
std::map<std::string, std::vector<double>> WarpLogLikelihoods(
    const CorpusManifest &manifest, const DiagonalGmm &gmm,
    const std::vector<double> &grid, const MfccPipelineOptions &features);

/// Two columns per line: speaker, alpha.
void WriteWarps(std::ostream &os, const WarpAssignment &warps);
WarpAssignment ReadWarps(std::istream &is, const std::string &source = "<stream>");

}  // namespace zrsw

#endif  // ZRSW_VTLN_WARP_ESTIMATION_H_
