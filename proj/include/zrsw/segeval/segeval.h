// segeval/segeval.h

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

#ifndef ZRSW_SEGEVAL_SEGEVAL_H_
#define ZRSW_SEGEVAL_SEGEVAL_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zrsw/base/matrix.h"
#include "zrsw/corpus/manifest.h"

namespace zrsw {

struct HypToken {
  std::string utterance;
  double start = 0.0;
  double end = 0.0;
  std::string cluster;
};

/// Hypothesized tokens, grouped by utterance and ordered by start time.
struct Segmentation {
  std::vector<HypToken> tokens;

  /// Sorts tokens by (utterance, start) and checks they do not overlap and
  /// lie within their utterances.
  void Normalize(const CorpusManifest &manifest);
};

/// TSV lines "utterance start end cluster"; '#' starts a comment.
Segmentation ReadSegmentation(std::istream &is, const std::string &source = "<stream>");
Segmentation LoadSegmentation(const std::filesystem::path &path);
void WriteSegmentation(std::ostream &os, const Segmentation &seg);

/// Equal-length tokens of `token_duration` seconds covering each utterance
/// (the last one absorbs the remainder), with seeded random cluster ids in
/// [0, num_clusters). Meant for smoke tests only.
Segmentation NaiveSegmentation(const CorpusManifest &manifest, double token_duration,
                               int num_clusters, std::uint64_t seed);

/// n frames picked at round(i (T - 1) / (n - 1)) and concatenated; for n = 1
/// the middle frame round((T - 1) / 2). Throws on an empty segment or n < 1.
Vector EmbedDownsample(const Matrix &segment, int n);

enum class MappingMode { kManyToOne, kOneToOneGreedy };

const char *MappingModeName(MappingMode m);

/// The true word each hypothesized token overlaps most (ties to the
/// earlier-starting word); empty when it overlaps none.
std::vector<std::string> OverlappedWords(const Segmentation &seg, const CorpusManifest &truth);

/// Cluster -> word type. Many-to-one takes each cluster's most frequent
/// overlapped word (ties to the lexicographically smaller word). One-to-one
/// greedy walks all (cluster, word) counts from largest to smallest, ties by
/// word then cluster id, and assigns a pair when neither side is taken.
/// Clusters left without a word are absent from the map.
std::map<std::string, std::string> MapClusters(const Segmentation &seg,
                                               const CorpusManifest &truth, MappingMode mode);

/// Percent of tokens whose overlapped word equals their cluster's word.
double ClusterPurity(const Segmentation &seg, const CorpusManifest &truth,
                     const std::map<std::string, std::string> &mapping);

struct WerCounts {
  std::size_t substitutions = 0;
  std::size_t insertions = 0;
  std::size_t deletions = 0;
  std::size_t reference_words = 0;

  double Wer() const;  // percent, corpus-wide
};

/// Levenshtein alignment with unit costs.
WerCounts AlignWords(const std::vector<std::string> &reference,
                     const std::vector<std::string> &hypothesis);

/// Tokens take their cluster's word (unmapped clusters never match) and are
/// aligned per utterance against the true word sequence; counts summed over
/// the corpus. Throws when the truth has no words.
WerCounts UnsupervisedWer(const Segmentation &seg, const CorpusManifest &truth,
                          const std::map<std::string, std::string> &mapping);

struct FScore {
  double precision = 0.0;
  double recall = 0.0;
  double f = 0.0;
  std::size_t hits = 0;
  std::size_t num_hyp = 0;
  std::size_t num_true = 0;
};

/// Hypothesized boundaries are token edges other than utterance edges. A
/// true word boundary b accepts a hypothesis within [b - l, b + r], l and r
/// being the durations of the phones ending and starting at b (a missing
/// side borrows the other). Each true boundary is credited once, closest
/// pairs first.
FScore BoundaryFScore(const Segmentation &seg, const CorpusManifest &truth);

/// A true token is hit when one hypothesized token has both edges inside
/// the tolerance windows of its edges; matching is one-to-one.
FScore TokenFScore(const Segmentation &seg, const CorpusManifest &truth);

enum class Attribute { kSpeaker, kGender };

/// Token-weighted share of each cluster's majority attribute value, percent.
double AttributePurity(const Segmentation &seg, const CorpusManifest &truth, Attribute attribute);

struct SegEvalReport {
  double wer_one_to_one = 0.0;
  double wer_many_to_one = 0.0;
  double token_f = 0.0;
  double boundary_f = 0.0;
  double cluster_purity = 0.0;
  double gender_purity = 0.0;
  double speaker_purity = 0.0;
  std::size_t num_tokens = 0;
  std::size_t num_clusters = 0;
};

SegEvalReport EvaluateSegmentation(const Segmentation &seg, const CorpusManifest &truth);
nlohmann::json ToJson(const SegEvalReport &report);

}  // namespace zrsw

#endif  // ZRSW_SEGEVAL_SEGEVAL_H_
