// corpus/manifest.h

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

#ifndef ZRSW_CORPUS_MANIFEST_H_
#define ZRSW_CORPUS_MANIFEST_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace zrsw {

enum class Gender { kFemale, kMale, kUnknown };

char GenderCode(Gender g);
Gender ParseGender(std::string_view code);

struct Utterance {
  std::string id;
  std::string speaker;
  Gender gender = Gender::kUnknown;
  std::string language;
  int sample_rate = 16000;
  double duration = 0.0;       // seconds
  std::vector<float> samples;  // may be empty when features are precomputed
  std::string audio_path;      // relative to the manifest directory, or empty
  std::string feature_path;    // likewise
  std::string split;           // e.g. train/dev/test; empty when undeclared
};

struct Segment {
  std::string utterance;
  double start = 0.0;
  double end = 0.0;
};

struct WordToken {
  std::string utterance;
  std::string orthography;
  double start = 0.0;
  double end = 0.0;

  double Duration() const { return end - start; }
};

struct PhoneToken {
  std::string utterance;
  std::string label;
  double start = 0.0;
  double end = 0.0;
};

enum class PairKind { kUtd, kGold };

struct SegmentPair {
  Segment a;
  Segment b;
  PairKind kind = PairKind::kGold;
};

/// Duplicates are kept; callers decide whether overlapping discoveries count
/// separately.
struct PairList {
  std::vector<SegmentPair> entries;
};

/// Utterances, time-aligned tokens and optional pair lists. Immutable after
/// Validate() succeeds.
class CorpusManifest {
 public:
  std::vector<Utterance> utterances;
  std::vector<WordToken> words;
  std::vector<PhoneToken> phones;
  PairList pairs;
  /// Directory that relative audio/feature paths resolve against.
  std::filesystem::path base_dir;

  /// Enforces unique ids, resolvable references, token bounds, ordered and
  /// non-overlapping phones, finite non-empty audio and speaker-disjoint
  /// splits. Rebuilds the id index. Throws Error naming the offending record.
  void Validate();

  const Utterance &Find(std::string_view id) const;
  const Utterance *TryFind(std::string_view id) const;
  std::map<std::string, std::string> SpeakerOf() const;
  std::vector<std::string> Speakers() const;

  /// Word and phone tokens of one utterance in time order.
  std::vector<WordToken> WordsOf(std::string_view utterance) const;
  std::vector<PhoneToken> PhonesOf(std::string_view utterance) const;

  /// Manifest restricted to utterances whose split is in `splits`.
  CorpusManifest Subset(const std::vector<std::string> &splits) const;
  CorpusManifest SubsetByLanguage(std::string_view language) const;

 private:
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// Tab-separated records, one per line; '#' starts a comment line.
///   UTT   id speaker gender(F|M|U) language sample_rate duration audio features split
///   WORD  utterance orthography start end
///   PHONE utterance label start end
///   PAIR  uttA startA endA uttB startB endB UTD|GOLD
/// Empty optional fields are written as '-'.
CorpusManifest ReadManifest(std::istream &is, const std::string &source = "<stream>");
CorpusManifest LoadManifest(const std::filesystem::path &path);
void WriteManifest(std::ostream &os, const CorpusManifest &manifest);
void SaveManifest(const std::filesystem::path &path, const CorpusManifest &manifest);

/// Loads samples for every utterance with an audio path and no samples yet.
void LoadAudio(CorpusManifest &manifest);

/// Number of Unicode scalar values in a UTF-8 string. Throws on bad UTF-8.
std::size_t Utf8Length(std::string_view s);

}  // namespace zrsw

#endif  // ZRSW_CORPUS_MANIFEST_H_
