// corpus/synth.h

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

#ifndef ZRSW_CORPUS_SYNTH_H_
#define ZRSW_CORPUS_SYNTH_H_

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "zrsw/corpus/manifest.h"

namespace zrsw {

/// Spectral prototype of one phone: three formant targets rendered by a
/// cascade formant synthesizer.
struct PhonePrototype {
  std::string label;  // one character; doubles as the orthographic letter
  std::array<double, 3> formants{500.0, 1500.0, 2500.0};     // Hz
  std::array<double, 3> bandwidths{80.0, 110.0, 160.0};      // Hz
  double voicing = 1.0;  // 1 = pulse-train excitation, 0 = noise excitation
};

struct SynthLanguage {
  std::string id;
  std::vector<std::string> inventory;             // phone labels
  std::vector<std::vector<std::string>> lexicon;  // phone strings
};

struct SynthSpeaker {
  std::string id;
  Gender gender = Gender::kUnknown;
  std::string language;
  std::string split;
  double warp = 1.0;          // formant scale factor of the vocal tract
  double f0 = 120.0;          // Hz
  /// Channel FIR taps after the leading 1: y[n] = x[n] + c0 x[n-1] + c1 x[n-2].
  std::array<double, 2> channel{0.0, 0.0};
  double noise_level = 0.03;  // noise std relative to signal RMS
  int num_utterances = 10;
  /// Speaker-specific formant multipliers per phone label (accent); phones
  /// without an entry are unchanged.
  std::map<std::string, std::array<double, 3>> accent;
};

struct SynthSpec {
  int sample_rate = 16000;
  std::vector<PhonePrototype> phones;
  std::vector<SynthLanguage> languages;
  std::vector<SynthSpeaker> speakers;
  int words_per_utterance = 5;
  double phone_min_duration = 0.075;  // seconds
  double phone_max_duration = 0.125;
  double formant_jitter = 0.03;  // relative std of per-token formant targets
  double silence = 0.1;          // leading and trailing silence, seconds
  double transition = 0.015;     // half-width of formant glides, seconds

  /// Throws on an empty lexicon, fewer than two speakers, unknown labels.
  void Validate() const;
};

struct SynthCorpus {
  CorpusManifest manifest;
  /// Ground-truth formant scale per speaker; the compensating VTLN factor
  /// equals this value.
  std::map<std::string, double> true_warps;
};

/// Renders audio with word and phone alignments. Same spec and seed give
/// bit-identical output.
SynthCorpus SynthesizeCorpus(const SynthSpec &spec, std::uint64_t seed);

struct SynthLanguageOptions {
  std::string id;
  int inventory_size = 12;
  int lexicon_size = 20;
  int min_word_phones = 5;
  int max_word_phones = 8;
  int utterances_per_speaker = 10;
  std::vector<double> train_warps;  // one speaker per entry
  std::vector<double> eval_warps;
};

struct SynthWorldOptions {
  int pool_size = 20;
  /// Phone prototypes are picked by farthest-point selection in a weighted
  /// mel-formant space from this many random candidates per phone.
  int candidates_per_phone = 50;
  double unvoiced_fraction = 0.0;
  double min_noise_level = 0.03;
  double max_noise_level = 0.10;
  /// Log-scale std of per-speaker, per-phone formant offsets.
  double accent_spread = 0.0;
  std::vector<SynthLanguageOptions> languages;
};

/// Draws a shared phone pool, per-language inventories and lexicons, and
/// speakers (alternating F/M) with random pitch, channel and noise.
SynthSpec RandomSynthSpec(const SynthWorldOptions &options, std::uint64_t seed);

}  // namespace zrsw

#endif  // ZRSW_CORPUS_SYNTH_H_
