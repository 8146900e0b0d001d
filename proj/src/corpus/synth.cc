// corpus/synth.cc

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

#include "zrsw/corpus/synth.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>

#include <fmt/format.h>

#include "zrsw/base/error.h"
#include "zrsw/base/matrix.h"

namespace zrsw {

namespace {

constexpr char kPhoneLetters[] =
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ";

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t StreamSeed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return SplitMix64(SplitMix64(SplitMix64(seed) ^ a) ^ (b * 0x2545f4914f6cdd1dull));
}

// Two-pole resonator with unity gain at DC.
class Resonator {
 public:
  void Set(double freq, double bandwidth, double sample_rate) {
    double r = std::exp(-std::numbers::pi * bandwidth / sample_rate);
    c_ = -r * r;
    b_ = 2.0 * r * std::cos(2.0 * std::numbers::pi * freq / sample_rate);
    a_ = 1.0 - b_ - c_;
  }
  double Step(double x) {
    double y = a_ * x + b_ * y1_ + c_ * y2_;
    y2_ = y1_;
    y1_ = y;
    return y;
  }

 private:
  double a_ = 1.0, b_ = 0.0, c_ = 0.0, y1_ = 0.0, y2_ = 0.0;
};

struct PhoneSegment {
  const PhonePrototype *proto = nullptr;  // nullptr = silence
  std::array<double, 3> formants{};
  std::array<double, 3> bandwidths{};
  Index begin = 0;  // samples
  Index end = 0;
};

constexpr double kFourthFormant = 3700.0;
constexpr double kFourthBandwidth = 250.0;
constexpr int kControlBlock = 16;  // samples between coefficient updates

std::vector<float> Render(const SynthSpec &spec, const SynthSpeaker &speaker,
                          const std::vector<PhoneSegment> &segments,
                          std::mt19937_64 &rng) {
  const double sr = spec.sample_rate;
  const Index n = segments.back().end;
  std::vector<double> out(n, 0.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  Resonator glottal, f4;
  std::array<Resonator, 3> formant;
  glottal.Set(0.0, 200.0, sr);
  f4.Set(kFourthFormant * speaker.warp, kFourthBandwidth * speaker.warp, sr);

  const double transition = spec.transition * sr;
  const double vibrato_phase = 2.0 * std::numbers::pi * unit(rng);
  const double ramp = 0.01 * sr;
  double phase = 0.0, prev_radiated = 0.0;
  std::size_t seg = 0;
  double voicing = 0.0, amplitude = 0.0;

  for (Index i = 0; i < n; ++i) {
    while (segments[seg].end <= i) ++seg;
    if (i % kControlBlock == 0) {
      // Formant glide across the nearest boundary, linear over +-transition.
      const PhoneSegment &cur = segments[seg];
      auto targets_of = [&](std::size_t k) -> const PhoneSegment & {
        // Silence borrows the targets of the adjacent phone.
        if (segments[k].proto != nullptr) return segments[k];
        if (k + 1 < segments.size() && segments[k + 1].proto) return segments[k + 1];
        return segments[k - 1];
      };
      const PhoneSegment &here = targets_of(seg);
      std::array<double, 3> f = here.formants, bw = here.bandwidths;
      double to_end = cur.end - i, from_start = i - cur.begin;
      const PhoneSegment *other = nullptr;
      double w = 0.0;
      if (to_end < transition && seg + 1 < segments.size()) {
        other = &targets_of(seg + 1);
        w = 0.5 * (1.0 - to_end / transition);
      } else if (from_start < transition && seg > 0) {
        other = &targets_of(seg - 1);
        w = 0.5 * (1.0 - from_start / transition);
      }
      if (other != nullptr)
        for (int k = 0; k < 3; ++k) {
          f[k] = (1.0 - w) * f[k] + w * other->formants[k];
          bw[k] = (1.0 - w) * bw[k] + w * other->bandwidths[k];
        }
      for (int k = 0; k < 3; ++k) formant[k].Set(f[k], bw[k], sr);
      voicing = here.proto->voicing;
      // 10 ms amplitude ramps into and out of silence.
      auto speech_at = [&](Index s) {
        if (s < 0 || s >= n) return false;
        std::size_t k = seg;
        while (k > 0 && segments[k].begin > s) --k;
        while (segments[k].end <= s) ++k;
        return segments[k].proto != nullptr;
      };
      if (cur.proto == nullptr) {
        amplitude = 0.0;
      } else {
        double a = 1.0;
        if (!speech_at(cur.begin - 1)) a = std::min(a, from_start / ramp);
        if (!speech_at(cur.end)) a = std::min(a, to_end / ramp);
        amplitude = std::clamp(a, 0.0, 1.0);
      }
    }
    double t = i / sr;
    double f0 = speaker.f0 *
                (1.0 + 0.04 * std::sin(2.0 * std::numbers::pi * 1.3 * t + vibrato_phase));
    phase += f0 / sr;
    double pulse = 0.0;
    if (phase >= 1.0) {
      phase -= 1.0;
      pulse = 1.0;
    }
    double voiced = glottal.Step(pulse * std::sqrt(sr / f0));
    double excitation = amplitude * (voicing * voiced + (1.0 - voicing) * 0.5 * gauss(rng));
    double y = excitation;
    for (auto &r : formant) y = r.Step(y);
    y = f4.Step(y);
    double radiated = y - prev_radiated;
    prev_radiated = y;
    out[i] = radiated;
  }

  // Level equalization: each phone is scaled to unit RMS, with the gain
  // interpolated linearly between phone centers so boundaries stay smooth.
  std::vector<std::pair<double, double>> knots;  // (center sample, gain)
  for (const PhoneSegment &s : segments) {
    if (s.proto == nullptr || s.end <= s.begin) continue;
    double e = 0.0;
    for (Index i = s.begin; i < s.end; ++i) e += out[i] * out[i];
    double rms = std::sqrt(e / (s.end - s.begin));
    if (rms > 0.0) knots.emplace_back(0.5 * (s.begin + s.end), 1.0 / rms);
  }
  if (!knots.empty()) {
    std::size_t k = 0;
    for (Index i = 0; i < n; ++i) {
      while (k + 1 < knots.size() && knots[k + 1].first <= i) ++k;
      double g = knots[k].second;
      if (i > knots[k].first && k + 1 < knots.size()) {
        double w = (i - knots[k].first) / (knots[k + 1].first - knots[k].first);
        g = (1.0 - w) * knots[k].second + w * knots[k + 1].second;
      }
      out[i] *= g;
    }
  }

  // Channel FIR, then peak normalization and additive noise.
  std::vector<double> channel(n);
  for (Index i = 0; i < n; ++i) {
    double y = out[i];
    if (i >= 1) y += speaker.channel[0] * out[i - 1];
    if (i >= 2) y += speaker.channel[1] * out[i - 2];
    channel[i] = y;
  }
  double peak = 0.0, energy = 0.0;
  Index speech_samples = 0;
  for (const PhoneSegment &s : segments) {
    if (s.proto == nullptr) continue;
    for (Index i = s.begin; i < s.end; ++i) {
      energy += channel[i] * channel[i];
      ++speech_samples;
    }
  }
  for (double v : channel) peak = std::max(peak, std::abs(v));
  double scale = peak > 0.0 ? 0.5 / peak : 1.0;
  double rms = speech_samples > 0 ? std::sqrt(energy / speech_samples) * scale : 0.0;
  std::vector<float> samples(n);
  for (Index i = 0; i < n; ++i) {
    double v = channel[i] * scale + speaker.noise_level * rms * gauss(rng);
    samples[i] = static_cast<float>(std::clamp(v, -1.0, 1.0));
  }
  return samples;
}

}  // namespace

void SynthSpec::Validate() const {
  if (sample_rate < 8000) Fail("synth: sample rate {} too low", sample_rate);
  std::set<std::string> labels;
  for (const PhonePrototype &p : phones) {
    if (p.label.empty() || !labels.insert(p.label).second)
      Fail("synth: empty or duplicate phone label '{}'", p.label);
    for (int k = 0; k < 3; ++k)
      if (!(p.formants[k] > 0.0) || p.formants[k] * 1.3 >= 0.5 * sample_rate ||
          !(p.bandwidths[k] > 0.0))
        Fail("synth: phone '{}' has an invalid formant {}", p.label, k + 1);
  }
  if (languages.empty()) Fail("synth: no languages defined");
  std::set<std::string> language_ids;
  for (const SynthLanguage &l : languages) {
    language_ids.insert(l.id);
    if (l.inventory.empty()) Fail("synth: language '{}' has no phones", l.id);
    for (const std::string &p : l.inventory)
      if (!labels.count(p)) Fail("synth: language '{}' uses unknown phone '{}'", l.id, p);
    if (l.lexicon.empty()) Fail("synth: language '{}' has an empty lexicon", l.id);
    for (const auto &word : l.lexicon) {
      if (word.empty()) Fail("synth: language '{}' has an empty word", l.id);
      for (const std::string &p : word)
        if (std::find(l.inventory.begin(), l.inventory.end(), p) == l.inventory.end())
          Fail("synth: word in '{}' uses phone '{}' outside the inventory", l.id, p);
    }
  }
  if (speakers.size() < 2) Fail("synth: need at least 2 speakers, got {}", speakers.size());
  std::set<std::string> speaker_ids;
  for (const SynthSpeaker &s : speakers) {
    if (!speaker_ids.insert(s.id).second) Fail("synth: duplicate speaker '{}'", s.id);
    if (!language_ids.count(s.language))
      Fail("synth: speaker '{}' speaks unknown language '{}'", s.id, s.language);
    if (!(s.warp > 0.5 && s.warp < 1.5)) Fail("synth: speaker '{}' warp {} out of range", s.id, s.warp);
    if (!(s.f0 > 50.0 && s.f0 < 400.0)) Fail("synth: speaker '{}' f0 {} out of range", s.id, s.f0);
    if (s.num_utterances < 1) Fail("synth: speaker '{}' has no utterances", s.id);
    if (!(s.noise_level >= 0.0)) Fail("synth: speaker '{}' noise level negative", s.id);
  }
  if (words_per_utterance < 1) Fail("synth: words_per_utterance must be >= 1");
  if (!(phone_min_duration > 0.0) || phone_min_duration > phone_max_duration)
    Fail("synth: bad phone duration range");
  if (!(silence >= 0.0) || !(transition >= 0.0) || !(formant_jitter >= 0.0))
    Fail("synth: negative timing or jitter parameter");
}

SynthCorpus SynthesizeCorpus(const SynthSpec &spec, std::uint64_t seed) {
  spec.Validate();
  std::map<std::string, const PhonePrototype *> proto_of;
  for (const PhonePrototype &p : spec.phones) proto_of[p.label] = &p;

  SynthCorpus corpus;
  const double sr = spec.sample_rate;
  for (std::size_t s = 0; s < spec.speakers.size(); ++s) {
    const SynthSpeaker &speaker = spec.speakers[s];
    corpus.true_warps[speaker.id] = speaker.warp;
    const SynthLanguage &language = *std::find_if(
        spec.languages.begin(), spec.languages.end(),
        [&](const SynthLanguage &l) { return l.id == speaker.language; });
    for (int u = 0; u < speaker.num_utterances; ++u) {
      std::mt19937_64 rng(StreamSeed(seed, s, u));
      std::uniform_int_distribution<std::size_t> pick_word(0, language.lexicon.size() - 1);
      std::uniform_real_distribution<double> pick_dur(spec.phone_min_duration,
                                                      spec.phone_max_duration);
      std::normal_distribution<double> jitter(0.0, spec.formant_jitter);

      Utterance utt;
      utt.id = fmt::format("{}_{:03d}", speaker.id, u);
      utt.speaker = speaker.id;
      utt.gender = speaker.gender;
      utt.language = speaker.language;
      utt.sample_rate = spec.sample_rate;
      utt.split = speaker.split;

      std::vector<PhoneSegment> segments;
      Index cursor = static_cast<Index>(std::lround(spec.silence * sr));
      segments.push_back({nullptr, {}, {}, 0, cursor});
      for (int w = 0; w < spec.words_per_utterance; ++w) {
        const auto &word = language.lexicon[pick_word(rng)];
        Index word_begin = cursor;
        std::string orthography;
        for (const std::string &label : word) {
          PhoneSegment seg;
          seg.proto = proto_of.at(label);
          auto accent = speaker.accent.find(label);
          for (int k = 0; k < 3; ++k) {
            double a = accent == speaker.accent.end() ? 1.0 : accent->second[k];
            seg.formants[k] = seg.proto->formants[k] * a * speaker.warp * (1.0 + jitter(rng));
            seg.bandwidths[k] = seg.proto->bandwidths[k] * speaker.warp;
          }
          seg.begin = cursor;
          cursor += std::max<Index>(1, std::lround(pick_dur(rng) * sr));
          seg.end = cursor;
          segments.push_back(seg);
          corpus.manifest.phones.push_back(
              {utt.id, label, seg.begin / sr, seg.end / sr});
          orthography += label;
        }
        corpus.manifest.words.push_back({utt.id, orthography, word_begin / sr, cursor / sr});
      }
      Index speech_end = cursor;
      cursor += static_cast<Index>(std::lround(spec.silence * sr));
      segments.push_back({nullptr, {}, {}, speech_end, cursor});
      if (segments.front().end == 0) segments.erase(segments.begin());
      if (segments.back().begin == segments.back().end) segments.pop_back();

      utt.samples = Render(spec, speaker, segments, rng);
      utt.duration = utt.samples.size() / sr;
      corpus.manifest.utterances.push_back(std::move(utt));
    }
  }
  corpus.manifest.Validate();
  return corpus;
}

SynthSpec RandomSynthSpec(const SynthWorldOptions &options, std::uint64_t seed) {
  const int max_pool = static_cast<int>(sizeof(kPhoneLetters) - 1);
  if (options.pool_size < 2 || options.pool_size > max_pool)
    Fail("synth: phone pool size {} outside [2, {}]", options.pool_size, max_pool);
  std::mt19937_64 rng(StreamSeed(seed, 0xf00d, 0));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

  SynthSpec spec;
  // Phone pool: farthest-point selection keeps prototypes evenly spread in
  // a weighted mel-formant space.
  if (options.candidates_per_phone < 1) Fail("synth: candidates_per_phone must be positive");
  std::vector<PhonePrototype> candidates(options.pool_size * options.candidates_per_phone);
  std::vector<std::array<double, 3>> pos(candidates.size());
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    PhonePrototype &p = candidates[c];
    p.formants[0] = uniform(250.0, 850.0);
    p.formants[1] = uniform(std::max(800.0, p.formants[0] + 300.0), 2400.0);
    p.formants[2] = uniform(std::max(2200.0, p.formants[1] + 300.0), 3300.0);
    // Mel-scaled formants; F3 counts less since it barely moves a cepstrum.
    static constexpr double kWeight[3] = {1.0, 1.0, 0.3};
    for (int k = 0; k < 3; ++k) pos[c][k] = kWeight[k] * std::log1p(p.formants[k] / 700.0);
  }
  std::vector<double> nearest(candidates.size(), std::numeric_limits<double>::infinity());
  std::size_t pick = 0;
  while (static_cast<int>(spec.phones.size()) < options.pool_size) {
    PhonePrototype p = candidates[pick];
    p.bandwidths = {uniform(60.0, 100.0), uniform(80.0, 140.0), uniform(120.0, 200.0)};
    p.voicing = unit(rng) < options.unvoiced_fraction ? 0.0 : 1.0;
    p.label = std::string(1, kPhoneLetters[spec.phones.size()]);
    spec.phones.push_back(p);
    std::size_t next = 0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      double d = 0.0;
      for (int k = 0; k < 3; ++k) d += (pos[c][k] - pos[pick][k]) * (pos[c][k] - pos[pick][k]);
      nearest[c] = std::min(nearest[c], d);
      if (nearest[c] > nearest[next]) next = c;
    }
    pick = next;
  }

  for (std::size_t li = 0; li < options.languages.size(); ++li) {
    const SynthLanguageOptions &lo = options.languages[li];
    if (lo.inventory_size < 2 || lo.inventory_size > options.pool_size)
      Fail("synth: language '{}' inventory size {} invalid", lo.id, lo.inventory_size);
    std::vector<int> order(options.pool_size);
    for (int i = 0; i < options.pool_size; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    order.resize(lo.inventory_size);
    std::sort(order.begin(), order.end());
    SynthLanguage lang;
    lang.id = lo.id;
    for (int i : order) lang.inventory.push_back(spec.phones[i].label);

    std::set<std::vector<std::string>> seen;
    std::uniform_int_distribution<int> length(lo.min_word_phones, lo.max_word_phones);
    std::uniform_int_distribution<int> phone(0, lo.inventory_size - 1);
    int guard = 0;
    while (static_cast<int>(lang.lexicon.size()) < lo.lexicon_size && ++guard < 100000) {
      std::vector<std::string> word;
      int len = length(rng);
      while (static_cast<int>(word.size()) < len) {
        const std::string &p = lang.inventory[phone(rng)];
        if (!word.empty() && word.back() == p) continue;
        word.push_back(p);
      }
      if (seen.insert(word).second) lang.lexicon.push_back(word);
    }
    spec.languages.push_back(lang);

    auto add_speakers = [&](const std::vector<double> &warps, const std::string &split) {
      for (double warp : warps) {
        SynthSpeaker s;
        int index = static_cast<int>(spec.speakers.size());
        s.id = fmt::format("{}{:02d}", lo.id, index);
        s.gender = index % 2 == 0 ? Gender::kFemale : Gender::kMale;
        s.language = lo.id;
        s.split = split;
        s.warp = warp;
        s.f0 = s.gender == Gender::kFemale ? uniform(180.0, 230.0) : uniform(100.0, 135.0);
        s.channel = {uniform(-0.4, 0.4), uniform(-0.2, 0.2)};
        s.noise_level = uniform(options.min_noise_level, options.max_noise_level);
        s.num_utterances = lo.utterances_per_speaker;
        if (options.accent_spread > 0.0) {
          // Own stream, so the accent setting leaves the rest of the world alone.
          std::mt19937_64 accent_rng(StreamSeed(seed, 0xacce, index));
          std::normal_distribution<double> offset(0.0, options.accent_spread);
          for (const std::string &label : lang.inventory)
            for (int k = 0; k < 3; ++k) s.accent[label][k] = std::exp(offset(accent_rng));
        }
        spec.speakers.push_back(s);
      }
    };
    add_speakers(lo.train_warps, "train");
    add_speakers(lo.eval_warps, "eval");
  }
  spec.Validate();
  return spec;
}

}  // namespace zrsw
