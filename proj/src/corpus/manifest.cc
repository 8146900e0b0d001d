// corpus/manifest.cc

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

#include "zrsw/corpus/manifest.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "zrsw/base/error.h"
#include "zrsw/corpus/wav-io.h"

namespace zrsw {

namespace {

constexpr double kTimeSlack = 1e-9;

std::vector<std::string> SplitTabs(const std::string &line) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (true) {
    std::size_t tab = line.find('\t', pos);
    fields.push_back(line.substr(pos, tab - pos));
    if (tab == std::string::npos) break;
    pos = tab + 1;
  }
  return fields;
}

double ParseDouble(const std::string &s, const std::string &where) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    Fail("{}: '{}' is not a finite number", where, s);
  return v;
}

int ParseInt(const std::string &s, const std::string &where) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    Fail("{}: '{}' is not an integer", where, s);
  return v;
}

std::string OptionalField(const std::string &s) { return s == "-" ? "" : s; }
std::string OrDash(const std::string &s) { return s.empty() ? "-" : s; }

void CheckSpan(const CorpusManifest &m, const std::string &utt, double start,
               double end, const std::string &what) {
  const Utterance *u = m.TryFind(utt);
  if (u == nullptr) Fail("{} refers to unknown utterance '{}'", what, utt);
  if (!(start >= 0.0) || !(start < end) || end > u->duration + kTimeSlack)
    Fail("{} span [{}, {}] lies outside utterance '{}' of duration {}", what,
         start, end, utt, u->duration);
}

}  // namespace

char GenderCode(Gender g) {
  switch (g) {
    case Gender::kFemale: return 'F';
    case Gender::kMale: return 'M';
    default: return 'U';
  }
}

Gender ParseGender(std::string_view code) {
  if (code == "F") return Gender::kFemale;
  if (code == "M") return Gender::kMale;
  if (code == "U" || code == "-") return Gender::kUnknown;
  Fail("unknown gender code '{}'", code);
}

std::size_t Utf8Length(std::string_view s) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < s.size();) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    std::size_t len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3
                    : (c >> 3) == 0x1E ? 4 : 0;
    if (len == 0 || i + len > s.size()) Fail("invalid UTF-8 in '{}'", s);
    for (std::size_t k = 1; k < len; ++k)
      if ((static_cast<unsigned char>(s[i + k]) >> 6) != 0x2)
        Fail("invalid UTF-8 in '{}'", s);
    i += len;
    ++count;
  }
  return count;
}

void CorpusManifest::Validate() {
  index_.clear();
  std::map<std::string, std::string> split_of_speaker;
  for (std::size_t i = 0; i < utterances.size(); ++i) {
    const Utterance &u = utterances[i];
    if (u.id.empty()) Fail("utterance #{} has an empty id", i);
    if (!index_.emplace(u.id, i).second) Fail("duplicate utterance id '{}'", u.id);
    if (u.speaker.empty()) Fail("utterance '{}' has no speaker", u.id);
    if (u.sample_rate <= 0)
      Fail("utterance '{}' has non-positive sample rate {}", u.id, u.sample_rate);
    if (!(u.duration > 0.0))
      Fail("utterance '{}' has non-positive duration {}", u.id, u.duration);
    for (float s : u.samples)
      if (!std::isfinite(s)) Fail("utterance '{}' has non-finite samples", u.id);
    if (!u.samples.empty()) {
      double d = static_cast<double>(u.samples.size()) / u.sample_rate;
      if (std::abs(d - u.duration) > 1.0 / u.sample_rate + kTimeSlack)
        Fail("utterance '{}' declares duration {} but has {} s of audio", u.id,
             u.duration, d);
    }
    if (!u.split.empty()) {
      auto [it, inserted] = split_of_speaker.emplace(u.speaker, u.split);
      if (!inserted && it->second != u.split)
        Fail("speaker '{}' appears in splits '{}' and '{}'", u.speaker,
             it->second, u.split);
    }
  }
  for (const WordToken &w : words) {
    if (w.orthography.empty()) Fail("word token in '{}' has empty orthography", w.utterance);
    Utf8Length(w.orthography);
    CheckSpan(*this, w.utterance, w.start, w.end,
              fmt::format("word token '{}' ({}-{})", w.orthography, w.start, w.end));
  }
  std::map<std::string, std::vector<const PhoneToken *>> by_utt;
  for (const PhoneToken &p : phones) {
    CheckSpan(*this, p.utterance, p.start, p.end,
              fmt::format("phone token '{}' ({}-{})", p.label, p.start, p.end));
    by_utt[p.utterance].push_back(&p);
  }
  for (auto &[utt, list] : by_utt) {
    for (std::size_t i = 1; i < list.size(); ++i)
      if (list[i]->start < list[i - 1]->end - kTimeSlack)
        Fail("phone tokens of '{}' overlap or are out of order at {}", utt,
             list[i]->start);
  }
  for (std::size_t i = 0; i < pairs.entries.size(); ++i) {
    const SegmentPair &p = pairs.entries[i];
    std::string what = fmt::format("pair #{}", i);
    CheckSpan(*this, p.a.utterance, p.a.start, p.a.end, what);
    CheckSpan(*this, p.b.utterance, p.b.start, p.b.end, what);
    if (p.a.utterance == p.b.utterance && p.a.start == p.b.start && p.a.end == p.b.end)
      Fail("{} pairs a segment of '{}' with itself", what, p.a.utterance);
  }
}

const Utterance *CorpusManifest::TryFind(std::string_view id) const {
  auto it = index_.find(id);
  if (it != index_.end()) return &utterances[it->second];
  // Fall back to a scan when the index is stale (manifest built in code).
  for (const Utterance &u : utterances)
    if (u.id == id) return &u;
  return nullptr;
}

const Utterance &CorpusManifest::Find(std::string_view id) const {
  const Utterance *u = TryFind(id);
  if (u == nullptr) Fail("unknown utterance '{}'", id);
  return *u;
}

std::map<std::string, std::string> CorpusManifest::SpeakerOf() const {
  std::map<std::string, std::string> out;
  for (const Utterance &u : utterances) out[u.id] = u.speaker;
  return out;
}

std::vector<std::string> CorpusManifest::Speakers() const {
  std::set<std::string> s;
  for (const Utterance &u : utterances) s.insert(u.speaker);
  return {s.begin(), s.end()};
}

std::vector<WordToken> CorpusManifest::WordsOf(std::string_view utterance) const {
  std::vector<WordToken> out;
  for (const WordToken &w : words)
    if (w.utterance == utterance) out.push_back(w);
  std::stable_sort(out.begin(), out.end(),
                   [](const WordToken &a, const WordToken &b) { return a.start < b.start; });
  return out;
}

std::vector<PhoneToken> CorpusManifest::PhonesOf(std::string_view utterance) const {
  std::vector<PhoneToken> out;
  for (const PhoneToken &p : phones)
    if (p.utterance == utterance) out.push_back(p);
  std::stable_sort(out.begin(), out.end(),
                   [](const PhoneToken &a, const PhoneToken &b) { return a.start < b.start; });
  return out;
}

namespace {

template <typename Keep>
CorpusManifest Filter(const CorpusManifest &m, Keep keep) {
  CorpusManifest out;
  out.base_dir = m.base_dir;
  std::set<std::string> ids;
  for (const Utterance &u : m.utterances)
    if (keep(u)) {
      out.utterances.push_back(u);
      ids.insert(u.id);
    }
  for (const WordToken &w : m.words)
    if (ids.count(w.utterance)) out.words.push_back(w);
  for (const PhoneToken &p : m.phones)
    if (ids.count(p.utterance)) out.phones.push_back(p);
  for (const SegmentPair &p : m.pairs.entries)
    if (ids.count(p.a.utterance) && ids.count(p.b.utterance))
      out.pairs.entries.push_back(p);
  out.Validate();
  return out;
}

}  // namespace

CorpusManifest CorpusManifest::Subset(const std::vector<std::string> &splits) const {
  return Filter(*this, [&](const Utterance &u) {
    return std::find(splits.begin(), splits.end(), u.split) != splits.end();
  });
}

CorpusManifest CorpusManifest::SubsetByLanguage(std::string_view language) const {
  return Filter(*this, [&](const Utterance &u) { return u.language == language; });
}

CorpusManifest ReadManifest(std::istream &is, const std::string &source) {
  CorpusManifest m;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f = SplitTabs(line);
    std::string where = fmt::format("{}:{}", source, line_no);
    auto expect = [&](std::size_t n) {
      if (f.size() != n)
        Fail("{}: {} record needs {} fields, got {}", where, f[0], n, f.size());
    };
    if (f[0] == "UTT") {
      expect(10);
      Utterance u;
      u.id = f[1];
      u.speaker = f[2];
      u.gender = ParseGender(f[3]);
      u.language = OptionalField(f[4]);
      u.sample_rate = ParseInt(f[5], where);
      u.duration = ParseDouble(f[6], where);
      u.audio_path = OptionalField(f[7]);
      u.feature_path = OptionalField(f[8]);
      u.split = OptionalField(f[9]);
      m.utterances.push_back(std::move(u));
    } else if (f[0] == "WORD") {
      expect(5);
      m.words.push_back({f[1], f[2], ParseDouble(f[3], where), ParseDouble(f[4], where)});
    } else if (f[0] == "PHONE") {
      expect(5);
      m.phones.push_back({f[1], f[2], ParseDouble(f[3], where), ParseDouble(f[4], where)});
    } else if (f[0] == "PAIR") {
      expect(8);
      SegmentPair p;
      p.a = {f[1], ParseDouble(f[2], where), ParseDouble(f[3], where)};
      p.b = {f[4], ParseDouble(f[5], where), ParseDouble(f[6], where)};
      if (f[7] == "UTD") p.kind = PairKind::kUtd;
      else if (f[7] == "GOLD") p.kind = PairKind::kGold;
      else Fail("{}: unknown pair kind '{}'", where, f[7]);
      m.pairs.entries.push_back(std::move(p));
    } else {
      Fail("{}: unknown record kind '{}'", where, f[0]);
    }
  }
  m.Validate();
  return m;
}

CorpusManifest LoadManifest(const std::filesystem::path &path) {
  std::ifstream is(path);
  if (!is) Fail("manifest '{}' does not exist or cannot be read", path.string());
  CorpusManifest m = ReadManifest(is, path.string());
  m.base_dir = path.parent_path();
  return m;
}

void WriteManifest(std::ostream &os, const CorpusManifest &m) {
  for (const Utterance &u : m.utterances)
    os << fmt::format("UTT\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", u.id, u.speaker,
                      GenderCode(u.gender), OrDash(u.language), u.sample_rate,
                      u.duration, OrDash(u.audio_path), OrDash(u.feature_path),
                      OrDash(u.split));
  for (const WordToken &w : m.words)
    os << fmt::format("WORD\t{}\t{}\t{}\t{}\n", w.utterance, w.orthography, w.start, w.end);
  for (const PhoneToken &p : m.phones)
    os << fmt::format("PHONE\t{}\t{}\t{}\t{}\n", p.utterance, p.label, p.start, p.end);
  for (const SegmentPair &p : m.pairs.entries)
    os << fmt::format("PAIR\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", p.a.utterance, p.a.start,
                      p.a.end, p.b.utterance, p.b.start, p.b.end,
                      p.kind == PairKind::kUtd ? "UTD" : "GOLD");
}

void SaveManifest(const std::filesystem::path &path, const CorpusManifest &m) {
  std::ofstream os(path);
  if (!os) Fail("cannot write manifest '{}'", path.string());
  WriteManifest(os, m);
}

void LoadAudio(CorpusManifest &manifest) {
  for (Utterance &u : manifest.utterances) {
    if (!u.samples.empty() || u.audio_path.empty()) continue;
    WavData wav = ReadWav(manifest.base_dir / u.audio_path);
    if (wav.sample_rate != u.sample_rate)
      Fail("utterance '{}': wav sample rate {} differs from manifest {}", u.id,
           wav.sample_rate, u.sample_rate);
    u.samples = std::move(wav.samples);
  }
  manifest.Validate();
}

}  // namespace zrsw
