// eval/abx.cc

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

#include "zrsw/eval/abx.h"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "zrsw/base/error.h"
#include "zrsw/base/parallel.h"

namespace zrsw {

const char *SpeakerConditionName(SpeakerCondition c) {
  return c == SpeakerCondition::kWithin ? "within" : "cross";
}

SpeakerCondition ParseSpeakerCondition(const std::string &name) {
  if (name == "within") return SpeakerCondition::kWithin;
  if (name == "cross") return SpeakerCondition::kCross;
  Fail("unknown ABX speaker condition '{}' (expected within or cross)", name);
}

namespace {

std::string Join(const std::array<std::string, 3> &l) {
  return l[0] + "-" + l[1] + "-" + l[2];
}

}  // namespace

std::vector<Triphone> ExtractTriphones(const CorpusManifest &manifest, double max_gap) {
  std::vector<Triphone> out;
  for (const Utterance &u : manifest.utterances) {
    std::vector<PhoneToken> phones = manifest.PhonesOf(u.id);
    for (std::size_t i = 0; i + 2 < phones.size(); ++i) {
      if (phones[i + 1].start - phones[i].end > max_gap) continue;
      if (phones[i + 2].start - phones[i + 1].end > max_gap) continue;
      Triphone t;
      t.utterance = u.id;
      t.speaker = u.speaker;
      t.labels = {phones[i].label, phones[i + 1].label, phones[i + 2].label};
      t.start = phones[i].start;
      t.end = phones[i + 2].end;
      out.push_back(std::move(t));
    }
  }
  return out;
}

AbxTripletSet BuildAbxTriplets(const CorpusManifest &manifest, const AbxBuildOptions &options) {
  AbxTripletSet set;
  std::vector<Triphone> all = ExtractTriphones(manifest, options.max_gap);

  // (labels, speaker) -> token indices, corpus order.
  std::map<std::pair<std::array<std::string, 3>, std::string>, std::vector<std::size_t>> groups;
  for (Triphone &t : all) {
    auto &g = groups[{t.labels, t.speaker}];
    if (options.max_tokens_per_speaker && g.size() >= options.max_tokens_per_speaker) continue;
    g.push_back(set.triphones.size());
    set.triphones.push_back(std::move(t));
  }

  // labels -> speaker -> tokens, and context (outer phones) -> label sets.
  std::map<std::array<std::string, 3>, std::map<std::string, std::vector<std::size_t>>> by_labels;
  for (const auto &[key, idx] : groups) by_labels[key.first][key.second] = idx;
  std::map<std::pair<std::string, std::string>, std::vector<std::array<std::string, 3>>> contexts;
  for (const auto &[labels, unused] : by_labels) contexts[{labels[0], labels[2]}].push_back(labels);

  for (const auto &[context, variants] : contexts) {
    for (const auto &la : variants) {
      for (const auto &lb : variants) {
        if (la == lb) continue;
        const auto &spk_a = by_labels.at(la);
        const auto &spk_b = by_labels.at(lb);
        for (const auto &[speaker, a_tokens] : spk_a) {
          auto bit = spk_b.find(speaker);
          if (bit == spk_b.end()) continue;
          for (const auto &[speaker_x, x_tokens] : spk_a) {
            bool within = speaker_x == speaker;
            if (within ? !options.within : !options.cross) continue;
            SpeakerCondition cond = within ? SpeakerCondition::kWithin : SpeakerCondition::kCross;
            for (std::size_t a : a_tokens)
              for (std::size_t b : bit->second)
                for (std::size_t x : x_tokens)
                  if (x != a) set.triplets.push_back({a, b, x, cond});
          }
        }
      }
    }
  }
  return set;
}

AbxResult AbxErrorRates(const AbxTripletSet &set, const FeatureStore &store,
                        AbxAveraging averaging, const DtwOptions &options) {
  if (set.triplets.empty()) Fail("ABX evaluation needs at least one triplet");

  // Unique (token, token) costs, computed once each.
  std::vector<std::pair<std::size_t, std::size_t>> keys;
  keys.reserve(2 * set.triplets.size());
  for (const AbxTriplet &t : set.triplets) {
    keys.emplace_back(std::min(t.a, t.x), std::max(t.a, t.x));
    keys.emplace_back(std::min(t.b, t.x), std::max(t.b, t.x));
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  std::vector<char> used(set.triphones.size(), 0);
  for (const auto &[i, j] : keys) used[i] = used[j] = 1;
  std::vector<Matrix> unit(set.triphones.size());
  for (std::size_t i = 0; i < set.triphones.size(); ++i) {
    if (!used[i]) continue;
    const Triphone &t = set.triphones[i];
    auto it = store.find(t.utterance);
    if (it == store.end()) Fail("no features for utterance '{}'", t.utterance);
    unit[i] = UnitRows(it->second.Slice(t.start, t.end));
  }
  std::vector<double> costs(keys.size());
  ParallelFor(keys.size(), [&](std::size_t k) {
    const Matrix &x = unit[keys[k].first], &y = unit[keys[k].second];
    if (x.cols() != y.cols()) Fail("feature dimension mismatch in ABX tokens");
    Matrix d = (1.0 - (x * y.transpose()).array().max(-1.0).min(1.0)).matrix();
    costs[k] = NormalizedDtwCost(d, options);
  });
  auto cost = [&](std::size_t i, std::size_t j) {
    auto key = std::make_pair(std::min(i, j), std::max(i, j));
    return costs[std::lower_bound(keys.begin(), keys.end(), key) - keys.begin()];
  };

  using CellKey = std::tuple<int, std::string, std::string, std::string>;
  std::map<CellKey, std::pair<double, std::size_t>> cells;
  double flat_sum[2] = {0, 0};
  AbxResult result;
  for (const AbxTriplet &t : set.triplets) {
    double ax = cost(t.a, t.x), bx = cost(t.b, t.x);
    double err = ax < bx ? 0.0 : (ax == bx ? 0.5 : 1.0);
    const Triphone &a = set.triphones[t.a], &b = set.triphones[t.b], &x = set.triphones[t.x];
    int c = t.condition == SpeakerCondition::kWithin ? 0 : 1;
    auto &cell = cells[{c, a.speaker, x.speaker, Join(a.labels) + "/" + Join(b.labels)}];
    cell.first += err;
    ++cell.second;
    flat_sum[c] += err;
    (c == 0 ? result.num_within : result.num_cross)++;
  }

  // Contrast means, then speaker-cell means, then the overall mean.
  std::map<std::tuple<int, std::string, std::string>, std::pair<double, std::size_t>> speaker_cells;
  for (const auto &[key, acc] : cells) {
    const auto &[c, sab, sx, contrast] = key;
    AbxCell out;
    out.contrast = contrast;
    out.speaker_ab = sab;
    out.speaker_x = sx;
    out.condition = c == 0 ? SpeakerCondition::kWithin : SpeakerCondition::kCross;
    out.count = acc.second;
    out.error = 100.0 * acc.first / acc.second;
    result.cells.push_back(out);
    auto &sc = speaker_cells[{c, sab, sx}];
    sc.first += out.error;
    ++sc.second;
  }
  double total[2] = {0, 0};
  std::size_t count[2] = {0, 0};
  for (const auto &[key, acc] : speaker_cells) {
    int c = std::get<0>(key);
    total[c] += acc.first / acc.second;
    ++count[c];
  }
  for (int c = 0; c < 2; ++c) {
    double &out = c == 0 ? result.within_error : result.cross_error;
    std::size_t n = c == 0 ? result.num_within : result.num_cross;
    if (n == 0) continue;
    out = averaging == AbxAveraging::kHierarchical ? total[c] / count[c] : 100.0 * flat_sum[c] / n;
  }
  return result;
}

}  // namespace zrsw
