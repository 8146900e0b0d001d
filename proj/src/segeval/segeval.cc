// segeval/segeval.cc

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

#include "zrsw/segeval/segeval.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include <fmt/format.h>

#include "zrsw/base/error.h"

namespace zrsw {

namespace {

constexpr double kTimeSlack = 1e-9;

}  // namespace

void Segmentation::Normalize(const CorpusManifest &manifest) {
  std::stable_sort(tokens.begin(), tokens.end(), [](const HypToken &a, const HypToken &b) {
    return std::tie(a.utterance, a.start) < std::tie(b.utterance, b.start);
  });
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const HypToken &t = tokens[i];
    const Utterance &u = manifest.Find(t.utterance);
    if (!(t.start >= -kTimeSlack && t.start < t.end && t.end <= u.duration + kTimeSlack))
      Fail("segment [{}, {}] of '{}' outside the utterance (duration {})", t.start, t.end,
           t.utterance, u.duration);
    if (i > 0 && tokens[i - 1].utterance == t.utterance && tokens[i - 1].end > t.start + kTimeSlack)
      Fail("segments of '{}' overlap at {}", t.utterance, t.start);
  }
}

Segmentation ReadSegmentation(std::istream &is, const std::string &source) {
  Segmentation seg;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    HypToken t;
    std::string start, end;
    if (!(fields >> t.utterance >> start >> end >> t.cluster))
      Fail("{}:{}: expected 'utterance start end cluster'", source, line_no);
    std::string extra;
    if (fields >> extra) Fail("{}:{}: trailing field '{}'", source, line_no, extra);
    try {
      std::size_t p1 = 0, p2 = 0;
      t.start = std::stod(start, &p1);
      t.end = std::stod(end, &p2);
      if (p1 != start.size() || p2 != end.size()) throw std::invalid_argument("");
    } catch (const std::exception &) {
      Fail("{}:{}: bad time in '{}'", source, line_no, line);
    }
    seg.tokens.push_back(std::move(t));
  }
  return seg;
}

Segmentation LoadSegmentation(const std::filesystem::path &path) {
  std::ifstream is(path);
  if (!is) Fail("cannot open segmentation '{}'", path.string());
  return ReadSegmentation(is, path.string());
}

void WriteSegmentation(std::ostream &os, const Segmentation &seg) {
  for (const HypToken &t : seg.tokens)
    os << fmt::format("{}\t{}\t{}\t{}\n", t.utterance, t.start, t.end, t.cluster);
}

Segmentation NaiveSegmentation(const CorpusManifest &manifest, double token_duration,
                               int num_clusters, std::uint64_t seed) {
  if (!(token_duration > 0.0)) Fail("token duration must be positive");
  if (num_clusters < 1) Fail("need at least one cluster");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, num_clusters - 1);
  Segmentation seg;
  for (const Utterance &u : manifest.utterances) {
    int n = std::max(1, static_cast<int>(std::floor(u.duration / token_duration)));
    for (int i = 0; i < n; ++i) {
      double start = i * token_duration;
      double end = i + 1 == n ? u.duration : (i + 1) * token_duration;
      seg.tokens.push_back({u.id, start, end, std::to_string(pick(rng))});
    }
  }
  return seg;
}

Vector EmbedDownsample(const Matrix &segment, int n) {
  if (segment.rows() < 1) Fail("cannot embed an empty segment");
  if (n < 1) Fail("embedding needs at least one frame, got {}", n);
  const Index t = segment.rows(), d = segment.cols();
  Vector out(n * d);
  for (int i = 0; i < n; ++i) {
    double pos = n == 1 ? 0.5 * (t - 1) : static_cast<double>(i) * (t - 1) / (n - 1);
    Index idx = std::clamp<Index>(std::lround(pos), 0, t - 1);
    out.segment(i * d, d) = segment.row(idx).transpose();
  }
  return out;
}

const char *MappingModeName(MappingMode m) {
  return m == MappingMode::kManyToOne ? "many_to_one" : "one_to_one_greedy";
}

std::vector<std::string> OverlappedWords(const Segmentation &seg, const CorpusManifest &truth) {
  std::map<std::string, std::vector<WordToken>> words;
  for (const WordToken &w : truth.words) words[w.utterance].push_back(w);
  for (auto &[u, ws] : words)
    std::stable_sort(ws.begin(), ws.end(),
                     [](const WordToken &a, const WordToken &b) { return a.start < b.start; });
  std::vector<std::string> out(seg.tokens.size());
  for (std::size_t i = 0; i < seg.tokens.size(); ++i) {
    const HypToken &t = seg.tokens[i];
    auto it = words.find(t.utterance);
    if (it == words.end()) continue;
    double best = 0.0;
    for (const WordToken &w : it->second) {
      double overlap = std::min(t.end, w.end) - std::max(t.start, w.start);
      if (overlap > best + kTimeSlack) {
        best = overlap;
        out[i] = w.orthography;
      }
    }
  }
  return out;
}

namespace {

// (cluster, word) -> count over tokens that overlap some word.
std::map<std::pair<std::string, std::string>, std::size_t> CoCounts(
    const Segmentation &seg, const std::vector<std::string> &overlapped) {
  std::map<std::pair<std::string, std::string>, std::size_t> counts;
  for (std::size_t i = 0; i < seg.tokens.size(); ++i)
    if (!overlapped[i].empty()) ++counts[{seg.tokens[i].cluster, overlapped[i]}];
  return counts;
}

}  // namespace

std::map<std::string, std::string> MapClusters(const Segmentation &seg,
                                               const CorpusManifest &truth, MappingMode mode) {
  if (seg.tokens.empty()) Fail("cannot map clusters of an empty segmentation");
  auto counts = CoCounts(seg, OverlappedWords(seg, truth));
  std::map<std::string, std::string> mapping;
  if (mode == MappingMode::kManyToOne) {
    std::map<std::string, std::size_t> best;
    // Iteration is by (cluster, word), so a strict '>' keeps the smaller word.
    for (const auto &[key, n] : counts) {
      auto it = best.find(key.first);
      if (it == best.end() || n > it->second) {
        best[key.first] = n;
        mapping[key.first] = key.second;
      }
    }
    return mapping;
  }
  std::vector<std::tuple<std::size_t, std::string, std::string>> order;  // count, word, cluster
  for (const auto &[key, n] : counts) order.emplace_back(n, key.second, key.first);
  std::sort(order.begin(), order.end(), [](const auto &a, const auto &b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
    return std::tie(std::get<1>(a), std::get<2>(a)) < std::tie(std::get<1>(b), std::get<2>(b));
  });
  std::set<std::string> used_words;
  for (const auto &[n, word, cluster] : order) {
    if (mapping.count(cluster) || used_words.count(word)) continue;
    mapping[cluster] = word;
    used_words.insert(word);
  }
  return mapping;
}

double ClusterPurity(const Segmentation &seg, const CorpusManifest &truth,
                     const std::map<std::string, std::string> &mapping) {
  if (seg.tokens.empty()) Fail("cluster purity of an empty segmentation");
  std::vector<std::string> overlapped = OverlappedWords(seg, truth);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < seg.tokens.size(); ++i) {
    auto it = mapping.find(seg.tokens[i].cluster);
    if (it != mapping.end() && !overlapped[i].empty() && it->second == overlapped[i]) ++correct;
  }
  return 100.0 * correct / seg.tokens.size();
}

double WerCounts::Wer() const {
  if (reference_words == 0) Fail("WER is undefined without reference words");
  return 100.0 * (substitutions + insertions + deletions) / reference_words;
}

WerCounts AlignWords(const std::vector<std::string> &ref, const std::vector<std::string> &hyp) {
  const std::size_t n = ref.size(), m = hyp.size();
  // cost, substitutions, insertions, deletions per cell; ties prefer fewer
  // substitutions so the breakdown is stable.
  struct Cell {
    std::size_t cost, sub, ins, del;
  };
  std::vector<Cell> prev(m + 1), cur(m + 1);
  for (std::size_t j = 0; j <= m; ++j) prev[j] = {j, 0, j, 0};
  auto better = [](const Cell &a, const Cell &b) {
    return std::tie(a.cost, a.sub) < std::tie(b.cost, b.sub);
  };
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = {i, 0, 0, i};
    for (std::size_t j = 1; j <= m; ++j) {
      Cell diag = prev[j - 1];
      if (ref[i - 1] != hyp[j - 1]) {
        ++diag.cost;
        ++diag.sub;
      }
      Cell del = prev[j];
      ++del.cost;
      ++del.del;
      Cell ins = cur[j - 1];
      ++ins.cost;
      ++ins.ins;
      Cell best = diag;
      if (better(del, best)) best = del;
      if (better(ins, best)) best = ins;
      cur[j] = best;
    }
    std::swap(prev, cur);
  }
  return {prev[m].sub, prev[m].ins, prev[m].del, n};
}

WerCounts UnsupervisedWer(const Segmentation &seg, const CorpusManifest &truth,
                          const std::map<std::string, std::string> &mapping) {
  std::map<std::string, std::vector<std::string>> hyp;
  for (const HypToken &t : seg.tokens) {
    auto it = mapping.find(t.cluster);
    // Unmapped clusters get a label no word can equal.
    hyp[t.utterance].push_back(it == mapping.end() ? std::string("\x01unmapped") : it->second);
  }
  WerCounts total;
  for (const Utterance &u : truth.utterances) {
    std::vector<std::string> ref;
    for (const WordToken &w : truth.WordsOf(u.id)) ref.push_back(w.orthography);
    WerCounts c = AlignWords(ref, hyp[u.id]);
    total.substitutions += c.substitutions;
    total.insertions += c.insertions;
    total.deletions += c.deletions;
    total.reference_words += c.reference_words;
  }
  if (total.reference_words == 0) Fail("WER is undefined without reference words");
  return total;
}

namespace {

struct Window {
  double center, lo, hi;
};

// Tolerance window of a true boundary at time b of utterance u.
Window BoundaryWindow(double b, const std::vector<PhoneToken> &phones) {
  double left = -1.0, right = -1.0;
  for (const PhoneToken &p : phones) {
    if (std::abs(p.end - b) <= kTimeSlack) left = p.end - p.start;
    if (std::abs(p.start - b) <= kTimeSlack) right = p.end - p.start;
  }
  if (left < 0.0) left = std::max(right, 0.0);
  if (right < 0.0) right = std::max(left, 0.0);
  return {b, b - left - kTimeSlack, b + right + kTimeSlack};
}

// Greedy one-to-one matching of candidate (hyp, true) couples by distance.
std::size_t MatchClosest(std::vector<std::tuple<double, std::size_t, std::size_t>> candidates) {
  std::sort(candidates.begin(), candidates.end());
  std::set<std::size_t> used_h, used_t;
  std::size_t hits = 0;
  for (const auto &[d, h, t] : candidates) {
    if (used_h.count(h) || used_t.count(t)) continue;
    used_h.insert(h);
    used_t.insert(t);
    ++hits;
  }
  return hits;
}

FScore MakeF(std::size_t hits, std::size_t num_hyp, std::size_t num_true) {
  FScore f;
  f.hits = hits;
  f.num_hyp = num_hyp;
  f.num_true = num_true;
  f.precision = num_hyp ? static_cast<double>(hits) / num_hyp : 0.0;
  f.recall = num_true ? static_cast<double>(hits) / num_true : 0.0;
  f.f = f.precision + f.recall > 0.0 ? 2.0 * f.precision * f.recall / (f.precision + f.recall) : 0.0;
  return f;
}

std::map<std::string, std::vector<const HypToken *>> ByUtterance(const Segmentation &seg) {
  std::map<std::string, std::vector<const HypToken *>> out;
  for (const HypToken &t : seg.tokens) out[t.utterance].push_back(&t);
  return out;
}

// Sorted, de-duplicated times that are not utterance edges.
std::vector<double> InnerTimes(std::vector<double> times, double duration) {
  std::sort(times.begin(), times.end());
  std::vector<double> out;
  for (double t : times) {
    if (t <= kTimeSlack || t >= duration - kTimeSlack) continue;
    if (!out.empty() && t - out.back() <= kTimeSlack) continue;
    out.push_back(t);
  }
  return out;
}

}  // namespace

FScore BoundaryFScore(const Segmentation &seg, const CorpusManifest &truth) {
  auto hyp_by_utt = ByUtterance(seg);
  std::size_t hits = 0, num_hyp = 0, num_true = 0;
  for (const Utterance &u : truth.utterances) {
    std::vector<double> hyp_times, true_times;
    for (const HypToken *t : hyp_by_utt[u.id]) {
      hyp_times.push_back(t->start);
      hyp_times.push_back(t->end);
    }
    for (const WordToken &w : truth.WordsOf(u.id)) {
      true_times.push_back(w.start);
      true_times.push_back(w.end);
    }
    std::vector<double> h = InnerTimes(hyp_times, u.duration);
    std::vector<double> b = InnerTimes(true_times, u.duration);
    std::vector<PhoneToken> phones = truth.PhonesOf(u.id);
    std::vector<std::tuple<double, std::size_t, std::size_t>> candidates;
    for (std::size_t j = 0; j < b.size(); ++j) {
      Window w = BoundaryWindow(b[j], phones);
      for (std::size_t i = 0; i < h.size(); ++i)
        if (h[i] >= w.lo && h[i] <= w.hi) candidates.emplace_back(std::abs(h[i] - b[j]), i, j);
    }
    hits += MatchClosest(std::move(candidates));
    num_hyp += h.size();
    num_true += b.size();
  }
  return MakeF(hits, num_hyp, num_true);
}

FScore TokenFScore(const Segmentation &seg, const CorpusManifest &truth) {
  auto hyp_by_utt = ByUtterance(seg);
  std::size_t hits = 0, num_hyp = 0, num_true = 0;
  for (const Utterance &u : truth.utterances) {
    const auto &hyp = hyp_by_utt[u.id];
    std::vector<WordToken> words = truth.WordsOf(u.id);
    std::vector<PhoneToken> phones = truth.PhonesOf(u.id);
    std::vector<std::tuple<double, std::size_t, std::size_t>> candidates;
    for (std::size_t j = 0; j < words.size(); ++j) {
      Window ws = BoundaryWindow(words[j].start, phones);
      Window we = BoundaryWindow(words[j].end, phones);
      for (std::size_t i = 0; i < hyp.size(); ++i) {
        const HypToken &t = *hyp[i];
        if (t.start >= ws.lo && t.start <= ws.hi && t.end >= we.lo && t.end <= we.hi)
          candidates.emplace_back(std::abs(t.start - words[j].start) + std::abs(t.end - words[j].end),
                                  i, j);
      }
    }
    hits += MatchClosest(std::move(candidates));
    num_hyp += hyp.size();
    num_true += words.size();
  }
  return MakeF(hits, num_hyp, num_true);
}

double AttributePurity(const Segmentation &seg, const CorpusManifest &truth, Attribute attribute) {
  if (seg.tokens.empty()) Fail("attribute purity of an empty segmentation");
  std::map<std::string, std::map<std::string, std::size_t>> counts;
  for (const HypToken &t : seg.tokens) {
    const Utterance &u = truth.Find(t.utterance);
    std::string value = attribute == Attribute::kSpeaker ? u.speaker : std::string(1, GenderCode(u.gender));
    ++counts[t.cluster][value];
  }
  std::size_t majority = 0;
  for (const auto &[cluster, values] : counts) {
    std::size_t best = 0;
    for (const auto &[v, n] : values) best = std::max(best, n);
    majority += best;
  }
  return 100.0 * majority / seg.tokens.size();
}

SegEvalReport EvaluateSegmentation(const Segmentation &seg, const CorpusManifest &truth) {
  Segmentation s = seg;
  s.Normalize(truth);
  SegEvalReport r;
  auto m2o = MapClusters(s, truth, MappingMode::kManyToOne);
  auto o2o = MapClusters(s, truth, MappingMode::kOneToOneGreedy);
  r.wer_many_to_one = UnsupervisedWer(s, truth, m2o).Wer();
  r.wer_one_to_one = UnsupervisedWer(s, truth, o2o).Wer();
  r.token_f = TokenFScore(s, truth).f;
  r.boundary_f = BoundaryFScore(s, truth).f;
  r.cluster_purity = ClusterPurity(s, truth, m2o);
  r.gender_purity = AttributePurity(s, truth, Attribute::kGender);
  r.speaker_purity = AttributePurity(s, truth, Attribute::kSpeaker);
  r.num_tokens = s.tokens.size();
  std::set<std::string> clusters;
  for (const HypToken &t : s.tokens) clusters.insert(t.cluster);
  r.num_clusters = clusters.size();
  return r;
}

nlohmann::json ToJson(const SegEvalReport &r) {
  return {{"wer_one_to_one", r.wer_one_to_one},
          {"wer_many_to_one", r.wer_many_to_one},
          {"wer_normalization", "corpus-wide reference word count"},
          {"token_f", r.token_f},
          {"boundary_f", r.boundary_f},
          {"cluster_purity", r.cluster_purity},
          {"gender_purity", r.gender_purity},
          {"speaker_purity", r.speaker_purity},
          {"num_tokens", r.num_tokens},
          {"num_clusters", r.num_clusters}};
}

}  // namespace zrsw
