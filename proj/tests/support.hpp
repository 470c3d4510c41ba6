// Shared test fixtures: a seeded random corpus generator and independent
// brute-force oracles for the statistics under test. The oracles are
// deliberately written as plain double loops so they share no code with
// the library implementations.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mteval/metaeval.hpp"
#include "mteval/rng.hpp"
#include "mteval/types.hpp"

namespace testsupport {

using mteval::RatedSegment;
using mteval::Rng;

// small word banks per "language"; enough to get realistic refs/hyps
inline const std::vector<std::string>& word_bank(const std::string& lang) {
  static const std::map<std::string, std::vector<std::string>> banks = {
      {"en",
       {"the",    "cat",   "sat",    "on",     "a",      "mat",   "house",
        "river",  "runs",  "small",  "green",  "train",  "left",  "station",
        "early",  "today", "people", "market", "bought", "fresh", "bread",
        "winter", "came",  "fast",   "children", "played", "music", "loudly",
        "while",  "rain",  "fell",   "quietly", "minister", "said", "economy",
        "grew",   "two",   "percent", "last",   "year"}},
      {"de",
       {"der",  "Hund",   "lief",   "durch",  "den",    "Park",  "und",
        "die",  "Stadt",  "war",    "heute",  "sehr",   "ruhig", "Kinder",
        "spielten", "auf", "dem",   "Platz",  "Wetter", "bleibt", "morgen",
        "kalt", "Regierung", "plant", "neue",  "Schulen", "im",  "Norden",
        "Züge", "fahren", "wieder", "pünktlich", "nach",  "Berlin"}},
      {"zh",
       {"我们", "今天", "去",   "市场", "买",   "新鲜", "面包", "火车",
        "准时", "到达", "车站", "孩子", "在",   "公园", "玩",   "音乐",
        "很",   "大声", "经济", "增长", "百分之二", "政府", "计划", "新建",
        "学校", "天气", "明天", "会",   "变冷"}},
  };
  auto it = banks.find(lang);
  return it == banks.end() ? banks.at("en") : it->second;
}

inline std::string sentence(Rng& rng, const std::string& lang,
                            std::size_t min_words, std::size_t max_words,
                            const std::string& end = ".") {
  const auto& bank = word_bank(lang);
  const std::size_t n = min_words + rng.below(max_words - min_words + 1);
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) out += ' ';
    out += bank[rng.below(bank.size())];
  }
  return out + end;
}

struct CorpusOptions {
  std::vector<std::string> lps = {"de-en", "zh-en", "en-de"};
  std::size_t records = 200;
  std::size_t raters = 5;
  mteval::RatingKind kind = mteval::RatingKind::DaRaw;
  bool multi_sentence = true;
};

// deterministic corpus of rated segments with plausible text shapes
inline std::vector<RatedSegment> random_corpus(std::uint64_t seed,
                                               const CorpusOptions& opt = {}) {
  Rng rng(seed);
  std::vector<RatedSegment> records;
  const std::vector<std::string> ends = {".", ".", ".", "?", "!", "\""};
  std::size_t made = 0;
  std::size_t seg = 0;
  while (made < opt.records) {
    for (const auto& lp_str : opt.lps) {
      if (made >= opt.records) break;
      auto lp = mteval::parse_lp(lp_str);
      ++seg;
      const std::string end = ends[rng.below(ends.size())];
      std::string ref = sentence(rng, lp.target_lang, 5, 14, end);
      if (opt.multi_sentence && rng.below(4) == 0) {
        ref = sentence(rng, lp.target_lang, 4, 9) + " " + ref;
      }
      const std::string src = sentence(rng, lp.source_lang, 5, 14);
      for (const std::string sys : {"sysA", "sysB"}) {
        if (made >= opt.records) break;
        std::string hyp = sentence(rng, lp.target_lang, 4, 14,
                                   ends[rng.below(ends.size())]);
        if (opt.multi_sentence && rng.below(5) == 0) {
          hyp += " " + sentence(rng, lp.target_lang, 3, 8);
        }
        RatedSegment r;
        r.segment_id = "seg" + std::to_string(seg);
        r.lp = lp;
        r.domain = "news";
        r.year = 2023;
        r.system_id = sys;
        r.source = src;
        r.hypothesis = hyp;
        r.reference = ref;
        r.rating_kind = opt.kind;
        switch (opt.kind) {
          case mteval::RatingKind::DaRaw:
            r.rater_id = "r" + std::to_string(rng.below(opt.raters));
            r.score = static_cast<double>(rng.below(101));
            break;
          case mteval::RatingKind::Mqm:
            r.score = static_cast<double>(rng.below(26));
            break;
          case mteval::RatingKind::DaZ:
            r.score = rng.real(-3.0, 3.0);
            break;
        }
        records.push_back(std::move(r));
        ++made;
      }
    }
  }
  return records;
}

// --- brute-force oracles ----------------------------------------------------

// plain pair enumeration; human ties leave the denominator, metric ties lose
inline double oracle_sys_accuracy(const std::vector<double>& human,
                                  const std::vector<double>& metric) {
  std::size_t total = 0;
  std::size_t good = 0;
  for (std::size_t i = 0; i < human.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (human[i] == human[j]) continue;
      ++total;
      if (metric[i] == metric[j]) continue;
      if ((human[i] < human[j]) == (metric[i] < metric[j])) ++good;
    }
  }
  return static_cast<double>(good) / static_cast<double>(total);
}

using OracleGroup = std::vector<std::pair<double, double>>;  // (human, metric)

inline double oracle_seg_accuracy(const std::vector<OracleGroup>& groups,
                                  double eps) {
  double sum = 0.0;
  std::size_t counted = 0;
  for (const auto& g : groups) {
    if (g.size() < 2) continue;
    std::size_t total = 0;
    std::size_t good = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        ++total;
        const bool metric_tie = std::fabs(g[i].second - g[j].second) <= eps;
        if (g[i].first == g[j].first) {
          if (metric_tie) ++good;
        } else if (!metric_tie &&
                   (g[i].first < g[j].first) == (g[i].second < g[j].second)) {
          ++good;
        }
      }
    }
    sum += static_cast<double>(good) / static_cast<double>(total);
    ++counted;
  }
  return sum / static_cast<double>(counted);
}

// exhaustive threshold sweep over {0} + pair differences + midpoints
inline std::pair<double, double> oracle_calibrate(
    const std::vector<OracleGroup>& groups) {
  std::set<double> diffs;
  for (const auto& g : groups) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        diffs.insert(std::fabs(g[i].second - g[j].second));
      }
    }
  }
  std::vector<double> cands = {0.0};
  cands.insert(cands.end(), diffs.begin(), diffs.end());
  std::vector<double> sorted(diffs.begin(), diffs.end());
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    cands.push_back(0.5 * (sorted[i] + sorted[i + 1]));
  }
  std::sort(cands.begin(), cands.end());
  double best_eps = 0.0;
  double best_acc = -1.0;
  for (double c : cands) {
    const double acc = oracle_seg_accuracy(groups, c);
    if (acc > best_acc) {
      best_acc = acc;
      best_eps = c;
    }
  }
  return {best_eps, best_acc};
}

// textbook two-pass Pearson
inline double oracle_pearson(const std::vector<double>& xs,
                             const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / n;
    my += ys[i] / n;
  }
  double a = 0.0, b = 0.0, c = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    a += (xs[i] - mx) * (ys[i] - my);
    b += (xs[i] - mx) * (xs[i] - mx);
    c += (ys[i] - my) * (ys[i] - my);
  }
  return a / std::sqrt(b * c);
}

// substring-counting character n-gram scorer, O(len^2), for cross-checking
// the baseline implementation on short strings
inline double oracle_chrf_score(const std::string& hyp, const std::string& ref,
                                int max_n, double beta) {
  auto grams = [](const std::string& s, int n) {
    // code points via a byte-level decode: split on UTF-8 lead bytes
    std::vector<std::string> cps;
    for (std::size_t i = 0; i < s.size();) {
      std::size_t len = 1;
      unsigned char b = s[i];
      if ((b & 0xE0) == 0xC0) len = 2;
      else if ((b & 0xF0) == 0xE0) len = 3;
      else if ((b & 0xF8) == 0xF0) len = 4;
      if (i + len > s.size()) len = 1;
      cps.push_back(s.substr(i, len));
      i += len;
    }
    std::vector<std::string> out;
    for (std::size_t i = 0; i + n <= cps.size(); ++i) {
      std::string g;
      for (int k = 0; k < n; ++k) g += cps[i + k];
      out.push_back(g);
    }
    return out;
  };
  double fsum = 0.0;
  for (int n = 1; n <= max_n; ++n) {
    auto hg = grams(hyp, n);
    auto rg = grams(ref, n);
    std::map<std::string, int> hc, rc;
    for (const auto& g : hg) hc[g]++;
    for (const auto& g : rg) rc[g]++;
    int match = 0;
    for (const auto& [g, c] : hc) {
      auto it = rc.find(g);
      if (it != rc.end()) match += std::min(c, it->second);
    }
    const double p = hg.empty() ? 0.0 : double(match) / double(hg.size());
    const double r = rg.empty() ? 0.0 : double(match) / double(rg.size());
    const double b2 = beta * beta;
    fsum += (b2 * p + r) > 0 ? (1 + b2) * p * r / (b2 * p + r) : 0.0;
  }
  return 25.0 * (1.0 - fsum / max_n);
}

}  // namespace testsupport
