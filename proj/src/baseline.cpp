#include "mteval/baseline.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>

#include "mteval/text.hpp"

namespace mteval {

namespace {

using NgramCounts = std::unordered_map<std::u32string, std::size_t>;

NgramCounts count_ngrams(const std::vector<char32_t>& cps, std::size_t n) {
  NgramCounts counts;
  if (cps.size() < n) return counts;
  for (std::size_t i = 0; i + n <= cps.size(); ++i) {
    counts[std::u32string(cps.begin() + i, cps.begin() + i + n)] += 1;
  }
  return counts;
}

}  // namespace

double baseline_score(std::string_view hypothesis, std::string_view reference,
                      const BaselineConfig& config) {
  if (reference.empty()) {
    throw ValidationError("baseline_score requires a non-empty reference");
  }
  if (config.max_ngram < 1) {
    throw ValidationError("max_ngram must be >= 1");
  }
  if (!(config.beta > 0.0)) {
    throw ValidationError("beta must be > 0");
  }

  const auto hyp = decode_utf8(hypothesis);
  const auto ref = decode_utf8(reference);
  const double beta2 = config.beta * config.beta;

  double f_sum = 0.0;
  for (int n = 1; n <= config.max_ngram; ++n) {
    const auto hyp_counts = count_ngrams(hyp, static_cast<std::size_t>(n));
    const auto ref_counts = count_ngrams(ref, static_cast<std::size_t>(n));
    std::size_t hyp_total = 0;
    std::size_t ref_total = 0;
    std::size_t matched = 0;  // count-clipped multiset intersection
    for (const auto& [gram, c] : hyp_counts) {
      hyp_total += c;
      auto it = ref_counts.find(gram);
      if (it != ref_counts.end()) matched += std::min(c, it->second);
    }
    for (const auto& [gram, c] : ref_counts) ref_total += c;

    const double precision =
        hyp_total > 0 ? static_cast<double>(matched) / hyp_total : 0.0;
    const double recall =
        ref_total > 0 ? static_cast<double>(matched) / ref_total : 0.0;
    const double denom = beta2 * precision + recall;
    const double f =
        denom > 0.0 ? (1.0 + beta2) * precision * recall / denom : 0.0;
    f_sum += f;
  }

  const double f_mean = f_sum / config.max_ngram;
  return 25.0 * (1.0 - f_mean);
}

ScoreSet baseline_score_set(const std::vector<RatedSegment>& records,
                            const LanguagePair& lp,
                            const BaselineConfig& config, Warnings* warnings) {
  ScoreSet out;
  out.lp = lp;
  out.orientation = Orientation::LowerBetter;
  std::set<std::pair<std::string, std::string>> seen;
  std::size_t skipped = 0;
  for (const auto& r : records) {
    if (r.lp != lp) continue;
    if (!seen.insert({r.segment_id, r.system_id}).second) continue;
    if (!r.reference) {
      ++skipped;
      continue;
    }
    out.entries.push_back({r.segment_id, r.system_id,
                           baseline_score(r.hypothesis, *r.reference, config)});
  }
  if (skipped > 0) {
    warn(warnings, std::to_string(skipped) +
                       " records without a reference were skipped by the "
                       "baseline scorer");
  }
  if (out.entries.empty()) {
    throw ValidationError("no scorable records for language pair " + lp.str());
  }
  return out;
}

}  // namespace mteval
