#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mteval/error.hpp"
#include "mteval/types.hpp"

namespace mteval {

struct BaselineConfig {
  int max_ngram = 6;
  double beta = 2.0;  // recall-weighted
};

// Character n-gram F-score between hypothesis and reference, averaged over
// n = 1..max_ngram and mapped onto [0, 25] with 0 best (25 * (1 - F)).
// A lexical stand-in for a learned metric so the pipeline runs end to end.
// Orders where neither side has any n-gram contribute F = 0, not skipped.
double baseline_score(std::string_view hypothesis, std::string_view reference,
                      const BaselineConfig& config = {});

// Scores every record of one language pair against its reference. Records
// without a reference are skipped with a warning; duplicate
// (segment_id, system_id) keys are scored once.
ScoreSet baseline_score_set(const std::vector<RatedSegment>& records,
                            const LanguagePair& lp,
                            const BaselineConfig& config = {},
                            Warnings* warnings = nullptr);

}  // namespace mteval
