#pragma once

#include <string>
#include <vector>

#include "mteval/types.hpp"

namespace mteval {

enum class RatingsFormat { Tsv, Jsonl };

// TSV columns, header required:
//   lp domain year segment_id system_id rater_id source hypothesis
//   reference score rating_kind
// Empty optional cells (domain, year, rater_id, reference) mean "absent".
// JSONL uses the same keys, one object per line, absent keys omitted.
std::vector<RatedSegment> load_ratings(const std::string& path,
                                       RatingsFormat format);

// Canonical persistence is JSONL; TSV is accepted for ingestion only and
// requesting it here is an error (tabs and newlines in real reference
// text would corrupt the file).
void save_ratings(const std::vector<RatedSegment>& records,
                  const std::string& path,
                  RatingsFormat format = RatingsFormat::Jsonl);

// Score files are JSONL: a header object {"lp":..., "orientation":...}
// followed by {"segment_id":..., "system_id":..., "score":...} rows.
ScoreSet load_scores(const std::string& path);

void save_scores(const ScoreSet& scores, const std::string& path);

}  // namespace mteval
