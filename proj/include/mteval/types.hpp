#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace mteval {

// "xx-yy" language pair; both sides lowercase ASCII letters.
struct LanguagePair {
  std::string source_lang;
  std::string target_lang;

  std::string str() const { return source_lang + "-" + target_lang; }

  friend bool operator==(const LanguagePair&, const LanguagePair&) = default;
  friend auto operator<=>(const LanguagePair&, const LanguagePair&) = default;
};

// Throws ValidationError if `text` is not a well-formed "xx-yy" pair.
LanguagePair parse_lp(std::string_view text);

enum class RatingKind { DaRaw, DaZ, Mqm };

std::string to_string(RatingKind kind);
RatingKind rating_kind_from_string(std::string_view s);

enum class Orientation { LowerBetter, HigherBetter };

std::string to_string(Orientation o);
Orientation orientation_from_string(std::string_view s);

// DA is higher-is-better, MQM lower-is-better.
Orientation orientation_of(RatingKind kind);

// One human-rated translation. Text fields are stored verbatim; loading
// and saving never trims, case-folds or otherwise normalizes them.
struct RatedSegment {
  std::string segment_id;
  LanguagePair lp;
  std::optional<std::string> domain;
  std::string system_id;
  std::optional<std::string> rater_id;
  std::string source;
  std::string hypothesis;
  std::optional<std::string> reference;
  double score = 0.0;
  RatingKind rating_kind = RatingKind::DaRaw;
  std::optional<int> year;

  friend bool operator==(const RatedSegment&, const RatedSegment&) = default;
};

// DA_RAW in [0,100], MQM in [0,25], DA_Z unbounded but finite. Returns an
// error message on violation, nullopt when the record is valid.
std::optional<std::string> validate_segment(const RatedSegment& seg);

struct ScoreEntry {
  std::string segment_id;
  std::string system_id;
  double score = 0.0;
};

// Metric scores for one language pair, keyed by (segment_id, system_id).
struct ScoreSet {
  LanguagePair lp;
  Orientation orientation = Orientation::LowerBetter;
  std::vector<ScoreEntry> entries;
};

}  // namespace mteval
