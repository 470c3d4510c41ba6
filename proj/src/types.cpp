#include "mteval/types.hpp"

#include <cmath>

#include "mteval/error.hpp"

namespace mteval {

namespace {

bool all_lower_ascii(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < 'a' || c > 'z') return false;
  }
  return true;
}

}  // namespace

LanguagePair parse_lp(std::string_view text) {
  auto dash = text.find('-');
  if (dash == std::string_view::npos) {
    throw ValidationError("language pair '" + std::string(text) +
                          "' is not of the form xx-yy");
  }
  LanguagePair lp{std::string(text.substr(0, dash)),
                  std::string(text.substr(dash + 1))};
  if (!all_lower_ascii(lp.source_lang) || !all_lower_ascii(lp.target_lang)) {
    throw ValidationError("language pair '" + std::string(text) +
                          "' must use non-empty lowercase ASCII codes");
  }
  return lp;
}

std::string to_string(RatingKind kind) {
  switch (kind) {
    case RatingKind::DaRaw:
      return "DA_RAW";
    case RatingKind::DaZ:
      return "DA_Z";
    case RatingKind::Mqm:
      return "MQM";
  }
  return "?";
}

RatingKind rating_kind_from_string(std::string_view s) {
  if (s == "DA_RAW") return RatingKind::DaRaw;
  if (s == "DA_Z") return RatingKind::DaZ;
  if (s == "MQM") return RatingKind::Mqm;
  throw ValidationError("unknown rating_kind '" + std::string(s) +
                        "' (expected DA_RAW, DA_Z or MQM)");
}

std::string to_string(Orientation o) {
  return o == Orientation::LowerBetter ? "LOWER_BETTER" : "HIGHER_BETTER";
}

Orientation orientation_from_string(std::string_view s) {
  if (s == "LOWER_BETTER") return Orientation::LowerBetter;
  if (s == "HIGHER_BETTER") return Orientation::HigherBetter;
  throw ValidationError("unknown orientation '" + std::string(s) +
                        "' (expected LOWER_BETTER or HIGHER_BETTER)");
}

Orientation orientation_of(RatingKind kind) {
  return kind == RatingKind::Mqm ? Orientation::LowerBetter
                                 : Orientation::HigherBetter;
}

std::optional<std::string> validate_segment(const RatedSegment& seg) {
  if (!std::isfinite(seg.score)) return "score is not finite";
  switch (seg.rating_kind) {
    case RatingKind::DaRaw:
      if (seg.score < 0.0 || seg.score > 100.0) {
        return "DA_RAW score " + std::to_string(seg.score) +
               " outside [0,100]";
      }
      break;
    case RatingKind::Mqm:
      if (seg.score < 0.0 || seg.score > 25.0) {
        return "MQM score " + std::to_string(seg.score) + " outside [0,25]";
      }
      break;
    case RatingKind::DaZ:
      break;
  }
  if (seg.segment_id.empty()) return "segment_id is empty";
  if (seg.system_id.empty()) return "system_id is empty";
  if (seg.hypothesis.empty()) {
    return "hypothesis is empty (only synthetic records may be empty)";
  }
  if (seg.reference && seg.reference->empty()) {
    return "reference is present but empty (omit the field instead)";
  }
  return std::nullopt;
}

}  // namespace mteval
