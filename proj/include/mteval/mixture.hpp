#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mteval/error.hpp"
#include "mteval/ratings.hpp"
#include "mteval/synthgen.hpp"
#include "mteval/types.hpp"

namespace mteval {

enum class InputMode { Qe, Ref, SrcRef };

inline constexpr InputMode kAllModes[] = {InputMode::Qe, InputMode::Ref,
                                          InputMode::SrcRef};

std::string to_string(InputMode mode);
InputMode input_mode_from_string(std::string_view s);

// Frozen input formats, single ASCII space between sections:
//   QE:      "source: {src} candidate: {hyp}"
//   REF:     "candidate: {hyp} reference: {ref}"
//   SRC_REF: "source: {src} candidate: {hyp} reference: {ref}"
std::string serialize_input(const std::optional<std::string>& source,
                            const std::string& hypothesis,
                            const std::optional<std::string>& reference,
                            InputMode mode);

struct Provenance {
  enum Kind { Da, Mqm, Synthetic } kind = Da;
  std::optional<SyntheticCategory> category;  // set when kind == Synthetic

  std::string str() const;
  static Provenance from_string(std::string_view s);

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct TrainingRecord {
  std::string input_text;
  TargetScore target;
  InputMode mode = InputMode::SrcRef;
  int stage = 1;
  Provenance provenance;
};

struct MixtureSpec {
  int stage = 1;
  // one synthetic example per `synthetic_ratio` real examples, per category
  // (100 in the first stage, 5000 in the second)
  std::int64_t synthetic_ratio = 100;
  // one DA-derived example per `da_mqm_ratio` MQM examples (stage 2 only);
  // 4 by default, 10 as the alternative
  std::int64_t da_mqm_ratio = 4;
  // QE / REF / SRC_REF weights; must sum to something positive
  std::array<double, 3> mode_weights = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  // emit every record once per mode instead of assigning one mode each
  bool duplicate_all_modes = false;
  // serialized inputs longer than this many bytes are dropped with a warning
  std::size_t char_budget = 2000;
  // the duplication set is off by default; it did not help in practice
  std::vector<SyntheticCategory> categories = {
      SyntheticCategory::Empty,         SyntheticCategory::Gibberish,
      SyntheticCategory::Unrelated,     SyntheticCategory::Undertranslation,
      SyntheticCategory::MissingPunct,  SyntheticCategory::RefMatch,
  };
  std::uint64_t seed = 0;
};

// Builds a training mixture.
//   stage 1: `records` must be aggregated DA_Z; targets are the negated,
//            clipped z-scores.
//   stage 2: `records` must be MQM; `da_records` (optional DA_RAW pool) are
//            rescaled onto [0,25] and mixed in at 1 : da_mqm_ratio.
// Synthetic examples are mixed in per category at 1 : synthetic_ratio
// relative to the real records in the final mixture, down- or up-sampled
// deterministically from the spec seed. Output order is a seeded shuffle.
std::vector<TrainingRecord> assemble(
    const std::vector<RatedSegment>& records,
    const std::vector<SyntheticExample>& synthetic, const MixtureSpec& spec,
    const std::vector<RatedSegment>& da_records = {},
    Warnings* warnings = nullptr);

// JSONL with a header object carrying the spec and a format version;
// rows are {"input":..., "target":..., "mode":..., "stage":...,
// "provenance":...}.
void save_mixture(const std::vector<TrainingRecord>& mixture,
                  const MixtureSpec& spec, const std::string& path);

std::vector<TrainingRecord> load_mixture(const std::string& path,
                                         MixtureSpec* spec_out = nullptr);

}  // namespace mteval
