#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mteval/error.hpp"
#include "mteval/rng.hpp"
#include "mteval/types.hpp"

namespace mteval {

// The seven failure-mode categories and their label rules:
//   EMPTY, GIBBERISH, UNRELATED -> 25
//   DUPLICATION                 -> 25 (configurable)
//   UNDERTRANSLATION            -> [5, 25], proportional to removed text
//   MISSING_PUNCT               -> 1
//   REF_MATCH                   -> 0
enum class SyntheticCategory {
  Empty,
  Gibberish,
  Unrelated,
  Undertranslation,
  Duplication,
  MissingPunct,
  RefMatch,
};

inline constexpr SyntheticCategory kAllCategories[] = {
    SyntheticCategory::Empty,        SyntheticCategory::Gibberish,
    SyntheticCategory::Unrelated,    SyntheticCategory::Undertranslation,
    SyntheticCategory::Duplication,  SyntheticCategory::MissingPunct,
    SyntheticCategory::RefMatch,
};

std::string to_string(SyntheticCategory c);
SyntheticCategory category_from_string(std::string_view s);

struct SyntheticExample {
  std::string origin_segment_id;
  LanguagePair lp;
  SyntheticCategory category = SyntheticCategory::Empty;
  std::string source;
  std::string hypothesis;
  std::optional<std::string> reference;
  double label = 0.0;  // MQM scale, lower is better
  std::uint64_t seed_trace = 0;
};

// Whitespace tokens of every reference with the given target language,
// kept as a multiset (frequencies preserved, in corpus order).
struct TargetVocabulary {
  std::string target_lang;
  std::vector<std::string> words;

  std::map<std::string, std::size_t> counts() const;
};

// Distinct reference texts sharing a target language, in first-appearance
// order. Candidate pool for the unrelated-translation generator.
struct ReferencePool {
  std::string target_lang;
  std::vector<std::string> refs;
};

TargetVocabulary build_vocabulary(const std::vector<RatedSegment>& records,
                                  const std::string& target_lang);

ReferencePool build_reference_pool(const std::vector<RatedSegment>& records,
                                   const std::string& target_lang);

struct SynthConfig {
  // Up to this many origin records per (category, language pair); the
  // missing-punctuation category instead samples per symbol across pairs.
  std::size_t per_lp = 500;
  std::size_t per_symbol = 250;
  // The 11 end-punctuation symbols the missing-punct generator recognizes.
  std::vector<std::string> punct_symbols = {
      ".", "?",  "!",  ")",  "]", "\"",
      "'", "\xE3\x80\x82" /* 。 */, "\xEF\xBC\x9F" /* ？ */,
      "\xEF\xBC\x81" /* ！ */, "\xC2\xBB" /* » */};
  double duplication_label = 25.0;
  std::vector<SyntheticCategory> categories{std::begin(kAllCategories),
                                            std::end(kAllCategories)};
};

// --- single-record generators ---------------------------------------------
// Each is deterministic given (record, rng state). Generators that cannot
// apply to a record return nullopt (the plan skips it with a warning).

SyntheticExample gen_empty(const RatedSegment& record);

SyntheticExample gen_gibberish(const RatedSegment& record,
                               const TargetVocabulary& vocab, Rng& rng);

// Picks a pool reference within +/-20% of the record's reference length
// (code points), doubling the window until a candidate exists. Never
// returns the record's own reference text.
SyntheticExample gen_unrelated(const RatedSegment& record,
                               const ReferencePool& pool, Rng& rng);

// Multi-sentence hypotheses lose one uniformly chosen sentence; otherwise
// a uniform 20-80% of words is cut from the end. Label is
// clip(25 * removed_fraction, 5, 25). Single-word hypotheses are skipped.
std::optional<SyntheticExample> gen_undertranslation(
    const RatedSegment& record, Rng& rng);

SyntheticExample gen_duplication(const RatedSegment& record,
                                 double label = 25.0);

// Reference minus its final punctuation symbol; skips records whose
// reference does not end in one of the configured symbols.
std::optional<SyntheticExample> gen_missing_punct(
    const RatedSegment& record, const std::vector<std::string>& symbols);

SyntheticExample gen_refmatch(const RatedSegment& record);

double undertranslation_label(double removed_fraction);

// --- sampling plan ---------------------------------------------------------

struct SynthPlanResult {
  std::vector<SyntheticExample> examples;
  // index into the input records of each example's origin, in lockstep
  // with `examples`
  std::vector<std::size_t> origins;
  // (category, lp) -> generated count; for MISSING_PUNCT the key's second
  // element is the punctuation symbol instead of a language pair.
  std::map<std::pair<std::string, std::string>, std::size_t> counts;
  Warnings warnings;
};

// Per non-punctuation category, up to `per_lp` origin records sampled
// uniformly without replacement within each language pair; missing
// punctuation stratifies over the symbols, up to `per_symbol` each,
// pooled across pairs. Fully deterministic in (records, seed).
SynthPlanResult sample_plan(const std::vector<RatedSegment>& records,
                            std::uint64_t seed, const SynthConfig& config = {});

void save_synthetic(const std::vector<SyntheticExample>& examples,
                    const std::string& path);

std::vector<SyntheticExample> load_synthetic(const std::string& path);

}  // namespace mteval
