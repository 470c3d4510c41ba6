#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mteval/baseline.hpp"
#include "mteval/synthgen.hpp"
#include "mteval/types.hpp"

namespace mteval {

enum class PairSide { Original, Synthetic };

std::string to_string(PairSide side);
PairSide pair_side_from_string(std::string_view s);

struct SideText {
  std::string source;
  std::string hypothesis;
  std::optional<std::string> reference;
};

// One (original, corrupted) test pair. The synthetic side is the better
// translation only in the reference-matching category, where the metric is
// expected to prefer the reference over the original MT output. For the
// missing-punctuation category the original side's hypothesis is the
// reference itself, since the corruption was built from the reference.
struct ChallengePair {
  std::string pair_id;
  SyntheticCategory category = SyntheticCategory::Empty;
  LanguagePair lp;
  PairSide good_side = PairSide::Original;
  SideText original;
  SideText synthetic;
  std::string origin_segment_id;
};

struct CategoryResult {
  std::size_t n = 0;
  double accuracy = 0.0;
  double mean_diff = 0.0;  // good - bad, aligned so positive means correct
  bool advisory = false;   // REF_MATCH: a perfect score is not always right
};

struct ChallengeReport {
  std::map<SyntheticCategory, CategoryResult> per_category;
};

// Runs the synthetic sampling plan over `records` and pairs each corrupted
// example with its original counterpart.
std::vector<ChallengePair> build_challenge(
    const std::vector<RatedSegment>& records, std::uint64_t seed,
    const SynthConfig& config = {}, Warnings* warnings = nullptr);

// Metric scores for both sides of each pair, keyed by pair id.
struct ChallengeScores {
  Orientation orientation = Orientation::LowerBetter;
  std::map<std::pair<std::string, PairSide>, double> scores;
};

// A pair counts as correct when the good side's score is strictly better
// after orientation alignment; ties are incorrect. Pairs missing a score
// on either side are excluded with a warning.
ChallengeReport evaluate_challenge(const std::vector<ChallengePair>& pairs,
                                   const ChallengeScores& scores,
                                   Warnings* warnings = nullptr);

// Scores both sides of every pair with the lexical baseline.
ChallengeScores baseline_challenge_scores(
    const std::vector<ChallengePair>& pairs, const BaselineConfig& config = {});

void save_challenge(const std::vector<ChallengePair>& pairs,
                    const std::string& path);
std::vector<ChallengePair> load_challenge(const std::string& path);

void save_challenge_scores(const ChallengeScores& scores,
                           const std::string& path);
ChallengeScores load_challenge_scores(const std::string& path);

void save_challenge_report(const ChallengeReport& report,
                           const std::string& path);

// Seven-column text table of per-category accuracies.
std::string render_challenge_table(const ChallengeReport& report);

}  // namespace mteval
