#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mteval/error.hpp"
#include "mteval/types.hpp"

namespace mteval {

struct SystemScore {
  std::string system_id;
  double human = 0.0;   // mean human score over the joined segments
  double metric = 0.0;  // mean metric score over the joined segments
};

struct TieThreshold {
  double epsilon = 0.0;
  double achieved_accuracy = 0.0;
};

// All translations of one source segment: (human, metric) per system.
struct SegGroup {
  std::string segment_id;
  std::vector<std::pair<double, double>> entries;
};

struct EvalReport {
  LanguagePair lp;
  double seg_acc = 0.0;      // group-by-item pairwise accuracy at tie.epsilon
  double seg_pearson = 0.0;  // no-grouping Pearson
  double sys_acc = 0.0;
  double sys_pearson = 0.0;
  TieThreshold tie;
  std::size_t n_segments = 0;
  std::size_t n_systems = 0;
};

double pearson(std::span<const double> xs, std::span<const double> ys);

// Mean human and mean metric score per system over the joined segments.
// Ratings with the same (segment_id, system_id) are averaged first.
std::vector<SystemScore> system_scores(const std::vector<RatedSegment>& ratings,
                                       const ScoreSet& scores,
                                       Warnings* warnings = nullptr);

// Fraction of system pairs ranked the same by metric and human after
// orientation alignment. Pairs with tied human scores leave the
// denominator; metric ties count as incorrect.
double sys_pairwise_accuracy(const std::vector<SystemScore>& systems,
                             Orientation human_orient,
                             Orientation metric_orient);

std::vector<SegGroup> make_groups(const std::vector<RatedSegment>& ratings,
                                  const ScoreSet& scores,
                                  Warnings* warnings = nullptr);

// Group-by-item pairwise accuracy: a pair is correct when the humans tie
// and the metric difference is within epsilon, or the humans do not tie,
// the metric difference exceeds epsilon and the orders agree. Group
// accuracies are averaged unweighted over groups with at least one pair.
double seg_pairwise_accuracy(const std::vector<SegGroup>& groups,
                             double epsilon, Orientation human_orient,
                             Orientation metric_orient);

// Sweeps {0} + all within-group absolute metric differences + midpoints
// between consecutive distinct differences; picks the threshold with the
// best accuracy, preferring smaller epsilon on ties.
TieThreshold calibrate_ties(const std::vector<SegGroup>& groups,
                            Orientation human_orient,
                            Orientation metric_orient);

// Pearson over the flat joined (human, metric) list, both sides aligned to
// higher-is-better first.
double no_grouping_pearson(const std::vector<RatedSegment>& ratings,
                           const ScoreSet& scores,
                           Warnings* warnings = nullptr);

// The full per-language-pair report: calibrated segment accuracy,
// no-grouping Pearson, system pairwise accuracy and system Pearson.
EvalReport evaluate(const std::vector<RatedSegment>& ratings,
                    const ScoreSet& scores, Warnings* warnings = nullptr);

void save_reports(const std::vector<EvalReport>& reports,
                  const std::string& path);

std::vector<EvalReport> load_reports(const std::string& path);

// Aligned text table: one row per variant, language pairs as columns,
// a segment-level block then a system-level block. Values in percent.
std::string render_report_table(
    const std::vector<std::pair<std::string, std::vector<EvalReport>>>&
        variants,
    bool pearson = false);

}  // namespace mteval
