#pragma once

#include <map>
#include <string>
#include <vector>

#include "mteval/metaeval.hpp"

namespace mteval {

inline const std::vector<std::string> kDefaultSelectionLps = {"en-de", "en-zh",
                                                              "zh-en"};

struct CheckpointEval {
  std::string checkpoint_id;
  std::map<std::string, double> seg_acc;  // language pair -> accuracy
  std::map<std::string, double> sys_acc;

  static CheckpointEval from_reports(std::string id,
                                     const std::vector<EvalReport>& reports);
};

// 3/4 * sum of segment accuracies + 1/4 * sum of system accuracies over
// the given language pairs. The system component is downweighted because
// its variance is larger.
double score_checkpoint(const CheckpointEval& eval,
                        const std::vector<std::string>& lps);

// Highest-scoring checkpoint; ties go to the lexicographically smallest id.
std::string select_best(const std::vector<CheckpointEval>& evals,
                        const std::vector<std::string>& lps);

// (checkpoint_id, score) sorted best first, same tie order as select_best.
std::vector<std::pair<std::string, double>> rank_checkpoints(
    const std::vector<CheckpointEval>& evals,
    const std::vector<std::string>& lps);

}  // namespace mteval
