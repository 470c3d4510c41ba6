#include "mteval/selection.hpp"

#include <algorithm>

#include "mteval/error.hpp"

namespace mteval {

CheckpointEval CheckpointEval::from_reports(
    std::string id, const std::vector<EvalReport>& reports) {
  CheckpointEval eval;
  eval.checkpoint_id = std::move(id);
  for (const auto& r : reports) {
    eval.seg_acc[r.lp.str()] = r.seg_acc;
    eval.sys_acc[r.lp.str()] = r.sys_acc;
  }
  return eval;
}

double score_checkpoint(const CheckpointEval& eval,
                        const std::vector<std::string>& lps) {
  double seg_sum = 0.0;
  double sys_sum = 0.0;
  for (const auto& lp : lps) {
    auto seg = eval.seg_acc.find(lp);
    auto sys = eval.sys_acc.find(lp);
    if (seg == eval.seg_acc.end() || sys == eval.sys_acc.end()) {
      throw ValidationError("checkpoint '" + eval.checkpoint_id +
                            "' has no accuracies for language pair " + lp);
    }
    seg_sum += seg->second;
    sys_sum += sys->second;
  }
  return 0.75 * seg_sum + 0.25 * sys_sum;
}

std::string select_best(const std::vector<CheckpointEval>& evals,
                        const std::vector<std::string>& lps) {
  if (evals.empty()) {
    throw ValidationError("no checkpoint evaluations to select from");
  }
  return rank_checkpoints(evals, lps).front().first;
}

std::vector<std::pair<std::string, double>> rank_checkpoints(
    const std::vector<CheckpointEval>& evals,
    const std::vector<std::string>& lps) {
  std::vector<std::pair<std::string, double>> ranked;
  ranked.reserve(evals.size());
  for (const auto& e : evals) {
    ranked.emplace_back(e.checkpoint_id, score_checkpoint(e, lps));
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return ranked;
}

}  // namespace mteval
