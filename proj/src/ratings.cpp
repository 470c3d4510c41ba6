#include "mteval/ratings.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace mteval {

std::vector<RatedSegment> znormalize_per_rater(
    const std::vector<RatedSegment>& records, Warnings* warnings) {
  std::map<std::string, std::vector<std::size_t>> by_rater;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (r.rating_kind != RatingKind::DaRaw) {
      throw ValidationError("znormalize_per_rater expects DA_RAW records, "
                            "got " +
                            to_string(r.rating_kind) + " (segment " +
                            r.segment_id + ")");
    }
    if (!r.rater_id) {
      throw ValidationError("record without rater_id cannot be z-normalized "
                            "(segment " +
                            r.segment_id + ", system " + r.system_id + ")");
    }
    by_rater[*r.rater_id].push_back(i);
  }

  std::vector<RatedSegment> out = records;
  for (const auto& [rater, idxs] : by_rater) {
    double sum = 0.0;
    for (auto i : idxs) sum += records[i].score;
    const double mean = sum / static_cast<double>(idxs.size());
    double var = 0.0;
    for (auto i : idxs) {
      const double d = records[i].score - mean;
      var += d * d;
    }
    var /= static_cast<double>(idxs.size());
    const double stddev = std::sqrt(var);
    if (stddev == 0.0) {
      warn(warnings, "rater '" + rater + "' has zero score variance over " +
                         std::to_string(idxs.size()) +
                         " ratings; assigning z = 0");
      for (auto i : idxs) out[i].score = 0.0;
    } else {
      for (auto i : idxs) out[i].score = (records[i].score - mean) / stddev;
    }
  }
  for (auto& r : out) r.rating_kind = RatingKind::DaZ;
  return out;
}

std::vector<RatedSegment> aggregate_per_segment(
    const std::vector<RatedSegment>& records) {
  if (records.empty()) return {};
  const RatingKind kind = records.front().rating_kind;
  for (const auto& r : records) {
    if (r.rating_kind != kind) {
      throw ValidationError(
          "aggregate_per_segment requires a single rating_kind, found both " +
          to_string(kind) + " and " + to_string(r.rating_kind));
    }
  }

  using Key = std::tuple<std::string, std::string, std::string>;
  std::map<Key, std::pair<std::size_t, double>> groups;  // first index, sum
  std::map<Key, std::size_t> counts;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    Key key{r.lp.str(), r.segment_id, r.system_id};
    auto [it, inserted] = groups.emplace(key, std::make_pair(i, r.score));
    if (!inserted) it->second.second += r.score;
    counts[key] += 1;
  }

  // keep first-appearance order
  std::vector<RatedSegment> out;
  out.reserve(groups.size());
  std::vector<std::pair<std::size_t, Key>> order;
  order.reserve(groups.size());
  for (const auto& [key, v] : groups) order.emplace_back(v.first, key);
  std::sort(order.begin(), order.end());
  for (const auto& [first_idx, key] : order) {
    RatedSegment agg = records[first_idx];
    agg.score = groups[key].second / static_cast<double>(counts[key]);
    agg.rater_id.reset();
    out.push_back(std::move(agg));
  }
  return out;
}

TargetScore to_stage1_target(double z_score) {
  if (!std::isfinite(z_score)) {
    throw ValidationError("stage-1 target input must be finite");
  }
  const double v = std::clamp(-z_score, -1.0, 1.0);
  return {v, TargetScale::Stage1};
}

TargetScore da_to_mqm(double da_raw) {
  if (!std::isfinite(da_raw) || da_raw < 0.0 || da_raw > 100.0) {
    throw ValidationError("DA score " + std::to_string(da_raw) +
                          " outside [0,100]");
  }
  return {25.0 * (1.0 - da_raw / 100.0), TargetScale::Mqm};
}

TargetScore mqm_label_to_stage1(double label) {
  if (!std::isfinite(label) || label < 0.0 || label > 25.0) {
    throw ValidationError("MQM label " + std::to_string(label) +
                          " outside [0,25]");
  }
  return {label / 12.5 - 1.0, TargetScale::Stage1};
}

}  // namespace mteval
