#pragma once

#include <vector>

#include "mteval/error.hpp"
#include "mteval/types.hpp"

namespace mteval {

enum class TargetScale {
  Stage1,  // [-1, 1], lower is better
  Mqm,     // [0, 25], lower is better
};

struct TargetScore {
  double value = 0.0;
  TargetScale scale = TargetScale::Stage1;

  friend bool operator==(const TargetScore&, const TargetScore&) = default;
};

// Per-rater z-normalization of DA_RAW records (population standard
// deviation). Raters whose scores have zero variance get z = 0 and a
// warning. Records come back in input order with rating_kind DA_Z.
std::vector<RatedSegment> znormalize_per_rater(
    const std::vector<RatedSegment>& records, Warnings* warnings = nullptr);

// One record per (lp, segment_id, system_id): the unweighted mean over
// raters. rater_id is cleared. All records must share a rating_kind.
std::vector<RatedSegment> aggregate_per_segment(
    const std::vector<RatedSegment>& records);

// Aggregated z-score -> first-stage regression target: negated and
// clipped to [-1, 1], so that lower means better.
TargetScore to_stage1_target(double z_score);

// DA [0,100] (higher better) -> MQM [0,25] (lower better):
// 25 * (1 - da/100). The unique affine map sending best to best and
// worst to worst across the two scales.
TargetScore da_to_mqm(double da_raw);

// MQM-scale label [0,25] -> first-stage scale [-1,1], both lower-better.
// Used when synthetic examples join a first-stage mixture.
TargetScore mqm_label_to_stage1(double label);

}  // namespace mteval
