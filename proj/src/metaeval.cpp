#include "mteval/metaeval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace mteval {

namespace {

using nlohmann::json;

double sign_of(Orientation o) {
  return o == Orientation::HigherBetter ? 1.0 : -1.0;
}

struct Joined {
  std::string segment_id;
  std::string system_id;
  double human;
  double metric;
};

// inner join on (segment_id, system_id); duplicate ratings are averaged
std::vector<Joined> join(const std::vector<RatedSegment>& ratings,
                         const ScoreSet& scores, Warnings* warnings) {
  if (ratings.empty()) throw ValidationError("no ratings to evaluate");

  const RatingKind kind = ratings.front().rating_kind;
  std::map<std::pair<std::string, std::string>, std::pair<double, std::size_t>>
      human;
  std::size_t matching_lp = 0;
  for (const auto& r : ratings) {
    if (r.rating_kind != kind) {
      throw ValidationError("ratings mix " + to_string(kind) + " and " +
                            to_string(r.rating_kind) +
                            "; evaluate one kind at a time");
    }
    if (r.lp != scores.lp) continue;
    ++matching_lp;
    auto& acc = human[{r.segment_id, r.system_id}];
    acc.first += r.score;
    acc.second += 1;
  }
  if (matching_lp == 0) {
    throw ValidationError("no ratings for language pair " + scores.lp.str());
  }

  std::vector<Joined> joined;
  std::size_t unmatched_scores = 0;
  std::set<std::pair<std::string, std::string>> joined_keys;
  for (const auto& e : scores.entries) {
    auto it = human.find({e.segment_id, e.system_id});
    if (it == human.end()) {
      ++unmatched_scores;
      continue;
    }
    joined.push_back({e.segment_id, e.system_id,
                      it->second.first / static_cast<double>(it->second.second),
                      e.score});
    joined_keys.insert(it->first);
  }
  if (unmatched_scores > 0) {
    warn(warnings, std::to_string(unmatched_scores) +
                       " metric scores had no matching rating and were "
                       "ignored");
  }
  const std::size_t unmatched_ratings = human.size() - joined_keys.size();
  if (unmatched_ratings > 0) {
    warn(warnings, std::to_string(unmatched_ratings) +
                       " rated segments had no metric score and were ignored");
  }
  if (joined.empty()) {
    throw ValidationError("ratings and scores do not join on any "
                          "(segment_id, system_id)");
  }
  return joined;
}

Orientation human_orientation(const std::vector<RatedSegment>& ratings) {
  return orientation_of(ratings.front().rating_kind);
}

}  // namespace

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw ValidationError("pearson: input lengths differ");
  }
  const std::size_t n = xs.size();
  if (n < 2) throw ValidationError("pearson requires at least 2 points");

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);

  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0) throw ValidationError("pearson: first side has zero variance");
  if (syy == 0.0) {
    throw ValidationError("pearson: second side has zero variance");
  }
  return sxy / std::sqrt(sxx * syy);
}

std::vector<SystemScore> system_scores(const std::vector<RatedSegment>& ratings,
                                       const ScoreSet& scores,
                                       Warnings* warnings) {
  auto joined = join(ratings, scores, warnings);

  std::map<std::string, std::set<std::string>> segs_per_system;
  std::map<std::string, std::pair<double, double>> sums;
  std::map<std::string, std::size_t> counts;
  for (const auto& j : joined) {
    sums[j.system_id].first += j.human;
    sums[j.system_id].second += j.metric;
    counts[j.system_id] += 1;
    segs_per_system[j.system_id].insert(j.segment_id);
  }

  bool balanced = true;
  const auto& first_set = segs_per_system.begin()->second;
  for (const auto& [sys, segs] : segs_per_system) {
    if (segs != first_set) {
      balanced = false;
      break;
    }
  }
  if (!balanced) {
    warn(warnings,
         "systems are scored on different segment sets; system means are "
         "not directly comparable");
  }

  std::vector<SystemScore> out;
  for (const auto& [sys, sum] : sums) {
    const auto n = static_cast<double>(counts[sys]);
    out.push_back({sys, sum.first / n, sum.second / n});
  }
  return out;
}

double sys_pairwise_accuracy(const std::vector<SystemScore>& systems,
                             Orientation human_orient,
                             Orientation metric_orient) {
  if (systems.size() < 2) {
    throw ValidationError("pairwise accuracy requires at least 2 systems");
  }
  const double sh = sign_of(human_orient);
  const double sm = sign_of(metric_orient);

  std::size_t total = 0;
  std::size_t correct = 0;
  for (std::size_t i = 0; i < systems.size(); ++i) {
    for (std::size_t j = i + 1; j < systems.size(); ++j) {
      const double dh = sh * (systems[i].human - systems[j].human);
      if (dh == 0.0) continue;  // human ties leave the denominator
      ++total;
      const double dm = sm * (systems[i].metric - systems[j].metric);
      if (dm != 0.0 && (dh > 0) == (dm > 0)) ++correct;
    }
  }
  if (total == 0) {
    throw ValidationError("all system pairs have tied human scores");
  }
  return static_cast<double>(correct) / static_cast<double>(total);
}

std::vector<SegGroup> make_groups(const std::vector<RatedSegment>& ratings,
                                  const ScoreSet& scores, Warnings* warnings) {
  auto joined = join(ratings, scores, warnings);
  std::map<std::string, SegGroup> groups;
  for (const auto& j : joined) {
    auto& g = groups[j.segment_id];
    g.segment_id = j.segment_id;
    g.entries.emplace_back(j.human, j.metric);
  }
  std::vector<SegGroup> out;
  out.reserve(groups.size());
  for (auto& [id, g] : groups) out.push_back(std::move(g));
  return out;
}

double seg_pairwise_accuracy(const std::vector<SegGroup>& groups,
                             double epsilon, Orientation human_orient,
                             Orientation metric_orient) {
  if (epsilon < 0.0) throw ValidationError("epsilon must be >= 0");
  const double sh = sign_of(human_orient);
  const double sm = sign_of(metric_orient);

  double acc_sum = 0.0;
  std::size_t groups_with_pairs = 0;
  for (const auto& g : groups) {
    const auto& e = g.entries;
    if (e.size() < 2) continue;
    std::size_t total = 0;
    std::size_t correct = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (std::size_t j = i + 1; j < e.size(); ++j) {
        ++total;
        const double dh = sh * (e[i].first - e[j].first);
        const double dm = sm * (e[i].second - e[j].second);
        const bool metric_tie = std::abs(dm) <= epsilon;
        if (dh == 0.0) {
          if (metric_tie) ++correct;
        } else if (!metric_tie && (dh > 0) == (dm > 0)) {
          ++correct;
        }
      }
    }
    acc_sum += static_cast<double>(correct) / static_cast<double>(total);
    ++groups_with_pairs;
  }
  if (groups_with_pairs == 0) {
    throw ValidationError("no segment group has more than one translation");
  }
  return acc_sum / static_cast<double>(groups_with_pairs);
}

TieThreshold calibrate_ties(const std::vector<SegGroup>& groups,
                            Orientation human_orient,
                            Orientation metric_orient) {
  std::set<double> diffs;
  bool any_pair = false;
  for (const auto& g : groups) {
    const auto& e = g.entries;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (std::size_t j = i + 1; j < e.size(); ++j) {
        diffs.insert(std::abs(e[i].second - e[j].second));
        any_pair = true;
      }
    }
  }
  if (!any_pair) {
    throw ValidationError("tie calibration needs at least one translation "
                          "pair");
  }

  std::vector<double> candidates;
  candidates.push_back(0.0);
  candidates.insert(candidates.end(), diffs.begin(), diffs.end());
  const std::vector<double> sorted(diffs.begin(), diffs.end());
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
    candidates.push_back((sorted[i] + sorted[i + 1]) / 2.0);
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  TieThreshold best{0.0, -1.0};
  for (double eps : candidates) {
    const double acc =
        seg_pairwise_accuracy(groups, eps, human_orient, metric_orient);
    if (acc > best.achieved_accuracy) {
      best = {eps, acc};  // candidates ascend, so ties keep the smaller eps
    }
  }
  return best;
}

double no_grouping_pearson(const std::vector<RatedSegment>& ratings,
                           const ScoreSet& scores, Warnings* warnings) {
  auto joined = join(ratings, scores, warnings);
  const double sh = sign_of(human_orientation(ratings));
  const double sm = sign_of(scores.orientation);
  std::vector<double> xs, ys;
  xs.reserve(joined.size());
  ys.reserve(joined.size());
  for (const auto& j : joined) {
    xs.push_back(sh * j.human);
    ys.push_back(sm * j.metric);
  }
  return pearson(xs, ys);
}

EvalReport evaluate(const std::vector<RatedSegment>& ratings,
                    const ScoreSet& scores, Warnings* warnings) {
  const Orientation ho = human_orientation(ratings);
  const Orientation mo = scores.orientation;

  EvalReport report;
  report.lp = scores.lp;

  auto groups = make_groups(ratings, scores, warnings);
  report.n_segments = groups.size();
  report.tie = calibrate_ties(groups, ho, mo);
  report.seg_acc = report.tie.achieved_accuracy;
  report.seg_pearson = no_grouping_pearson(ratings, scores, nullptr);

  auto systems = system_scores(ratings, scores, nullptr);
  report.n_systems = systems.size();
  report.sys_acc = sys_pairwise_accuracy(systems, ho, mo);
  const double sh = sign_of(ho);
  const double sm = sign_of(mo);
  std::vector<double> hs, ms;
  for (const auto& s : systems) {
    hs.push_back(sh * s.human);
    ms.push_back(sm * s.metric);
  }
  report.sys_pearson = pearson(hs, ms);
  return report;
}

namespace {

json report_to_json(const EvalReport& r) {
  json j;
  j["lp"] = r.lp.str();
  j["seg_acc"] = r.seg_acc;
  j["seg_pearson"] = r.seg_pearson;
  j["sys_acc"] = r.sys_acc;
  j["sys_pearson"] = r.sys_pearson;
  j["tie"] = {{"epsilon", r.tie.epsilon},
              {"achieved_accuracy", r.tie.achieved_accuracy}};
  j["n_segments"] = r.n_segments;
  j["n_systems"] = r.n_systems;
  return j;
}

EvalReport report_from_json(const json& j) {
  EvalReport r;
  r.lp = parse_lp(j.at("lp").get<std::string>());
  r.seg_acc = j.at("seg_acc").get<double>();
  r.seg_pearson = j.at("seg_pearson").get<double>();
  r.sys_acc = j.at("sys_acc").get<double>();
  r.sys_pearson = j.at("sys_pearson").get<double>();
  r.tie.epsilon = j.at("tie").at("epsilon").get<double>();
  r.tie.achieved_accuracy = j.at("tie").at("achieved_accuracy").get<double>();
  r.n_segments = j.at("n_segments").get<std::size_t>();
  r.n_systems = j.at("n_systems").get<std::size_t>();
  return r;
}

}  // namespace

void save_reports(const std::vector<EvalReport>& reports,
                  const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write report file: " + path);
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r));
  out << arr.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

std::vector<EvalReport> load_reports(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open report file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("invalid report JSON in " + path + ": " + e.what());
  }
  std::vector<EvalReport> out;
  if (!j.is_array()) throw ValidationError("report file must hold an array");
  for (const auto& item : j) out.push_back(report_from_json(item));
  return out;
}

std::string render_report_table(
    const std::vector<std::pair<std::string, std::vector<EvalReport>>>&
        variants,
    bool pearson_table) {
  std::set<std::string> lp_set;
  for (const auto& [name, reports] : variants) {
    for (const auto& r : reports) lp_set.insert(r.lp.str());
  }
  const std::vector<std::string> lps(lp_set.begin(), lp_set.end());

  std::size_t name_w = 7;  // "variant"
  for (const auto& [name, _] : variants) name_w = std::max(name_w, name.size());

  std::ostringstream os;
  auto pad = [&](const std::string& s, std::size_t w) {
    os << s;
    for (std::size_t i = s.size(); i < w; ++i) os << ' ';
  };

  const std::string seg_label =
      pearson_table ? "segment-level Pearson" : "segment-level accuracy";
  const std::string sys_label =
      pearson_table ? "system-level Pearson" : "system-level accuracy";

  const std::size_t col_w = 9;
  const std::size_t block_w = std::max(seg_label.size() + 1,
                                       std::max(sys_label.size() + 1,
                                                lps.size() * col_w));

  pad("variant", name_w + 2);
  os << "| ";
  pad(seg_label, block_w);
  os << "| " << sys_label << '\n';

  pad("", name_w + 2);
  os << "| ";
  std::ostringstream lp_row;
  for (const auto& lp : lps) {
    lp_row << lp;
    for (std::size_t i = lp.size(); i < col_w; ++i) lp_row << ' ';
  }
  pad(lp_row.str(), block_w);
  os << "| " << lp_row.str() << '\n';

  for (const auto& [name, reports] : variants) {
    std::map<std::string, const EvalReport*> by_lp;
    for (const auto& r : reports) by_lp[r.lp.str()] = &r;
    auto block = [&](bool seg) {
      std::ostringstream row;
      for (const auto& lp : lps) {
        std::string cell = "-";
        auto it = by_lp.find(lp);
        if (it != by_lp.end()) {
          const EvalReport& r = *it->second;
          double v = seg ? (pearson_table ? r.seg_pearson : r.seg_acc)
                         : (pearson_table ? r.sys_pearson : r.sys_acc);
          char buf[32];
          std::snprintf(buf, sizeof(buf), "%.2f", 100.0 * v);
          cell = buf;
        }
        row << cell;
        for (std::size_t i = cell.size(); i < col_w; ++i) row << ' ';
      }
      return row.str();
    };
    pad(name, name_w + 2);
    os << "| ";
    pad(block(true), block_w);
    os << "| " << block(false) << '\n';
  }
  return os.str();
}

}  // namespace mteval
