#include "mteval/challenge.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mteval/error.hpp"

namespace mteval {

namespace {

using nlohmann::json;

}  // namespace

std::string to_string(PairSide side) {
  return side == PairSide::Original ? "ORIGINAL" : "SYNTHETIC";
}

PairSide pair_side_from_string(std::string_view s) {
  if (s == "ORIGINAL") return PairSide::Original;
  if (s == "SYNTHETIC") return PairSide::Synthetic;
  throw ValidationError("unknown pair side '" + std::string(s) + "'");
}

std::vector<ChallengePair> build_challenge(
    const std::vector<RatedSegment>& records, std::uint64_t seed,
    const SynthConfig& config, Warnings* warnings) {
  auto plan = sample_plan(records, seed, config);
  if (warnings != nullptr) {
    warnings->insert(warnings->end(), plan.warnings.begin(),
                     plan.warnings.end());
  }

  std::vector<ChallengePair> pairs;
  pairs.reserve(plan.examples.size());
  for (std::size_t i = 0; i < plan.examples.size(); ++i) {
    const auto& ex = plan.examples[i];
    const auto& origin = records[plan.origins[i]];

    ChallengePair pair;
    char id[16];
    std::snprintf(id, sizeof(id), "pair-%06zu", i);
    pair.pair_id = id;
    pair.category = ex.category;
    pair.lp = ex.lp;
    pair.origin_segment_id = ex.origin_segment_id;
    pair.good_side = ex.category == SyntheticCategory::RefMatch
                         ? PairSide::Synthetic
                         : PairSide::Original;

    // the missing-punctuation corruption is built from the reference, so
    // the uncorrupted reference is the original side
    const std::string& original_hyp =
        ex.category == SyntheticCategory::MissingPunct ? *origin.reference
                                                       : origin.hypothesis;
    pair.original = {origin.source, original_hyp, origin.reference};
    pair.synthetic = {ex.source, ex.hypothesis, ex.reference};
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

ChallengeReport evaluate_challenge(const std::vector<ChallengePair>& pairs,
                                   const ChallengeScores& scores,
                                   Warnings* warnings) {
  const double sign =
      scores.orientation == Orientation::HigherBetter ? 1.0 : -1.0;

  struct Acc {
    std::size_t n = 0;
    std::size_t correct = 0;
    double diff_sum = 0.0;
  };
  std::map<SyntheticCategory, Acc> acc;
  std::size_t missing = 0;

  for (const auto& pair : pairs) {
    auto orig = scores.scores.find({pair.pair_id, PairSide::Original});
    auto synth = scores.scores.find({pair.pair_id, PairSide::Synthetic});
    if (orig == scores.scores.end() || synth == scores.scores.end()) {
      ++missing;
      continue;
    }
    const double good = pair.good_side == PairSide::Original ? orig->second
                                                             : synth->second;
    const double bad = pair.good_side == PairSide::Original ? synth->second
                                                            : orig->second;
    const double diff = sign * (good - bad);
    auto& a = acc[pair.category];
    a.n += 1;
    if (diff > 0.0) a.correct += 1;
    a.diff_sum += diff;
  }
  if (missing > 0) {
    warn(warnings, std::to_string(missing) +
                       " pairs were missing a score on at least one side "
                       "and were excluded");
  }

  ChallengeReport report;
  for (auto cat : kAllCategories) {
    CategoryResult r;
    r.advisory = cat == SyntheticCategory::RefMatch;
    auto it = acc.find(cat);
    if (it != acc.end() && it->second.n > 0) {
      r.n = it->second.n;
      r.accuracy = static_cast<double>(it->second.correct) /
                   static_cast<double>(it->second.n);
      r.mean_diff = it->second.diff_sum / static_cast<double>(it->second.n);
    }
    report.per_category[cat] = r;
  }
  return report;
}

ChallengeScores baseline_challenge_scores(
    const std::vector<ChallengePair>& pairs, const BaselineConfig& config) {
  ChallengeScores out;
  out.orientation = Orientation::LowerBetter;
  for (const auto& pair : pairs) {
    if (pair.original.reference) {
      out.scores[{pair.pair_id, PairSide::Original}] = baseline_score(
          pair.original.hypothesis, *pair.original.reference, config);
    }
    if (pair.synthetic.reference) {
      out.scores[{pair.pair_id, PairSide::Synthetic}] = baseline_score(
          pair.synthetic.hypothesis, *pair.synthetic.reference, config);
    }
  }
  return out;
}

namespace {

json side_to_json(const SideText& side) {
  json j;
  j["source"] = side.source;
  j["hypothesis"] = side.hypothesis;
  if (side.reference) j["reference"] = *side.reference;
  return j;
}

SideText side_from_json(const json& j) {
  SideText side;
  side.source = j.at("source").get<std::string>();
  side.hypothesis = j.at("hypothesis").get<std::string>();
  if (j.contains("reference")) side.reference = j["reference"].get<std::string>();
  return side;
}

}  // namespace

void save_challenge(const std::vector<ChallengePair>& pairs,
                    const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write challenge file: " + path);
  for (const auto& pair : pairs) {
    json j;
    j["pair_id"] = pair.pair_id;
    j["category"] = to_string(pair.category);
    j["lp"] = pair.lp.str();
    j["good_side"] = to_string(pair.good_side);
    j["origin_segment_id"] = pair.origin_segment_id;
    j["original"] = side_to_json(pair.original);
    j["synthetic"] = side_to_json(pair.synthetic);
    out << j.dump() << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

std::vector<ChallengePair> load_challenge(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open challenge file: " + path);
  std::vector<ChallengePair> pairs;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ValidationError("row " + std::to_string(row) +
                            ": invalid JSON: " + e.what());
    }
    ChallengePair pair;
    pair.pair_id = j.at("pair_id").get<std::string>();
    pair.category = category_from_string(j.at("category").get<std::string>());
    pair.lp = parse_lp(j.at("lp").get<std::string>());
    pair.good_side = pair_side_from_string(j.at("good_side").get<std::string>());
    pair.origin_segment_id = j.at("origin_segment_id").get<std::string>();
    pair.original = side_from_json(j.at("original"));
    pair.synthetic = side_from_json(j.at("synthetic"));
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

void save_challenge_scores(const ChallengeScores& scores,
                           const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write challenge score file: " + path);
  json header;
  header["orientation"] = to_string(scores.orientation);
  out << header.dump() << '\n';
  for (const auto& [key, score] : scores.scores) {
    json j;
    j["pair_id"] = key.first;
    j["side"] = to_string(key.second);
    j["score"] = score;
    out << j.dump() << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

ChallengeScores load_challenge_scores(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open challenge score file: " + path);
  ChallengeScores out;
  std::string line;
  std::size_t row = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw ValidationError("row " + std::to_string(row) +
                            ": invalid JSON: " + e.what());
    }
    if (!saw_header) {
      if (!j.contains("orientation")) {
        throw ValidationError(
            "challenge score files must start with a header object "
            "declaring 'orientation'");
      }
      out.orientation =
          orientation_from_string(j["orientation"].get<std::string>());
      saw_header = true;
      continue;
    }
    auto key = std::make_pair(
        j.at("pair_id").get<std::string>(),
        pair_side_from_string(j.at("side").get<std::string>()));
    if (!out.scores.emplace(key, j.at("score").get<double>()).second) {
      throw ValidationError("row " + std::to_string(row) +
                            ": duplicate (pair_id, side) key (" + key.first +
                            ", " + to_string(key.second) + ")");
    }
  }
  if (!saw_header) {
    throw ValidationError("challenge score file is missing its header");
  }
  return out;
}

void save_challenge_report(const ChallengeReport& report,
                           const std::string& path) {
  json arr = json::array();
  for (const auto& [cat, r] : report.per_category) {
    json j;
    j["category"] = to_string(cat);
    j["n"] = r.n;
    j["accuracy"] = r.accuracy;
    j["mean_diff"] = r.mean_diff;
    j["advisory"] = r.advisory;
    arr.push_back(j);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write challenge report: " + path);
  out << json{{"categories", arr}}.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

std::string render_challenge_table(const ChallengeReport& report) {
  std::ostringstream os;
  const std::size_t label_w = 17;
  const std::size_t col_w = 18;
  auto pad = [&](const std::string& s, std::size_t w) {
    os << s;
    for (std::size_t i = s.size(); i < w; ++i) os << ' ';
  };
  pad("", label_w);
  for (auto cat : kAllCategories) pad(to_string(cat), col_w);
  os << '\n';
  pad("accuracy (%)", label_w);
  for (auto cat : kAllCategories) {
    const auto& r = report.per_category.at(cat);
    char buf[32];
    if (r.n == 0) {
      std::snprintf(buf, sizeof(buf), "n/a");
    } else {
      std::snprintf(buf, sizeof(buf), "%.2f%s", 100.0 * r.accuracy,
                    r.advisory ? "*" : "");
    }
    pad(buf, col_w);
  }
  os << '\n';
  pad("mean score diff", label_w);
  for (auto cat : kAllCategories) {
    const auto& r = report.per_category.at(cat);
    char buf[32];
    if (r.n == 0) {
      std::snprintf(buf, sizeof(buf), "n/a");
    } else {
      std::snprintf(buf, sizeof(buf), "%.3f", r.mean_diff);
    }
    pad(buf, col_w);
  }
  os << '\n';
  pad("pairs", label_w);
  for (auto cat : kAllCategories) {
    pad(std::to_string(report.per_category.at(cat).n), col_w);
  }
  os << '\n';
  os << "* advisory: a candidate translation may legitimately beat the "
        "reference\n";
  return os.str();
}

}  // namespace mteval
