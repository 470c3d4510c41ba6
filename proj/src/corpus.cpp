#include "mteval/corpus.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "mteval/error.hpp"

namespace mteval {

namespace {

using nlohmann::json;

const std::vector<std::string> kTsvColumns = {
    "lp",        "domain",     "year",  "segment_id",  "system_id", "rater_id",
    "source",    "hypothesis", "reference", "score", "rating_kind"};

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

double parse_score(const std::string& text, std::size_t row) {
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ValidationError("row " + std::to_string(row) +
                          ": field 'score' is not a number: '" + text + "'");
  }
  return value;
}

int parse_year(const std::string& text, std::size_t row) {
  int value = 0;
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ValidationError("row " + std::to_string(row) +
                          ": field 'year' is not an integer: '" + text + "'");
  }
  return value;
}

RatedSegment segment_from_tsv(const std::vector<std::string>& f,
                              std::size_t row) {
  RatedSegment seg;
  try {
    seg.lp = parse_lp(f[0]);
  } catch (const ValidationError& e) {
    throw ValidationError("row " + std::to_string(row) + ": field 'lp': " +
                          e.what());
  }
  if (!f[1].empty()) seg.domain = f[1];
  if (!f[2].empty()) seg.year = parse_year(f[2], row);
  seg.segment_id = f[3];
  seg.system_id = f[4];
  if (!f[5].empty()) seg.rater_id = f[5];
  seg.source = f[6];
  seg.hypothesis = f[7];
  if (!f[8].empty()) seg.reference = f[8];
  seg.score = parse_score(f[9], row);
  try {
    seg.rating_kind = rating_kind_from_string(f[10]);
  } catch (const ValidationError& e) {
    throw ValidationError("row " + std::to_string(row) + ": " + e.what());
  }
  return seg;
}

RatedSegment segment_from_json(const json& j, std::size_t row) {
  auto require = [&](const char* key) -> const json& {
    auto it = j.find(key);
    if (it == j.end()) {
      throw ValidationError("row " + std::to_string(row) +
                            ": missing field '" + key + "'");
    }
    return *it;
  };
  RatedSegment seg;
  seg.lp = parse_lp(require("lp").get<std::string>());
  if (j.contains("domain") && !j["domain"].is_null()) {
    seg.domain = j["domain"].get<std::string>();
  }
  if (j.contains("year") && !j["year"].is_null()) {
    seg.year = j["year"].get<int>();
  }
  seg.segment_id = require("segment_id").get<std::string>();
  seg.system_id = require("system_id").get<std::string>();
  if (j.contains("rater_id") && !j["rater_id"].is_null()) {
    seg.rater_id = j["rater_id"].get<std::string>();
  }
  seg.source = require("source").get<std::string>();
  seg.hypothesis = require("hypothesis").get<std::string>();
  if (j.contains("reference") && !j["reference"].is_null()) {
    seg.reference = j["reference"].get<std::string>();
  }
  seg.score = require("score").get<double>();
  seg.rating_kind =
      rating_kind_from_string(require("rating_kind").get<std::string>());
  return seg;
}

json segment_to_json(const RatedSegment& seg) {
  json j;
  j["lp"] = seg.lp.str();
  if (seg.domain) j["domain"] = *seg.domain;
  if (seg.year) j["year"] = *seg.year;
  j["segment_id"] = seg.segment_id;
  j["system_id"] = seg.system_id;
  if (seg.rater_id) j["rater_id"] = *seg.rater_id;
  j["source"] = seg.source;
  j["hypothesis"] = seg.hypothesis;
  if (seg.reference) j["reference"] = *seg.reference;
  j["score"] = seg.score;
  j["rating_kind"] = to_string(seg.rating_kind);
  return j;
}

void check_segment(const RatedSegment& seg, std::size_t row) {
  if (auto err = validate_segment(seg)) {
    throw ValidationError("row " + std::to_string(row) + ": " + *err);
  }
}

}  // namespace

std::vector<RatedSegment> load_ratings(const std::string& path,
                                       RatingsFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open ratings file: " + path);

  std::vector<RatedSegment> records;
  std::string line;
  std::size_t row = 0;

  if (format == RatingsFormat::Tsv) {
    bool saw_header = false;
    while (std::getline(in, line)) {
      ++row;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!saw_header) {
        auto header = split_tabs(line);
        if (header != kTsvColumns) {
          throw ValidationError(
              "row 1: TSV header does not match the expected columns "
              "(lp domain year segment_id system_id rater_id source "
              "hypothesis reference score rating_kind)");
        }
        saw_header = true;
        continue;
      }
      if (line.empty()) continue;
      auto fields = split_tabs(line);
      if (fields.size() != kTsvColumns.size()) {
        throw ValidationError("row " + std::to_string(row) + ": expected " +
                              std::to_string(kTsvColumns.size()) +
                              " tab-separated fields, got " +
                              std::to_string(fields.size()));
      }
      RatedSegment seg = segment_from_tsv(fields, row);
      check_segment(seg, row);
      records.push_back(std::move(seg));
    }
  } else {
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
      RatedSegment seg = segment_from_json(j, row);
      check_segment(seg, row);
      records.push_back(std::move(seg));
    }
  }
  return records;
}

void save_ratings(const std::vector<RatedSegment>& records,
                  const std::string& path, RatingsFormat format) {
  if (format == RatingsFormat::Tsv) {
    throw ValidationError(
        "TSV is accepted for ingestion only; save ratings as JSONL");
  }
  std::size_t row = 0;
  for (const auto& seg : records) {
    ++row;
    check_segment(seg, row);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write ratings file: " + path);
  for (const auto& seg : records) {
    out << segment_to_json(seg).dump() << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

ScoreSet load_scores(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open score file: " + path);

  ScoreSet scores;
  std::string line;
  std::size_t row = 0;
  bool saw_header = false;
  std::set<std::pair<std::string, std::string>> seen;

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
      if (!j.contains("lp") || !j.contains("orientation")) {
        throw ValidationError(
            "row 1: score files must start with a header object declaring "
            "'lp' and 'orientation'");
      }
      scores.lp = parse_lp(j["lp"].get<std::string>());
      scores.orientation =
          orientation_from_string(j["orientation"].get<std::string>());
      saw_header = true;
      continue;
    }
    for (const char* key : {"segment_id", "system_id", "score"}) {
      if (!j.contains(key)) {
        throw ValidationError("row " + std::to_string(row) +
                              ": missing field '" + std::string(key) + "'");
      }
    }
    ScoreEntry entry{j["segment_id"].get<std::string>(),
                     j["system_id"].get<std::string>(),
                     j["score"].get<double>()};
    auto key = std::make_pair(entry.segment_id, entry.system_id);
    if (!seen.insert(key).second) {
      throw ValidationError("row " + std::to_string(row) +
                            ": duplicate (segment_id, system_id) key (" +
                            entry.segment_id + ", " + entry.system_id + ")");
    }
    scores.entries.push_back(std::move(entry));
  }
  if (!saw_header) {
    throw ValidationError(
        "score file is missing the header object declaring 'lp' and "
        "'orientation'");
  }
  return scores;
}

void save_scores(const ScoreSet& scores, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write score file: " + path);
  json header;
  header["lp"] = scores.lp.str();
  header["orientation"] = to_string(scores.orientation);
  out << header.dump() << '\n';
  for (const auto& e : scores.entries) {
    json j;
    j["segment_id"] = e.segment_id;
    j["system_id"] = e.system_id;
    j["score"] = e.score;
    out << j.dump() << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace mteval
