#include "mteval/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <unordered_set>

#include "json.hpp"
#include "mteval/text.hpp"

namespace mteval {

namespace {

using nlohmann::json;

SyntheticExample base_example(const RatedSegment& record,
                              SyntheticCategory category) {
  SyntheticExample ex;
  ex.origin_segment_id = record.segment_id;
  ex.lp = record.lp;
  ex.category = category;
  ex.source = record.source;
  ex.reference = record.reference;
  return ex;
}

void require_reference(const RatedSegment& record, const char* generator) {
  if (!record.reference) {
    throw ValidationError(std::string(generator) +
                          " requires a record with a reference (segment " +
                          record.segment_id + ")");
  }
}

}  // namespace

std::string to_string(SyntheticCategory c) {
  switch (c) {
    case SyntheticCategory::Empty:
      return "EMPTY";
    case SyntheticCategory::Gibberish:
      return "GIBBERISH";
    case SyntheticCategory::Unrelated:
      return "UNRELATED";
    case SyntheticCategory::Undertranslation:
      return "UNDERTRANSLATION";
    case SyntheticCategory::Duplication:
      return "DUPLICATION";
    case SyntheticCategory::MissingPunct:
      return "MISSING_PUNCT";
    case SyntheticCategory::RefMatch:
      return "REF_MATCH";
  }
  return "?";
}

SyntheticCategory category_from_string(std::string_view s) {
  for (auto c : kAllCategories) {
    if (to_string(c) == s) return c;
  }
  throw ValidationError("unknown synthetic category '" + std::string(s) + "'");
}

std::map<std::string, std::size_t> TargetVocabulary::counts() const {
  std::map<std::string, std::size_t> m;
  for (const auto& w : words) m[w] += 1;
  return m;
}

TargetVocabulary build_vocabulary(const std::vector<RatedSegment>& records,
                                  const std::string& target_lang) {
  TargetVocabulary vocab;
  vocab.target_lang = target_lang;
  for (const auto& r : records) {
    if (r.lp.target_lang != target_lang || !r.reference) continue;
    for (auto& w : split_words(*r.reference)) {
      vocab.words.push_back(std::move(w));
    }
  }
  if (vocab.words.empty()) {
    throw ValidationError("no references with target language '" +
                          target_lang + "' to build a vocabulary from");
  }
  return vocab;
}

ReferencePool build_reference_pool(const std::vector<RatedSegment>& records,
                                   const std::string& target_lang) {
  ReferencePool pool;
  pool.target_lang = target_lang;
  std::unordered_set<std::string> seen;
  for (const auto& r : records) {
    if (r.lp.target_lang != target_lang || !r.reference) continue;
    if (seen.insert(*r.reference).second) pool.refs.push_back(*r.reference);
  }
  return pool;
}

SyntheticExample gen_empty(const RatedSegment& record) {
  require_reference(record, "gen_empty");
  SyntheticExample ex = base_example(record, SyntheticCategory::Empty);
  ex.hypothesis.clear();
  ex.label = 25.0;
  return ex;
}

SyntheticExample gen_gibberish(const RatedSegment& record,
                               const TargetVocabulary& vocab, Rng& rng) {
  require_reference(record, "gen_gibberish");
  if (vocab.target_lang != record.lp.target_lang) {
    throw ValidationError("vocabulary language '" + vocab.target_lang +
                          "' does not match record target language '" +
                          record.lp.target_lang + "'");
  }
  if (vocab.words.empty()) {
    throw ValidationError("empty vocabulary for target language '" +
                          vocab.target_lang + "'");
  }
  const std::size_t n = count_words(*record.reference);
  SyntheticExample ex = base_example(record, SyntheticCategory::Gibberish);
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) out += ' ';
    out += vocab.words[rng.below(vocab.words.size())];
  }
  ex.hypothesis = std::move(out);
  ex.label = 25.0;
  return ex;
}

SyntheticExample gen_unrelated(const RatedSegment& record,
                               const ReferencePool& pool, Rng& rng) {
  require_reference(record, "gen_unrelated");
  if (pool.target_lang != record.lp.target_lang) {
    throw ValidationError("reference pool language '" + pool.target_lang +
                          "' does not match record target language '" +
                          record.lp.target_lang + "'");
  }
  const std::string& own = *record.reference;
  const double own_len = static_cast<double>(codepoint_count(own));

  bool any_other = false;
  for (const auto& ref : pool.refs) {
    if (ref != own) {
      any_other = true;
      break;
    }
  }
  if (!any_other) {
    throw ValidationError(
        "reference pool has no candidate other than the record's own "
        "reference (segment " +
        record.segment_id + ")");
  }

  std::vector<std::size_t> candidates;
  for (double window = 0.2; candidates.empty(); window *= 2.0) {
    for (std::size_t i = 0; i < pool.refs.size(); ++i) {
      const auto& ref = pool.refs[i];
      if (ref == own) continue;
      const double len = static_cast<double>(codepoint_count(ref));
      if (std::abs(len - own_len) <= window * own_len) candidates.push_back(i);
    }
  }

  SyntheticExample ex = base_example(record, SyntheticCategory::Unrelated);
  ex.hypothesis = pool.refs[candidates[rng.below(candidates.size())]];
  ex.label = 25.0;
  return ex;
}

double undertranslation_label(double removed_fraction) {
  return std::clamp(25.0 * removed_fraction, 5.0, 25.0);
}

std::optional<SyntheticExample> gen_undertranslation(
    const RatedSegment& record, Rng& rng) {
  const std::string& hyp = record.hypothesis;
  if (hyp.empty()) {
    throw ValidationError(
        "gen_undertranslation requires a non-empty hypothesis (segment " +
        record.segment_id + ")");
  }
  const std::size_t total_words = count_words(hyp);
  const auto sentences = sentence_ranges(hyp);

  SyntheticExample ex =
      base_example(record, SyntheticCategory::Undertranslation);

  if (sentences.size() >= 2) {
    const std::size_t pick = rng.below(sentences.size());
    const auto [begin, end] = sentences[pick];
    const std::size_t removed_words =
        count_words(std::string_view(hyp).substr(begin, end - begin));
    std::string out = hyp.substr(0, begin) + hyp.substr(end);
    ex.hypothesis = rtrim(out);
    ex.label = undertranslation_label(static_cast<double>(removed_words) /
                                      static_cast<double>(total_words));
    return ex;
  }

  if (total_words < 2) return std::nullopt;  // nothing sensible to remove

  const double f = rng.real(0.2, 0.8);
  const auto n = static_cast<long long>(total_words);
  long long removed = std::llround(f * static_cast<double>(n));
  removed = std::clamp(removed, 1LL, n - 1);

  // cut at the byte where the last kept word ends, so the output is a
  // prefix of the original
  const long long keep = n - removed;
  std::size_t cut = 0;
  long long seen = 0;
  for (std::size_t i = 0; i < hyp.size(); ++i) {
    const bool space = hyp[i] == ' ' || hyp[i] == '\t' || hyp[i] == '\n' ||
                       hyp[i] == '\r' || hyp[i] == '\f' || hyp[i] == '\v';
    const bool prev_space =
        i == 0 || hyp[i - 1] == ' ' || hyp[i - 1] == '\t' ||
        hyp[i - 1] == '\n' || hyp[i - 1] == '\r' || hyp[i - 1] == '\f' ||
        hyp[i - 1] == '\v';
    if (space && !prev_space) {
      ++seen;
      if (seen == keep) {
        cut = i;
        break;
      }
    }
  }
  if (cut == 0) cut = hyp.size();  // keep == n never happens; last word ends at EOS
  ex.hypothesis = rtrim(hyp.substr(0, cut));
  ex.label = undertranslation_label(static_cast<double>(removed) /
                                    static_cast<double>(n));
  return ex;
}

SyntheticExample gen_duplication(const RatedSegment& record, double label) {
  if (record.hypothesis.empty()) {
    throw ValidationError(
        "gen_duplication requires a non-empty hypothesis (segment " +
        record.segment_id + ")");
  }
  SyntheticExample ex = base_example(record, SyntheticCategory::Duplication);
  ex.hypothesis = record.hypothesis + " " + record.hypothesis;
  ex.label = label;
  return ex;
}

std::optional<SyntheticExample> gen_missing_punct(
    const RatedSegment& record, const std::vector<std::string>& symbols) {
  require_reference(record, "gen_missing_punct");
  const std::string& ref = *record.reference;
  const auto symbol = final_symbol(ref, symbols);
  if (!symbol) return std::nullopt;
  SyntheticExample ex = base_example(record, SyntheticCategory::MissingPunct);
  ex.hypothesis = rtrim(ref.substr(0, ref.size() - symbol->size()));
  ex.label = 1.0;
  return ex;
}

SyntheticExample gen_refmatch(const RatedSegment& record) {
  require_reference(record, "gen_refmatch");
  SyntheticExample ex = base_example(record, SyntheticCategory::RefMatch);
  ex.hypothesis = *record.reference;
  ex.label = 0.0;
  return ex;
}

namespace {

bool eligible_for(const RatedSegment& r, SyntheticCategory c,
                  const SynthConfig& config, const ReferencePool* pool) {
  switch (c) {
    case SyntheticCategory::Empty:
    case SyntheticCategory::Gibberish:
    case SyntheticCategory::RefMatch:
      return r.reference.has_value();
    case SyntheticCategory::Unrelated: {
      if (!r.reference || pool == nullptr) return false;
      if (pool->refs.size() >= 2) return true;
      return pool->refs.size() == 1 && pool->refs[0] != *r.reference;
    }
    case SyntheticCategory::Undertranslation:
    case SyntheticCategory::Duplication:
      return !r.hypothesis.empty();
    case SyntheticCategory::MissingPunct:
      return r.reference &&
             final_symbol(*r.reference, config.punct_symbols).has_value();
  }
  return false;
}

}  // namespace

SynthPlanResult sample_plan(const std::vector<RatedSegment>& records,
                            std::uint64_t seed, const SynthConfig& config) {
  if (records.empty()) {
    throw ValidationError("sample_plan requires a non-empty corpus");
  }

  SynthPlanResult result;

  // language pairs in sorted order; derived structures per target language
  std::set<std::string> lp_set;
  for (const auto& r : records) lp_set.insert(r.lp.str());

  std::map<std::string, TargetVocabulary> vocab_by_lang;
  std::map<std::string, ReferencePool> pool_by_lang;
  for (const auto& r : records) {
    const auto& lang = r.lp.target_lang;
    if (!pool_by_lang.count(lang)) {
      pool_by_lang[lang] = build_reference_pool(records, lang);
      TargetVocabulary vocab;
      try {
        vocab = build_vocabulary(records, lang);
      } catch (const ValidationError&) {
        // no references in this language; the affected categories are
        // skipped below with a warning
      }
      vocab_by_lang[lang] = std::move(vocab);
    }
  }

  std::map<std::string, std::vector<std::size_t>> by_lp;
  for (std::size_t i = 0; i < records.size(); ++i) {
    by_lp[records[i].lp.str()].push_back(i);
  }

  auto generate_from = [&](std::size_t rec_index, SyntheticCategory cat,
                           std::uint64_t ex_seed,
                           const std::string& stratum) -> bool {
    const RatedSegment& rec = records[rec_index];
    Rng ex_rng(ex_seed);
    std::optional<SyntheticExample> ex;
    switch (cat) {
      case SyntheticCategory::Empty:
        ex = gen_empty(rec);
        break;
      case SyntheticCategory::Gibberish:
        ex = gen_gibberish(rec, vocab_by_lang.at(rec.lp.target_lang), ex_rng);
        break;
      case SyntheticCategory::Unrelated:
        ex = gen_unrelated(rec, pool_by_lang.at(rec.lp.target_lang), ex_rng);
        break;
      case SyntheticCategory::Undertranslation:
        ex = gen_undertranslation(rec, ex_rng);
        if (!ex) {
          warn(&result.warnings,
               "UNDERTRANSLATION: skipped single-word hypothesis (lp " +
                   rec.lp.str() + ", segment " + rec.segment_id + ")");
        }
        break;
      case SyntheticCategory::Duplication:
        ex = gen_duplication(rec, config.duplication_label);
        break;
      case SyntheticCategory::MissingPunct:
        ex = gen_missing_punct(rec, config.punct_symbols);
        break;
      case SyntheticCategory::RefMatch:
        ex = gen_refmatch(rec);
        break;
    }
    if (!ex) return false;
    ex->seed_trace = ex_seed;
    result.examples.push_back(std::move(*ex));
    result.origins.push_back(rec_index);
    result.counts[{to_string(cat), stratum}] += 1;
    return true;
  };

  for (auto cat : config.categories) {
    if (cat == SyntheticCategory::MissingPunct) {
      // stratified over the punctuation symbols, pooled across pairs
      for (const auto& symbol : config.punct_symbols) {
        std::vector<std::size_t> eligible;
        for (std::size_t i = 0; i < records.size(); ++i) {
          const auto& r = records[i];
          if (!r.reference) continue;
          auto s = final_symbol(*r.reference, config.punct_symbols);
          if (s && *s == symbol) eligible.push_back(i);
        }
        result.counts[{to_string(cat), symbol}];  // report zero strata too
        if (eligible.empty()) continue;
        if (eligible.size() < config.per_symbol) {
          warn(&result.warnings,
               "MISSING_PUNCT '" + symbol + "': only " +
                   std::to_string(eligible.size()) + " eligible records (< " +
                   std::to_string(config.per_symbol) + ")");
        }
        const std::uint64_t group_seed =
            derive_seed(seed, {"synth", to_string(cat), symbol});
        Rng sampler(derive_seed(group_seed, {"sample"}));
        auto picks =
            sampler.sample_indices(eligible.size(), config.per_symbol);
        std::size_t k = 0;
        for (auto p : picks) {
          generate_from(eligible[p], cat,
                        derive_seed(group_seed, {"ex", std::to_string(k)}),
                        symbol);
          ++k;
        }
      }
      continue;
    }

    for (const auto& lp : lp_set) {
      std::vector<std::size_t> eligible;
      bool lang_usable = true;
      for (auto i : by_lp[lp]) {
        const auto& r = records[i];
        if (cat == SyntheticCategory::Gibberish &&
            vocab_by_lang[r.lp.target_lang].words.empty()) {
          lang_usable = false;
          break;
        }
        const auto* pool = &pool_by_lang[r.lp.target_lang];
        if (eligible_for(r, cat, config, pool)) eligible.push_back(i);
      }
      if (!lang_usable) {
        warn(&result.warnings, to_string(cat) + " " + lp +
                                   ": no reference vocabulary for target "
                                   "language; category skipped");
        continue;
      }
      if (eligible.empty()) {
        warn(&result.warnings,
             to_string(cat) + " " + lp + ": no eligible records");
        continue;
      }
      if (eligible.size() < config.per_lp) {
        warn(&result.warnings,
             to_string(cat) + " " + lp + ": only " +
                 std::to_string(eligible.size()) + " eligible records (< " +
                 std::to_string(config.per_lp) + ")");
      }
      const std::uint64_t group_seed =
          derive_seed(seed, {"synth", to_string(cat), lp});
      Rng sampler(derive_seed(group_seed, {"sample"}));
      auto picks = sampler.sample_indices(eligible.size(), config.per_lp);
      std::size_t k = 0;
      for (auto p : picks) {
        generate_from(eligible[p], cat,
                      derive_seed(group_seed, {"ex", std::to_string(k)}), lp);
        ++k;
      }
    }
  }

  // merge order: (category, lp, origin segment), generation order for ties
  std::vector<std::size_t> perm(result.examples.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t a, std::size_t b) {
                     const auto& ea = result.examples[a];
                     const auto& eb = result.examples[b];
                     return std::tuple(static_cast<int>(ea.category),
                                       ea.lp.str(), ea.origin_segment_id) <
                            std::tuple(static_cast<int>(eb.category),
                                       eb.lp.str(), eb.origin_segment_id);
                   });
  SynthPlanResult sorted;
  sorted.counts = std::move(result.counts);
  sorted.warnings = std::move(result.warnings);
  sorted.examples.reserve(perm.size());
  sorted.origins.reserve(perm.size());
  for (auto i : perm) {
    sorted.examples.push_back(std::move(result.examples[i]));
    sorted.origins.push_back(result.origins[i]);
  }
  return sorted;
}

void save_synthetic(const std::vector<SyntheticExample>& examples,
                    const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write synthetic file: " + path);
  for (const auto& ex : examples) {
    json j;
    j["origin_segment_id"] = ex.origin_segment_id;
    j["lp"] = ex.lp.str();
    j["category"] = to_string(ex.category);
    j["source"] = ex.source;
    j["hypothesis"] = ex.hypothesis;
    if (ex.reference) j["reference"] = *ex.reference;
    j["label"] = ex.label;
    j["seed_trace"] = ex.seed_trace;
    out << j.dump() << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

std::vector<SyntheticExample> load_synthetic(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open synthetic file: " + path);
  std::vector<SyntheticExample> out;
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
    SyntheticExample ex;
    ex.origin_segment_id = j.at("origin_segment_id").get<std::string>();
    ex.lp = parse_lp(j.at("lp").get<std::string>());
    ex.category = category_from_string(j.at("category").get<std::string>());
    ex.source = j.at("source").get<std::string>();
    ex.hypothesis = j.at("hypothesis").get<std::string>();
    if (j.contains("reference")) ex.reference = j["reference"].get<std::string>();
    ex.label = j.at("label").get<double>();
    ex.seed_trace = j.at("seed_trace").get<std::uint64_t>();
    out.push_back(std::move(ex));
  }
  return out;
}

}  // namespace mteval
