#include "mteval/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "json.hpp"

namespace mteval {

namespace {

using nlohmann::json;

struct Unit {
  std::optional<std::string> source;
  std::string hypothesis;
  std::optional<std::string> reference;
  TargetScore target;
  Provenance provenance;
};

// cycles through the pool, then a seeded remainder sample, so any target
// count is met deterministically
std::vector<std::size_t> resample_to(std::size_t pool_size, std::size_t want,
                                     Rng& rng) {
  std::vector<std::size_t> picks;
  picks.reserve(want);
  if (pool_size == 0) return picks;
  if (want <= pool_size) {
    return rng.sample_indices(pool_size, want);
  }
  const std::size_t cycles = want / pool_size;
  for (std::size_t c = 0; c < cycles; ++c) {
    for (std::size_t i = 0; i < pool_size; ++i) picks.push_back(i);
  }
  for (auto i : rng.sample_indices(pool_size, want % pool_size)) {
    picks.push_back(i);
  }
  return picks;
}

std::vector<std::size_t> mode_allocation(std::size_t n,
                                         const std::array<double, 3>& weights) {
  double total = weights[0] + weights[1] + weights[2];
  std::array<double, 3> exact{};
  std::array<std::size_t, 3> counts{};
  std::size_t assigned = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    exact[k] = static_cast<double>(n) * weights[k] / total;
    counts[k] = static_cast<std::size_t>(std::floor(exact[k]));
    assigned += counts[k];
  }
  // largest remainder, ties to the lower mode index
  while (assigned < n) {
    std::size_t best = 0;
    double best_rem = -1.0;
    for (std::size_t k = 0; k < 3; ++k) {
      const double rem = exact[k] - static_cast<double>(counts[k]);
      if (rem > best_rem) {
        best_rem = rem;
        best = k;
      }
    }
    counts[best] += 1;
    exact[best] = static_cast<double>(counts[best]);  // consume its remainder
    ++assigned;
  }
  std::vector<std::size_t> modes;
  modes.reserve(n);
  for (std::size_t k = 0; k < 3; ++k) {
    modes.insert(modes.end(), counts[k], k);
  }
  return modes;
}

}  // namespace

std::string to_string(InputMode mode) {
  switch (mode) {
    case InputMode::Qe:
      return "QE";
    case InputMode::Ref:
      return "REF";
    case InputMode::SrcRef:
      return "SRC_REF";
  }
  return "?";
}

InputMode input_mode_from_string(std::string_view s) {
  if (s == "QE") return InputMode::Qe;
  if (s == "REF") return InputMode::Ref;
  if (s == "SRC_REF") return InputMode::SrcRef;
  throw ValidationError("unknown input mode '" + std::string(s) + "'");
}

std::string serialize_input(const std::optional<std::string>& source,
                            const std::string& hypothesis,
                            const std::optional<std::string>& reference,
                            InputMode mode) {
  const bool needs_source = mode != InputMode::Ref;
  const bool needs_reference = mode != InputMode::Qe;
  if (needs_source && !source) {
    throw ValidationError("input mode " + to_string(mode) +
                          " requires a source segment");
  }
  if (needs_reference && !reference) {
    throw ValidationError("input mode " + to_string(mode) +
                          " requires a reference");
  }
  switch (mode) {
    case InputMode::Qe:
      return "source: " + *source + " candidate: " + hypothesis;
    case InputMode::Ref:
      return "candidate: " + hypothesis + " reference: " + *reference;
    case InputMode::SrcRef:
      return "source: " + *source + " candidate: " + hypothesis +
             " reference: " + *reference;
  }
  throw ValidationError("unknown input mode");
}

std::string Provenance::str() const {
  switch (kind) {
    case Da:
      return "DA";
    case Mqm:
      return "MQM";
    case Synthetic:
      return "SYNTHETIC:" + to_string(*category);
  }
  return "?";
}

Provenance Provenance::from_string(std::string_view s) {
  if (s == "DA") return {Da, std::nullopt};
  if (s == "MQM") return {Mqm, std::nullopt};
  constexpr std::string_view prefix = "SYNTHETIC:";
  if (s.substr(0, prefix.size()) == prefix) {
    return {Synthetic, category_from_string(s.substr(prefix.size()))};
  }
  throw ValidationError("unknown provenance '" + std::string(s) + "'");
}

std::vector<TrainingRecord> assemble(
    const std::vector<RatedSegment>& records,
    const std::vector<SyntheticExample>& synthetic, const MixtureSpec& spec,
    const std::vector<RatedSegment>& da_records, Warnings* warnings) {
  if (spec.stage != 1 && spec.stage != 2) {
    throw ValidationError("mixture stage must be 1 or 2");
  }
  if (spec.synthetic_ratio <= 0 || spec.da_mqm_ratio <= 0) {
    throw ValidationError("mixture ratios must be positive");
  }
  if (!(spec.mode_weights[0] + spec.mode_weights[1] + spec.mode_weights[2] >
        0.0) ||
      spec.mode_weights[0] < 0 || spec.mode_weights[1] < 0 ||
      spec.mode_weights[2] < 0) {
    throw ValidationError("mode weights must be non-negative with a positive "
                          "sum");
  }
  if (records.empty()) {
    throw ValidationError("mixture ratios are unsatisfiable with zero real "
                          "records");
  }

  const RatingKind want =
      spec.stage == 1 ? RatingKind::DaZ : RatingKind::Mqm;
  for (const auto& r : records) {
    if (r.rating_kind != want) {
      throw ValidationError("stage " + std::to_string(spec.stage) +
                            " mixtures require " + to_string(want) +
                            " records, got " + to_string(r.rating_kind) +
                            " (segment " + r.segment_id + ")");
    }
  }
  if (spec.stage == 1 && !da_records.empty()) {
    throw ValidationError("stage 1 takes no separate DA pool");
  }

  std::vector<Unit> units;

  if (spec.stage == 1) {
    for (const auto& r : records) {
      units.push_back({r.source, r.hypothesis, r.reference,
                       to_stage1_target(r.score), {Provenance::Da, {}}});
    }
  } else {
    for (const auto& r : records) {
      units.push_back({r.source, r.hypothesis, r.reference,
                       TargetScore{r.score, TargetScale::Mqm},
                       {Provenance::Mqm, {}}});
    }
    if (!da_records.empty()) {
      for (const auto& r : da_records) {
        if (r.rating_kind != RatingKind::DaRaw) {
          throw ValidationError(
              "the stage-2 DA pool must hold DA_RAW records, got " +
              to_string(r.rating_kind) + " (segment " + r.segment_id + ")");
        }
      }
      const auto want_da = static_cast<std::size_t>(std::llround(
          static_cast<double>(records.size()) /
          static_cast<double>(spec.da_mqm_ratio)));
      Rng da_rng(derive_seed(spec.seed, {"mix", "da"}));
      for (auto i : resample_to(da_records.size(), want_da, da_rng)) {
        const auto& r = da_records[i];
        units.push_back({r.source, r.hypothesis, r.reference,
                         da_to_mqm(r.score), {Provenance::Da, {}}});
      }
    }
  }

  const std::size_t n_real = units.size();

  for (auto cat : spec.categories) {
    const auto want_synth = static_cast<std::size_t>(std::llround(
        static_cast<double>(n_real) /
        static_cast<double>(spec.synthetic_ratio)));
    if (want_synth == 0) continue;
    std::vector<std::size_t> pool;
    for (std::size_t i = 0; i < synthetic.size(); ++i) {
      if (synthetic[i].category == cat) pool.push_back(i);
    }
    if (pool.empty()) {
      throw ValidationError("no synthetic examples of category " +
                            to_string(cat) + "; ratio 1:" +
                            std::to_string(spec.synthetic_ratio) +
                            " is unsatisfiable");
    }
    Rng cat_rng(derive_seed(spec.seed, {"mix", "synth", to_string(cat)}));
    for (auto p : resample_to(pool.size(), want_synth, cat_rng)) {
      const auto& ex = synthetic[pool[p]];
      TargetScore target = spec.stage == 1
                               ? mqm_label_to_stage1(ex.label)
                               : TargetScore{ex.label, TargetScale::Mqm};
      units.push_back({ex.source, ex.hypothesis, ex.reference, target,
                       {Provenance::Synthetic, ex.category}});
    }
  }

  // mode assignment
  std::vector<std::pair<std::size_t, InputMode>> emit;  // unit index, mode
  if (spec.duplicate_all_modes) {
    for (std::size_t i = 0; i < units.size(); ++i) {
      emit.emplace_back(i, InputMode::Qe);
      if (units[i].reference) {
        emit.emplace_back(i, InputMode::Ref);
        emit.emplace_back(i, InputMode::SrcRef);
      }
    }
  } else {
    auto modes = mode_allocation(units.size(), spec.mode_weights);
    Rng mode_rng(derive_seed(spec.seed, {"mix", "modes"}));
    mode_rng.shuffle(modes);
    for (std::size_t i = 0; i < units.size(); ++i) {
      if (modes[i] != 0 && !units[i].reference) {
        // reference-less records can only be QE; swap with a QE-assigned
        // record that has a reference to keep the realized counts
        bool swapped = false;
        for (std::size_t j = 0; j < units.size(); ++j) {
          if (modes[j] == 0 && units[j].reference) {
            std::swap(modes[i], modes[j]);
            swapped = true;
            break;
          }
        }
        if (!swapped) {
          warn(warnings,
               "record without a reference forced into QE mode; realized "
               "mode counts drift from the weights");
          modes[i] = 0;
        }
      }
    }
    for (std::size_t i = 0; i < units.size(); ++i) {
      emit.emplace_back(i, static_cast<InputMode>(modes[i]));
    }
  }

  std::vector<TrainingRecord> out;
  out.reserve(emit.size());
  std::size_t dropped = 0;
  for (const auto& [i, mode] : emit) {
    const auto& u = units[i];
    std::string input = serialize_input(u.source, u.hypothesis, u.reference,
                                        mode);
    if (input.size() > spec.char_budget) {
      ++dropped;
      continue;
    }
    out.push_back({std::move(input), u.target, mode, spec.stage,
                   u.provenance});
  }
  if (dropped > 0) {
    warn(warnings, std::to_string(dropped) +
                       " records exceeded the serialized-input budget of " +
                       std::to_string(spec.char_budget) +
                       " characters and were dropped");
  }

  Rng order_rng(derive_seed(spec.seed, {"mix", "order"}));
  order_rng.shuffle(out);
  return out;
}

namespace {

json spec_to_json(const MixtureSpec& spec) {
  json j;
  j["stage"] = spec.stage;
  j["synthetic_ratio"] = spec.synthetic_ratio;
  j["da_mqm_ratio"] = spec.da_mqm_ratio;
  j["mode_weights"] = spec.mode_weights;
  j["duplicate_all_modes"] = spec.duplicate_all_modes;
  j["char_budget"] = spec.char_budget;
  json cats = json::array();
  for (auto c : spec.categories) cats.push_back(to_string(c));
  j["categories"] = cats;
  j["seed"] = spec.seed;
  return j;
}

MixtureSpec spec_from_json(const json& j) {
  MixtureSpec spec;
  spec.stage = j.at("stage").get<int>();
  spec.synthetic_ratio = j.at("synthetic_ratio").get<std::int64_t>();
  spec.da_mqm_ratio = j.at("da_mqm_ratio").get<std::int64_t>();
  spec.mode_weights = j.at("mode_weights").get<std::array<double, 3>>();
  spec.duplicate_all_modes = j.at("duplicate_all_modes").get<bool>();
  spec.char_budget = j.at("char_budget").get<std::size_t>();
  spec.categories.clear();
  for (const auto& c : j.at("categories")) {
    spec.categories.push_back(category_from_string(c.get<std::string>()));
  }
  spec.seed = j.at("seed").get<std::uint64_t>();
  return spec;
}

}  // namespace

void save_mixture(const std::vector<TrainingRecord>& mixture,
                  const MixtureSpec& spec, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write mixture file: " + path);
  json header;
  header["format_version"] = 1;
  header["type"] = "mixture";
  header["spec"] = spec_to_json(spec);
  out << header.dump() << '\n';
  for (const auto& r : mixture) {
    json j;
    j["input"] = r.input_text;
    j["target"] = r.target.value;
    j["mode"] = to_string(r.mode);
    j["stage"] = r.stage;
    j["provenance"] = r.provenance.str();
    out << j.dump() << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

std::vector<TrainingRecord> load_mixture(const std::string& path,
                                         MixtureSpec* spec_out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open mixture file: " + path);
  std::vector<TrainingRecord> out;
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
      if (!j.contains("format_version") || !j.contains("spec")) {
        throw ValidationError(
            "mixture files must start with a header object carrying "
            "'format_version' and 'spec'");
      }
      if (spec_out != nullptr) *spec_out = spec_from_json(j["spec"]);
      saw_header = true;
      continue;
    }
    TrainingRecord r;
    r.input_text = j.at("input").get<std::string>();
    r.stage = j.at("stage").get<int>();
    r.target = {j.at("target").get<double>(), r.stage == 1
                                                  ? TargetScale::Stage1
                                                  : TargetScale::Mqm};
    r.mode = input_mode_from_string(j.at("mode").get<std::string>());
    r.provenance =
        Provenance::from_string(j.at("provenance").get<std::string>());
    out.push_back(std::move(r));
  }
  if (!saw_header) {
    throw ValidationError("mixture file is missing its header object");
  }
  return out;
}

}  // namespace mteval
