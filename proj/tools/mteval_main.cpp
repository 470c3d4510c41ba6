// mteval -- MT-metric data pipeline and meta-evaluation harness.
//
// Subcommands: ingest, normalize, synth, build-challenge, mix,
// score-baseline, eval, challenge-eval, select-checkpoint, report.
// Data goes to files, logs to stderr. Exit codes: 0 ok, 1 bad data,
// 2 I/O failure, 64 usage error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mteval/baseline.hpp"
#include "mteval/challenge.hpp"
#include "mteval/corpus.hpp"
#include "mteval/metaeval.hpp"
#include "mteval/mixture.hpp"
#include "mteval/pipeline.hpp"
#include "mteval/ratings.hpp"
#include "mteval/selection.hpp"
#include "mteval/synthgen.hpp"

namespace fs = std::filesystem;
using namespace mteval;

namespace {

bool log_quiet() {
  const char* v = std::getenv("MTEVAL_LOG");
  return v != nullptr && (std::string(v) == "quiet" || std::string(v) == "error");
}

void log_info(const std::string& msg) {
  if (!log_quiet()) std::fprintf(stderr, "[mteval] %s\n", msg.c_str());
}

void log_warnings(const Warnings& warnings) {
  for (const auto& w : warnings) {
    std::fprintf(stderr, "[mteval] warning: %s\n", w.c_str());
  }
}

// MTEVAL_OUT_DIR redirects relative output paths
std::string out_path(const std::string& path) {
  const char* dir = std::getenv("MTEVAL_OUT_DIR");
  if (dir == nullptr || *dir == '\0' || fs::path(path).is_absolute()) {
    return path;
  }
  return (fs::path(dir) / path).string();
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    auto pos = s.find(sep, start);
    if (pos == std::string::npos) {
      if (start < s.size()) out.push_back(s.substr(start));
      break;
    }
    if (pos > start) out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::vector<SyntheticCategory> parse_categories(const std::string& csv) {
  std::vector<SyntheticCategory> cats;
  for (const auto& name : split_list(csv, ',')) {
    cats.push_back(category_from_string(name));
  }
  if (cats.empty()) throw ValidationError("empty category list");
  return cats;
}

// flags beat config-file values, which beat built-in defaults
struct Resolver {
  PipelineConfig config;

  std::string str(CLI::Option* opt, const std::string& flag_value,
                  const std::string& key, const std::string& fallback) {
    if (opt != nullptr && opt->count() > 0) return flag_value;
    if (auto v = config.get(key)) return *v;
    return fallback;
  }

  std::uint64_t u64(CLI::Option* opt, std::uint64_t flag_value,
                    const std::string& key, std::uint64_t fallback) {
    if (opt != nullptr && opt->count() > 0) return flag_value;
    if (auto v = config.get(key)) {
      try {
        return std::stoull(*v);
      } catch (const std::exception&) {
        throw ValidationError("config key '" + key +
                              "' is not an integer: " + *v);
      }
    }
    return fallback;
  }

  double num(CLI::Option* opt, double flag_value, const std::string& key,
             double fallback) {
    if (opt != nullptr && opt->count() > 0) return flag_value;
    if (auto v = config.get(key)) {
      try {
        return std::stod(*v);
      } catch (const std::exception&) {
        throw ValidationError("config key '" + key +
                              "' is not a number: " + *v);
      }
    }
    return fallback;
  }

  std::uint64_t required_seed(CLI::Option* opt, std::uint64_t flag_value) {
    if (opt != nullptr && opt->count() > 0) return flag_value;
    if (auto v = config.get("seed")) {
      try {
        return std::stoull(*v);
      } catch (const std::exception&) {
        throw ValidationError("config key 'seed' is not an integer: " + *v);
      }
    }
    throw ValidationError(
        "this command generates data and needs --seed (or 'seed' in the "
        "config file)");
  }
};

SynthConfig make_synth_config(Resolver& r, CLI::Option* per_lp_opt,
                              std::size_t per_lp, CLI::Option* per_sym_opt,
                              std::size_t per_sym, CLI::Option* punct_opt,
                              const std::string& punct, CLI::Option* dup_opt,
                              double dup_label, CLI::Option* cats_opt,
                              const std::string& cats) {
  SynthConfig config;
  config.per_lp = r.u64(per_lp_opt, per_lp, "per_lp", config.per_lp);
  config.per_symbol =
      r.u64(per_sym_opt, per_sym, "per_symbol", config.per_symbol);
  const std::string punct_value = r.str(punct_opt, punct, "punct", "");
  if (!punct_value.empty()) {
    config.punct_symbols = split_list(punct_value, ' ');
  }
  config.duplication_label =
      r.num(dup_opt, dup_label, "duplication_label", config.duplication_label);
  const std::string cats_value = r.str(cats_opt, cats, "categories", "");
  if (!cats_value.empty()) config.categories = parse_categories(cats_value);
  return config;
}

PipelineConfig effective_config(
    const std::vector<std::pair<std::string, std::string>>& entries) {
  PipelineConfig config;
  for (const auto& [k, v] : entries) config.set(k, v);
  return config;
}

std::string stem_of(const std::string& path) {
  return fs::path(path).stem().string();
}

std::string table_path_for(const std::string& json_path) {
  fs::path p(json_path);
  p.replace_extension(".txt");
  return p.string();
}

std::string join_counts(
    const std::map<std::pair<std::string, std::string>, std::size_t>& counts) {
  std::string out;
  for (const auto& [key, n] : counts) {
    if (!out.empty()) out += ", ";
    out += key.first + "/" + key.second + "=" + std::to_string(n);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MT-metric training-data pipeline and meta-evaluation harness"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path,
                 "flat key-value config file; flags override its values");

  int rc = 0;
  Resolver resolver;
  auto load_cfg = [&]() {
    if (!config_path.empty()) {
      resolver.config = PipelineConfig::load(config_path);
    }
  };

  // ---- ingest ----
  auto* ingest = app.add_subcommand(
      "ingest", "validate a ratings file and persist it as canonical JSONL");
  {
    static std::string input, format = "jsonl", output, lps;
    ingest->add_option("--input", input, "ratings file")->required();
    ingest->add_option("--format", format, "tsv or jsonl")
        ->check(CLI::IsMember({"tsv", "jsonl"}));
    ingest->add_option("--output", output, "output JSONL path")->required();
    auto* lps_opt = ingest->add_option(
        "--lps", lps, "keep only these language pairs (comma-separated)");
    ingest->callback([&, lps_opt]() {
      auto records = load_ratings(
          input, format == "tsv" ? RatingsFormat::Tsv : RatingsFormat::Jsonl);
      if (lps_opt->count() > 0) {
        std::vector<RatedSegment> kept;
        for (auto& r : records) {
          for (const auto& lp : split_list(lps, ',')) {
            if (r.lp.str() == lp) {
              kept.push_back(std::move(r));
              break;
            }
          }
        }
        records = std::move(kept);
      }
      const std::string out = out_path(output);
      save_ratings(records, out);
      write_manifest(out, "ingest",
                     effective_config({{"format", format}, {"lps", lps}}), 0,
                     {input},
                     {{"records", std::to_string(records.size())}});
      log_info("ingested " + std::to_string(records.size()) + " records -> " +
               out);
    });
  }

  // ---- normalize ----
  auto* normalize = app.add_subcommand(
      "normalize",
      "z-normalize DA ratings per rater and aggregate per segment");
  {
    static std::string input, output;
    static bool no_aggregate = false;
    normalize->add_option("--input", input, "DA_RAW ratings JSONL")->required();
    normalize->add_option("--output", output, "output JSONL path")->required();
    normalize->add_flag("--no-aggregate", no_aggregate,
                        "skip the per-segment aggregation step");
    normalize->callback([&]() {
      auto records = load_ratings(input, RatingsFormat::Jsonl);
      Warnings warnings;
      auto normalized = znormalize_per_rater(records, &warnings);
      if (!no_aggregate) normalized = aggregate_per_segment(normalized);
      log_warnings(warnings);
      const std::string out = out_path(output);
      save_ratings(normalized, out);
      write_manifest(out, "normalize",
                     effective_config(
                         {{"aggregate", no_aggregate ? "false" : "true"}}),
                     0, {input},
                     {{"records", std::to_string(normalized.size())}},
                     warnings);
      log_info("normalized " + std::to_string(normalized.size()) +
               " records -> " + out);
    });
  }

  // ---- synth / build-challenge (shared knobs) ----
  for (const bool challenge_mode : {false, true}) {
    auto* cmd = app.add_subcommand(
        challenge_mode ? "build-challenge" : "synth",
        challenge_mode
            ? "build the paired (original, corrupted) challenge set"
            : "generate the seven synthetic failure-mode training sets");
    static std::string input[2], output[2], punct[2], cats[2];
    static std::uint64_t seed[2] = {0, 0};
    static std::size_t per_lp[2] = {500, 500}, per_symbol[2] = {250, 250};
    static double dup_label[2] = {25.0, 25.0};
    const int k = challenge_mode ? 1 : 0;
    cmd->add_option("--input", input[k], "ratings JSONL")->required();
    cmd->add_option("--output", output[k], "output JSONL path")->required();
    auto* seed_opt = cmd->add_option("--seed", seed[k], "generation seed");
    auto* per_lp_opt = cmd->add_option(
        "--per-lp", per_lp[k], "origin records per category and language pair");
    auto* per_sym_opt = cmd->add_option(
        "--per-symbol", per_symbol[k],
        "origin records per end-punctuation symbol");
    auto* punct_opt = cmd->add_option(
        "--punct", punct[k],
        "space-separated end-punctuation symbols (default: the built-in 11)");
    auto* dup_opt = cmd->add_option("--duplication-label", dup_label[k],
                                    "label for duplication examples");
    auto* cats_opt = cmd->add_option("--categories", cats[k],
                                     "comma-separated category subset");
    cmd->callback([&, k, challenge_mode, cmd, seed_opt, per_lp_opt,
                   per_sym_opt, punct_opt, dup_opt, cats_opt]() {
      load_cfg();
      const std::uint64_t used_seed =
          resolver.required_seed(seed_opt, seed[k]);
      SynthConfig config = make_synth_config(
          resolver, per_lp_opt, per_lp[k], per_sym_opt, per_symbol[k],
          punct_opt, punct[k], dup_opt, dup_label[k], cats_opt, cats[k]);
      auto records = load_ratings(input[k], RatingsFormat::Jsonl);
      const std::string out = out_path(output[k]);

      std::string punct_joined;
      for (const auto& s : config.punct_symbols) {
        if (!punct_joined.empty()) punct_joined += ' ';
        punct_joined += s;
      }
      std::string cats_joined;
      for (auto c : config.categories) {
        if (!cats_joined.empty()) cats_joined += ',';
        cats_joined += to_string(c);
      }
      auto config_for_manifest = effective_config(
          {{"seed", std::to_string(used_seed)},
           {"per_lp", std::to_string(config.per_lp)},
           {"per_symbol", std::to_string(config.per_symbol)},
           {"punct", punct_joined},
           {"duplication_label", std::to_string(config.duplication_label)},
           {"categories", cats_joined}});

      if (challenge_mode) {
        Warnings warnings;
        auto pairs = build_challenge(records, used_seed, config, &warnings);
        log_warnings(warnings);
        save_challenge(pairs, out);
        write_manifest(out, cmd->get_name(), config_for_manifest, used_seed,
                       {input[k]},
                       {{"pairs", std::to_string(pairs.size())}}, warnings);
        log_info("built " + std::to_string(pairs.size()) +
                 " challenge pairs -> " + out);
      } else {
        auto plan = sample_plan(records, used_seed, config);
        log_warnings(plan.warnings);
        save_synthetic(plan.examples, out);
        write_manifest(out, cmd->get_name(), config_for_manifest, used_seed,
                       {input[k]},
                       {{"examples", std::to_string(plan.examples.size())},
                        {"counts", join_counts(plan.counts)}},
                       plan.warnings);
        log_info("generated " + std::to_string(plan.examples.size()) +
                 " synthetic examples -> " + out);
      }
    });
  }

  // ---- mix ----
  auto* mix = app.add_subcommand(
      "mix", "assemble a training mixture in the three hybrid input formats");
  {
    static std::string ratings_path, da_path, synth_path, output, weights,
        cats;
    static int stage = 1;
    static std::uint64_t seed = 0;
    static std::int64_t synth_ratio = 0, da_mqm_ratio = 0;
    static std::size_t char_budget = 0;
    static bool duplicate_all = false;
    mix->add_option("--stage", stage, "1 (DA_Z) or 2 (MQM + optional DA)")
        ->required()
        ->check(CLI::Range(1, 2));
    mix->add_option("--ratings", ratings_path,
                    "stage-1: aggregated DA_Z JSONL; stage-2: MQM JSONL")
        ->required();
    mix->add_option("--da-ratings", da_path,
                    "stage-2 only: DA_RAW pool to rescale and mix in");
    mix->add_option("--synth", synth_path, "synthetic examples JSONL")
        ->required();
    mix->add_option("--output", output, "output mixture JSONL")->required();
    auto* seed_opt = mix->add_option("--seed", seed, "mixing seed");
    auto* ratio_opt = mix->add_option(
        "--synth-ratio", synth_ratio,
        "one synthetic per this many real examples (default 100 / 5000)");
    auto* da_ratio_opt = mix->add_option(
        "--da-mqm-ratio", da_mqm_ratio,
        "one DA-derived example per this many MQM examples (default 4)");
    auto* weights_opt = mix->add_option(
        "--mode-weights", weights, "QE,REF,SRC_REF weights (default 1,1,1)");
    mix->add_flag("--duplicate-all-modes", duplicate_all,
                  "emit every record in all applicable modes");
    auto* budget_opt = mix->add_option("--char-budget", char_budget,
                                       "drop longer serialized inputs");
    auto* cats_opt = mix->add_option("--categories", cats,
                                     "comma-separated category subset");
    mix->callback([&, seed_opt, ratio_opt, da_ratio_opt, weights_opt,
                   budget_opt, cats_opt]() {
      load_cfg();
      MixtureSpec spec;
      spec.stage = stage;
      spec.seed = resolver.required_seed(seed_opt, seed);
      spec.synthetic_ratio = static_cast<std::int64_t>(resolver.u64(
          ratio_opt, static_cast<std::uint64_t>(synth_ratio), "synth_ratio",
          stage == 1 ? 100 : 5000));
      spec.da_mqm_ratio = static_cast<std::int64_t>(
          resolver.u64(da_ratio_opt, static_cast<std::uint64_t>(da_mqm_ratio),
                       "da_mqm_ratio", 4));
      spec.duplicate_all_modes = duplicate_all;
      spec.char_budget =
          resolver.u64(budget_opt, char_budget, "char_budget", 2000);
      const std::string weights_value =
          resolver.str(weights_opt, weights, "mode_weights", "");
      if (!weights_value.empty()) {
        auto parts = split_list(weights_value, ',');
        if (parts.size() != 3) {
          throw ValidationError("--mode-weights needs three values");
        }
        for (int i = 0; i < 3; ++i) spec.mode_weights[i] = std::stod(parts[i]);
      }
      const std::string cats_value =
          resolver.str(cats_opt, cats, "categories", "");
      if (!cats_value.empty()) spec.categories = parse_categories(cats_value);

      auto records = load_ratings(ratings_path, RatingsFormat::Jsonl);
      std::vector<RatedSegment> da_records;
      std::vector<std::string> inputs = {ratings_path, synth_path};
      if (!da_path.empty()) {
        da_records = load_ratings(da_path, RatingsFormat::Jsonl);
        inputs.push_back(da_path);
      }
      if (spec.stage == 2 && da_path.empty()) {
        log_info("no --da-ratings given; stage-2 mixture is MQM + synthetic "
                 "only");
      }
      auto synthetic = load_synthetic(synth_path);

      Warnings warnings;
      auto mixture = assemble(records, synthetic, spec, da_records, &warnings);
      log_warnings(warnings);
      const std::string out = out_path(output);
      save_mixture(mixture, spec, out);

      std::string cats_joined;
      for (auto c : spec.categories) {
        if (!cats_joined.empty()) cats_joined += ',';
        cats_joined += to_string(c);
      }
      write_manifest(
          out, "mix",
          effective_config(
              {{"stage", std::to_string(spec.stage)},
               {"seed", std::to_string(spec.seed)},
               {"synth_ratio", std::to_string(spec.synthetic_ratio)},
               {"da_mqm_ratio", std::to_string(spec.da_mqm_ratio)},
               {"char_budget", std::to_string(spec.char_budget)},
               {"duplicate_all_modes",
                spec.duplicate_all_modes ? "true" : "false"},
               {"categories", cats_joined}}),
          spec.seed, inputs,
          {{"records", std::to_string(mixture.size())}}, warnings);
      log_info("assembled " + std::to_string(mixture.size()) +
               " training records -> " + out);
    });
  }

  // ---- score-baseline ----
  auto* score_cmd = app.add_subcommand(
      "score-baseline",
      "score ratings or a challenge set with the lexical baseline metric");
  {
    static std::string ratings_path, challenge_path, output, lp_filter;
    static int max_ngram = 6;
    static double beta = 2.0;
    score_cmd->add_option("--ratings", ratings_path, "ratings JSONL to score");
    score_cmd->add_option("--challenge", challenge_path,
                          "challenge JSONL to score (both sides)");
    score_cmd->add_option("--output", output, "output score file")->required();
    score_cmd->add_option("--lp", lp_filter,
                          "score only this language pair (ratings mode)");
    auto* ngram_opt =
        score_cmd->add_option("--max-ngram", max_ngram, "n-gram order");
    auto* beta_opt = score_cmd->add_option("--beta", beta, "F-score beta");
    score_cmd->callback([&, ngram_opt, beta_opt]() {
      load_cfg();
      if (ratings_path.empty() == challenge_path.empty()) {
        throw ValidationError(
            "score-baseline needs exactly one of --ratings or --challenge");
      }
      BaselineConfig config;
      config.max_ngram = static_cast<int>(resolver.u64(
          ngram_opt, static_cast<std::uint64_t>(max_ngram), "max_ngram", 6));
      config.beta = resolver.num(beta_opt, beta, "beta", 2.0);
      auto cfg = effective_config(
          {{"max_ngram", std::to_string(config.max_ngram)},
           {"beta", std::to_string(config.beta)}});

      if (!challenge_path.empty()) {
        auto pairs = load_challenge(challenge_path);
        auto scores = baseline_challenge_scores(pairs, config);
        const std::string out = out_path(output);
        save_challenge_scores(scores, out);
        write_manifest(out, "score-baseline", cfg, 0, {challenge_path},
                       {{"scored_sides", std::to_string(scores.scores.size())}});
        log_info("scored " + std::to_string(scores.scores.size()) +
                 " challenge sides -> " + out);
        return;
      }

      auto records = load_ratings(ratings_path, RatingsFormat::Jsonl);
      std::vector<LanguagePair> lps;
      if (!lp_filter.empty()) {
        lps.push_back(parse_lp(lp_filter));
      } else {
        for (const auto& r : records) {
          bool known = false;
          for (const auto& lp : lps) known = known || lp == r.lp;
          if (!known) lps.push_back(r.lp);
        }
        std::sort(lps.begin(), lps.end());
      }
      if (lps.empty()) throw ValidationError("no records to score");
      for (const auto& lp : lps) {
        Warnings warnings;
        auto scores = baseline_score_set(records, lp, config, &warnings);
        log_warnings(warnings);
        std::string path = output;
        if (lps.size() > 1) {
          fs::path p(output);
          const std::string ext = p.extension().string();
          p.replace_extension();
          path = p.string() + "." + lp.str() + ext;
        }
        path = out_path(path);
        save_scores(scores, path);
        write_manifest(path, "score-baseline", cfg, 0, {ratings_path},
                       {{"lp", lp.str()},
                        {"entries", std::to_string(scores.entries.size())}},
                       warnings);
        log_info("scored " + std::to_string(scores.entries.size()) +
                 " segments (" + lp.str() + ") -> " + path);
      }
    });
  }

  // ---- eval ----
  auto* eval_cmd = app.add_subcommand(
      "eval", "segment/system pairwise accuracy with tie calibration and "
              "Pearson, per language pair");
  {
    static std::string ratings_path, output;
    static std::vector<std::string> score_paths;
    eval_cmd->add_option("--ratings", ratings_path, "human ratings JSONL")
        ->required();
    eval_cmd->add_option("--scores", score_paths,
                         "metric score file(s), one per language pair")
        ->required();
    eval_cmd->add_option("--output", output, "report JSON path")->required();
    eval_cmd->callback([&]() {
      auto ratings = load_ratings(ratings_path, RatingsFormat::Jsonl);
      std::vector<EvalReport> reports;
      for (const auto& path : score_paths) {
        auto scores = load_scores(path);
        Warnings warnings;
        reports.push_back(evaluate(ratings, scores, &warnings));
        log_warnings(warnings);
      }
      const std::string out = out_path(output);
      save_reports(reports, out);
      const std::string table =
          render_report_table({{stem_of(output), reports}});
      write_text(table_path_for(out), table);
      std::vector<std::string> inputs = {ratings_path};
      inputs.insert(inputs.end(), score_paths.begin(), score_paths.end());
      write_manifest(out, "eval", effective_config({}), 0, inputs,
                     {{"language_pairs", std::to_string(reports.size())}});
      log_info("wrote " + out + " and " + table_path_for(out));
    });
  }

  // ---- challenge-eval ----
  auto* cheval = app.add_subcommand(
      "challenge-eval",
      "per-category ranking accuracy of a metric on a challenge set");
  {
    static std::string challenge_path, scores_path, output;
    cheval->add_option("--challenge", challenge_path, "challenge JSONL")
        ->required();
    cheval->add_option("--scores", scores_path, "challenge score file")
        ->required();
    cheval->add_option("--output", output, "report JSON path")->required();
    cheval->callback([&]() {
      auto pairs = load_challenge(challenge_path);
      auto scores = load_challenge_scores(scores_path);
      Warnings warnings;
      auto report = evaluate_challenge(pairs, scores, &warnings);
      log_warnings(warnings);
      const std::string out = out_path(output);
      save_challenge_report(report, out);
      write_text(table_path_for(out), render_challenge_table(report));
      write_manifest(out, "challenge-eval", effective_config({}), 0,
                     {challenge_path, scores_path}, {}, warnings);
      log_info("wrote " + out + " and " + table_path_for(out));
    });
  }

  // ---- select-checkpoint ----
  auto* select = app.add_subcommand(
      "select-checkpoint",
      "rank checkpoints by 3/4 segment + 1/4 system accuracy sums");
  {
    static std::string evals_dir, output, lps_csv;
    select->add_option("--evals", evals_dir,
                       "directory of <checkpoint>.json report files")
        ->required();
    select->add_option("--output", output, "selection JSON path")->required();
    auto* lps_opt = select->add_option(
        "--lps", lps_csv, "language pairs (default en-de,en-zh,zh-en)");
    select->callback([&, lps_opt]() {
      load_cfg();
      std::vector<std::string> lps = kDefaultSelectionLps;
      const std::string lps_value = resolver.str(lps_opt, lps_csv, "lps", "");
      if (!lps_value.empty()) lps = split_list(lps_value, ',');

      std::vector<CheckpointEval> evals;
      std::vector<std::string> inputs;
      std::vector<fs::path> files;
      if (!fs::is_directory(evals_dir)) {
        throw IoError("--evals is not a directory: " + evals_dir);
      }
      for (const auto& entry : fs::directory_iterator(evals_dir)) {
        if (entry.path().extension() == ".json") files.push_back(entry.path());
      }
      std::sort(files.begin(), files.end());
      for (const auto& file : files) {
        evals.push_back(CheckpointEval::from_reports(
            file.stem().string(), load_reports(file.string())));
        inputs.push_back(file.string());
      }
      auto ranked = rank_checkpoints(evals, lps);
      const std::string best = select_best(evals, lps);

      nlohmann::json j;
      j["best"] = best;
      j["lps"] = lps;
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& [id, score] : ranked) {
        arr.push_back({{"checkpoint_id", id}, {"score", score}});
      }
      j["ranking"] = arr;
      const std::string out = out_path(output);
      write_text(out, j.dump(2) + "\n");

      std::ostringstream table;
      table << "checkpoint                      score\n";
      for (const auto& [id, score] : ranked) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%-30s  %.6f\n", id.c_str(), score);
        table << buf;
      }
      write_text(table_path_for(out), table.str());
      std::string lps_joined;
      for (const auto& lp : lps) {
        if (!lps_joined.empty()) lps_joined += ',';
        lps_joined += lp;
      }
      write_manifest(out, "select-checkpoint",
                     effective_config({{"lps", lps_joined}}), 0, inputs,
                     {{"best", best}});
      log_info("best checkpoint: " + best + " -> " + out);
    });
  }

  // ---- report ----
  auto* report_cmd = app.add_subcommand(
      "report", "combined variants-by-language-pairs accuracy table");
  {
    static std::vector<std::string> eval_paths;
    static std::string output;
    static bool pearson_table = false;
    report_cmd->add_option("--evals", eval_paths, "report JSON files")
        ->required();
    report_cmd->add_option("--output", output, "table text path")->required();
    report_cmd->add_flag("--pearson", pearson_table,
                         "tabulate Pearson instead of accuracy");
    report_cmd->callback([&]() {
      std::vector<std::pair<std::string, std::vector<EvalReport>>> variants;
      for (const auto& path : eval_paths) {
        variants.emplace_back(stem_of(path), load_reports(path));
      }
      const std::string out = out_path(output);
      write_text(out, render_report_table(variants, pearson_table));
      write_manifest(out, "report",
                     effective_config(
                         {{"pearson", pearson_table ? "true" : "false"}}),
                     0, eval_paths);
      log_info("wrote " + out);
    });
  }

  // let subcommands accept the app-level --config flag
  for (auto* sub : app.get_subcommands(nullptr)) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 64;
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "[mteval] error: %s\n", e.what());
    return 1;
  } catch (const IoError& e) {
    std::fprintf(stderr, "[mteval] i/o error: %s\n", e.what());
    return 2;
  }
  return rc;
}
