#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <unistd.h>

#include "mteval/metaeval.hpp"
#include "support.hpp"

using namespace mteval;
namespace fs = std::filesystem;

namespace {

// instance generator shared by the oracle-equivalence tests
struct Instance {
  std::vector<SegGroup> groups;
  std::vector<testsupport::OracleGroup> oracle_groups;
};

Instance random_instance(std::uint64_t seed, std::size_t max_groups = 10,
                         std::size_t max_per_group = 6) {
  testsupport::Rng rng(seed);
  Instance inst;
  const std::size_t n_groups = 1 + rng.below(max_groups);
  for (std::size_t g = 0; g < n_groups; ++g) {
    SegGroup group;
    group.segment_id = "seg" + std::to_string(g);
    const std::size_t n = 2 + rng.below(max_per_group - 1);
    for (std::size_t i = 0; i < n; ++i) {
      // discrete humans produce ties; metric scores sit on a dyadic grid
      // (multiples of 1/8) so that ties, differences and affine rescaling
      // stay exact in double arithmetic
      const double human = static_cast<double>(rng.below(4));
      const double metric =
          rng.below(10) == 0 ? 0.5 : static_cast<double>(rng.below(33)) / 8.0;
      group.entries.emplace_back(human, metric);
    }
    inst.oracle_groups.emplace_back(group.entries);
    inst.groups.push_back(std::move(group));
  }
  return inst;
}

}  // namespace

TEST_CASE("pearson matches closed forms") {
  std::vector<double> xs = {1, 2, 3};
  CHECK(pearson(xs, std::vector<double>{3, 5, 7}) ==
        doctest::Approx(1.0).epsilon(1e-12));  // ys = 2x + 1
  CHECK(pearson(xs, std::vector<double>{-1, -2, -3}) ==
        doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(pearson(xs, std::vector<double>{1, 3, 2}) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("pearson rejects degenerate input naming the bad side") {
  std::vector<double> xs = {1, 2, 3};
  std::vector<double> flat = {5, 5, 5};
  CHECK_THROWS_WITH_AS(pearson(flat, xs), doctest::Contains("first"),
                       ValidationError);
  CHECK_THROWS_WITH_AS(pearson(xs, flat), doctest::Contains("second"),
                       ValidationError);
  CHECK_THROWS_AS(pearson(std::vector<double>{1}, std::vector<double>{2}),
                  ValidationError);
}

TEST_CASE("pearson agrees with the textbook oracle on random data") {
  testsupport::Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> xs, ys;
    const std::size_t n = 2 + rng.below(40);
    for (std::size_t i = 0; i < n; ++i) {
      xs.push_back(rng.real(-5, 5));
      ys.push_back(rng.real(-5, 5));
    }
    CHECK(pearson(xs, ys) ==
          doctest::Approx(testsupport::oracle_pearson(xs, ys)).epsilon(1e-9));
  }
}

TEST_CASE("system pairwise accuracy enumerates pairs") {
  std::vector<SystemScore> systems = {
      {"A", 1, 10}, {"B", 2, 20}, {"C", 3, 30}};
  CHECK(sys_pairwise_accuracy(systems, Orientation::HigherBetter,
                              Orientation::HigherBetter) == 1.0);

  // lower-better metric ranked perfectly after alignment
  std::vector<SystemScore> flipped = {
      {"A", 1, 0.3}, {"B", 2, 0.2}, {"C", 3, 0.1}};
  CHECK(sys_pairwise_accuracy(flipped, Orientation::HigherBetter,
                              Orientation::LowerBetter) == 1.0);

  // one inverted pair out of three
  std::vector<SystemScore> partial = {{"A", 1, 2}, {"B", 2, 1}, {"C", 3, 3}};
  CHECK(sys_pairwise_accuracy(partial, Orientation::HigherBetter,
                              Orientation::HigherBetter) ==
        doctest::Approx(2.0 / 3.0));
}

TEST_CASE("human ties leave the denominator, metric ties lose") {
  std::vector<SystemScore> systems = {{"A", 1, 1}, {"B", 1, 2}, {"C", 2, 3}};
  // pairs: (A,B) human-tied -> excluded; (A,C) and (B,C) correct
  CHECK(sys_pairwise_accuracy(systems, Orientation::HigherBetter,
                              Orientation::HigherBetter) == 1.0);
  std::vector<SystemScore> tie = {{"A", 1, 5}, {"B", 2, 5}};
  CHECK(sys_pairwise_accuracy(tie, Orientation::HigherBetter,
                              Orientation::HigherBetter) == 0.0);
  std::vector<SystemScore> all_tied = {{"A", 1, 1}, {"B", 1, 2}};
  CHECK_THROWS_AS(sys_pairwise_accuracy(all_tied, Orientation::HigherBetter,
                                        Orientation::HigherBetter),
                  ValidationError);
}

TEST_CASE("segment accuracy: calibration worked example") {
  SegGroup g{"s", {{1, 0.10}, {1, 0.11}, {2, 0.50}}};
  const std::vector<SegGroup> groups = {g};
  CHECK(seg_pairwise_accuracy(groups, 0.0, Orientation::HigherBetter,
                              Orientation::HigherBetter) ==
        doctest::Approx(2.0 / 3.0));
  auto tie = calibrate_ties(groups, Orientation::HigherBetter,
                            Orientation::HigherBetter);
  CHECK(tie.achieved_accuracy == doctest::Approx(1.0));
  // smallest maximizing candidate: the 0.01 difference itself
  CHECK(tie.epsilon == doctest::Approx(0.01));
  CHECK(tie.epsilon < 0.39);
  CHECK(seg_pairwise_accuracy(groups, tie.epsilon, Orientation::HigherBetter,
                              Orientation::HigherBetter) ==
        doctest::Approx(1.0));
}

TEST_CASE("all-distinct metric with no human ties calibrates to zero") {
  SegGroup g{"s", {{1, 0.1}, {2, 0.2}, {3, 0.4}}};
  auto tie = calibrate_ties({g}, Orientation::HigherBetter,
                            Orientation::HigherBetter);
  CHECK(tie.epsilon == 0.0);
  CHECK(tie.achieved_accuracy == 1.0);
}

TEST_CASE("single human-tied pair calibrates to the smallest covering "
          "threshold") {
  SegGroup g{"s", {{1, 0.4}, {1, 0.7}}};
  auto tie = calibrate_ties({g}, Orientation::HigherBetter,
                            Orientation::HigherBetter);
  CHECK(tie.achieved_accuracy == 1.0);
  CHECK(tie.epsilon == doctest::Approx(0.3));
}

TEST_CASE("group accuracies average per group, not pooled") {
  // group 1: one pair, correct; group 2: two pairs, one correct
  SegGroup g1{"a", {{1, 0.1}, {2, 0.2}}};
  SegGroup g2{"b", {{1, 0.3}, {2, 0.2}, {3, 0.4}}};
  // g2 pairs after alignment: (1,2): h up, m down -> wrong; (1,3): up/up ok;
  // (2,3): up/up ok -> 2/3
  const double acc = seg_pairwise_accuracy({g1, g2}, 0.0,
                                           Orientation::HigherBetter,
                                           Orientation::HigherBetter);
  CHECK(acc == doctest::Approx((1.0 + 2.0 / 3.0) / 2.0));
}

TEST_CASE("segment accuracy equals exhaustive enumeration on random "
          "instances") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    auto inst = random_instance(seed);
    for (double eps : {0.0, 0.05, 0.2, 1.0}) {
      const double got =
          seg_pairwise_accuracy(inst.groups, eps, Orientation::HigherBetter,
                                Orientation::HigherBetter);
      const double want = testsupport::oracle_seg_accuracy(inst.oracle_groups,
                                                           eps);
      CHECK(got == want);  // exact: the arithmetic path is identical
    }
  }
}

TEST_CASE("tie calibration matches the exhaustive sweep exactly") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto inst = random_instance(seed);
    auto tie = calibrate_ties(inst.groups, Orientation::HigherBetter,
                              Orientation::HigherBetter);
    auto [oracle_eps, oracle_acc] =
        testsupport::oracle_calibrate(inst.oracle_groups);
    CHECK(tie.achieved_accuracy == oracle_acc);
    CHECK(tie.epsilon == oracle_eps);
  }
}

TEST_CASE("calibration never loses to epsilon zero") {
  for (std::uint64_t seed = 300; seed < 350; ++seed) {
    auto inst = random_instance(seed);
    auto tie = calibrate_ties(inst.groups, Orientation::HigherBetter,
                              Orientation::HigherBetter);
    CHECK(tie.achieved_accuracy >=
          seg_pairwise_accuracy(inst.groups, 0.0, Orientation::HigherBetter,
                                Orientation::HigherBetter));
  }
}

TEST_CASE("orientation flip leaves every statistic unchanged") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto inst = random_instance(seed);
    auto flipped = inst.groups;
    for (auto& g : flipped) {
      for (auto& [h, m] : g.entries) m = -m;
    }
    auto a = calibrate_ties(inst.groups, Orientation::HigherBetter,
                            Orientation::HigherBetter);
    auto b = calibrate_ties(flipped, Orientation::HigherBetter,
                            Orientation::LowerBetter);
    CHECK(a.achieved_accuracy == b.achieved_accuracy);
    CHECK(a.epsilon == b.epsilon);
  }

  std::vector<SystemScore> systems = {{"A", 1, 2}, {"B", 2, 1}, {"C", 3, 3}};
  auto negated = systems;
  for (auto& s : negated) s.metric = -s.metric;
  CHECK(sys_pairwise_accuracy(systems, Orientation::HigherBetter,
                              Orientation::HigherBetter) ==
        sys_pairwise_accuracy(negated, Orientation::HigherBetter,
                              Orientation::LowerBetter));
}

TEST_CASE("accuracies are invariant under monotone metric transforms") {
  // strictly increasing transforms preserve order and exact ties, so the
  // system statistic and the epsilon=0 segment statistic cannot move;
  // positive affine maps rescale the candidate set, so the calibrated
  // accuracy is reproduced there as well
  auto monotone = [](double x) { return x * x * x + 2.0 * x; };
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto inst = random_instance(seed);

    auto transformed = inst.groups;
    for (auto& g : transformed) {
      for (auto& [h, m] : g.entries) m = monotone(m);
    }
    CHECK(seg_pairwise_accuracy(inst.groups, 0.0, Orientation::HigherBetter,
                                Orientation::HigherBetter) ==
          seg_pairwise_accuracy(transformed, 0.0, Orientation::HigherBetter,
                                Orientation::HigherBetter));

    auto affine = inst.groups;
    for (auto& g : affine) {
      for (auto& [h, m] : g.entries) m = 3.25 * m + 17.0;
    }
    auto base = calibrate_ties(inst.groups, Orientation::HigherBetter,
                               Orientation::HigherBetter);
    auto recal = calibrate_ties(affine, Orientation::HigherBetter,
                                Orientation::HigherBetter);
    CHECK(base.achieved_accuracy == recal.achieved_accuracy);
  }

  testsupport::Rng rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<SystemScore> systems;
    const std::size_t n = 2 + rng.below(8);
    for (std::size_t i = 0; i < n; ++i) {
      systems.push_back({"s" + std::to_string(i),
                         static_cast<double>(rng.below(5)),
                         rng.real(-2, 2)});
    }
    bool any_human_pair = false;
    for (std::size_t i = 0; i < n && !any_human_pair; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        any_human_pair = any_human_pair ||
                         systems[i].human != systems[j].human;
      }
    }
    if (!any_human_pair) continue;
    auto transformed = systems;
    for (auto& s : transformed) s.metric = monotone(s.metric);
    CHECK(sys_pairwise_accuracy(systems, Orientation::HigherBetter,
                                Orientation::HigherBetter) ==
          sys_pairwise_accuracy(transformed, Orientation::HigherBetter,
                                Orientation::HigherBetter));
  }
}

TEST_CASE("join, system scores and the full report") {
  // two systems over two segments, metric = affine transform of human
  std::vector<RatedSegment> ratings;
  ScoreSet scores;
  scores.lp = parse_lp("de-en");
  scores.orientation = Orientation::LowerBetter;  // MQM-like metric
  auto add = [&](const std::string& seg, const std::string& sys, double human,
                 double metric) {
    RatedSegment r;
    r.segment_id = seg;
    r.lp = parse_lp("de-en");
    r.system_id = sys;
    r.source = "s";
    r.hypothesis = "h";
    r.reference = "r";
    r.score = human;
    r.rating_kind = RatingKind::Mqm;
    ratings.push_back(r);
    scores.entries.push_back({seg, sys, metric});
  };
  add("s1", "A", 1, 2);   // metric = 2*human
  add("s1", "B", 3, 6);
  add("s2", "A", 3, 6);
  add("s2", "B", 5, 10);

  auto systems = system_scores(ratings, scores);
  REQUIRE(systems.size() == 2);
  CHECK(systems[0].system_id == "A");
  CHECK(systems[0].human == doctest::Approx(2.0));
  CHECK(systems[0].metric == doctest::Approx(4.0));
  CHECK(systems[1].human == doctest::Approx(4.0));

  auto report = evaluate(ratings, scores);
  CHECK(report.n_segments == 2);
  CHECK(report.n_systems == 2);
  CHECK(report.seg_acc == 1.0);
  CHECK(report.sys_acc == 1.0);
  CHECK(report.seg_pearson == doctest::Approx(1.0));
  CHECK(report.sys_pearson == doctest::Approx(1.0));
}

TEST_CASE("no_grouping_pearson flattens the join") {
  std::vector<RatedSegment> ratings;
  ScoreSet scores;
  scores.lp = parse_lp("de-en");
  scores.orientation = Orientation::HigherBetter;
  auto add = [&](const std::string& seg, double human, double metric) {
    RatedSegment r;
    r.segment_id = seg;
    r.lp = parse_lp("de-en");
    r.system_id = "A";
    r.source = "s";
    r.hypothesis = "h";
    r.score = human;
    r.rating_kind = RatingKind::DaZ;
    ratings.push_back(r);
    scores.entries.push_back({seg, "A", metric});
  };
  // 4-point hand case: r = 0.8
  add("s1", 1, 1);
  add("s2", 2, 2);
  add("s3", 3, 4);
  add("s4", 4, 3);
  const double got = no_grouping_pearson(ratings, scores);
  CHECK(got == doctest::Approx(0.8).epsilon(1e-12));

  ScoreSet flat = scores;
  for (auto& e : flat.entries) e.score = 7.0;
  CHECK_THROWS_AS(no_grouping_pearson(ratings, flat), ValidationError);
}

TEST_CASE("unjoinable inputs fail loudly, partial joins warn") {
  std::vector<RatedSegment> ratings;
  RatedSegment r;
  r.segment_id = "s1";
  r.lp = parse_lp("de-en");
  r.system_id = "A";
  r.source = "s";
  r.hypothesis = "h";
  r.score = 1;
  r.rating_kind = RatingKind::Mqm;
  ratings.push_back(r);

  ScoreSet scores;
  scores.lp = parse_lp("de-en");
  scores.orientation = Orientation::LowerBetter;
  scores.entries = {{"s9", "A", 1.0}};
  CHECK_THROWS_AS(system_scores(ratings, scores), ValidationError);

  scores.entries = {{"s1", "A", 1.0}, {"s9", "A", 2.0}};
  Warnings warnings;
  auto groups = make_groups(ratings, scores, &warnings);
  CHECK(groups.size() == 1);
  CHECK(!warnings.empty());

  ScoreSet other;
  other.lp = parse_lp("fr-en");
  other.orientation = Orientation::LowerBetter;
  other.entries = {{"s1", "A", 1.0}};
  CHECK_THROWS_AS(make_groups(ratings, other), ValidationError);
}

TEST_CASE("report files round trip") {
  namespace fs = std::filesystem;
  EvalReport r;
  r.lp = parse_lp("en-de");
  r.seg_acc = 0.625;
  r.seg_pearson = 0.5;
  r.sys_acc = 0.9375;
  r.sys_pearson = -0.25;
  r.tie = {0.125, 0.625};
  r.n_segments = 12;
  r.n_systems = 4;
  const auto path = (fs::temp_directory_path() /
                     ("mteval_report_" + std::to_string(::getpid()) + ".json"))
                        .string();
  save_reports({r}, path);
  auto loaded = load_reports(path);
  REQUIRE(loaded.size() == 1);
  CHECK(loaded[0].lp == r.lp);
  CHECK(loaded[0].seg_acc == r.seg_acc);
  CHECK(loaded[0].tie.epsilon == r.tie.epsilon);
  CHECK(loaded[0].n_systems == 4);
  fs::remove(path);

  auto table = render_report_table({{"variant-a", {r}}});
  CHECK(table.find("en-de") != std::string::npos);
  CHECK(table.find("62.50") != std::string::npos);  // seg accuracy in percent
  CHECK(table.find("93.75") != std::string::npos);
}
