#include <cmath>

#include "doctest.h"
#include "irtmap/analytics.hpp"
#include "test_support.hpp"

using namespace irtmap;

namespace {

ModelParams params_from(std::vector<double> theta, std::vector<double> beta) {
  return {std::move(theta), std::move(beta)};
}

}  // namespace

TEST_CASE("cohort summary basics") {
  const auto summary = cohort_summary(params_from({1.0, 2.0, 3.0}, {0.0}));
  CHECK(summary.ability.count == 3);
  CHECK(summary.ability.mean == doctest::Approx(2.0));
  CHECK(summary.ability.median == doctest::Approx(2.0));
  CHECK(summary.ability.p25 == doctest::Approx(1.5));  // linear interpolation
  CHECK(summary.ability.p75 == doctest::Approx(2.5));
}

TEST_CASE("constant vector summary") {
  const auto summary = cohort_summary(params_from({4.0, 4.0, 4.0, 4.0}, {4.0}));
  CHECK(summary.ability.std_dev == 0.0);
  CHECK(summary.ability.p25 == 4.0);
  CHECK(summary.ability.median == 4.0);
  CHECK(summary.ability.p75 == 4.0);
}

TEST_CASE("rank_skills extremes and tie rule") {
  const std::vector<std::string> labels = {"b", "a", "c"};
  SUBCASE("distinct values") {
    const auto ranking = rank_skills(params_from({0.0}, {-1.0, 0.0, 1.0}), labels, 1);
    CHECK(ranking.easiest == std::vector<std::pair<std::string, double>>{{"b", -1.0}});
    CHECK(ranking.hardest == std::vector<std::pair<std::string, double>>{{"c", 1.0}});
  }
  SUBCASE("all tied: lexicographically first label on both sides") {
    const auto ranking = rank_skills(params_from({0.0}, {2.0, 2.0, 2.0}), labels, 1);
    CHECK(ranking.easiest[0].first == "a");
    CHECK(ranking.hardest[0].first == "a");
  }
  SUBCASE("k validation") {
    CHECK_THROWS_AS(rank_skills(params_from({0.0}, {1.0}), {"a"}, 0), std::invalid_argument);
    CHECK_THROWS_AS(rank_skills(params_from({0.0}, {1.0}), {"a"}, 2), std::invalid_argument);
  }
}

TEST_CASE("rank_skills values are actual difficulty entries") {
  const InteractionTable table = test::random_table(10, 6, 100, 41);
  const ModelParams params = test::random_params(table, 4.0, 42);
  const auto ranking = rank_skills(params, table.skill_labels, 3);
  const double global_min = *std::min_element(params.beta.begin(), params.beta.end());
  const double global_max = *std::max_element(params.beta.begin(), params.beta.end());
  CHECK(ranking.easiest.front().second == global_min);
  CHECK(ranking.hardest.front().second == global_max);
  CHECK(std::is_sorted(ranking.easiest.begin(), ranking.easiest.end(),
                       [](const auto& a, const auto& b) { return a.second < b.second; }));
}

TEST_CASE("relative mastery is the difference of means") {
  CohortSummary summary;
  summary.ability.mean = 0.09;
  summary.difficulty.mean = -2.40;
  CHECK(relative_mastery(summary) == 0.09 - (-2.40));
  CHECK(relative_mastery(summary) == doctest::Approx(2.49).epsilon(1e-12));

  summary.ability.mean = 1.0;
  summary.difficulty.mean = 1.0;
  CHECK(relative_mastery(summary) == 0.0);
}

TEST_CASE("ability histogram") {
  SUBCASE("single student degenerates to one unit bin") {
    const Histogram hist = ability_histogram(params_from({3.0}, {0.0}), 30);
    REQUIRE(hist.proportions.size() == 1);
    CHECK(hist.proportions[0] == 1.0);
    CHECK(hist.edges[0] == doctest::Approx(2.5));
    CHECK(hist.edges[1] == doctest::Approx(3.5));
  }
  SUBCASE("uniform grid spreads evenly") {
    std::vector<double> theta;
    for (int i = 0; i < 30; ++i) theta.push_back(static_cast<double>(i));
    const Histogram hist = ability_histogram(params_from(std::move(theta), {0.0}), 30);
    REQUIRE(hist.proportions.size() == 30);
    for (const double p : hist.proportions) CHECK(p == doctest::Approx(1.0 / 30.0).epsilon(1e-12));
  }
  SUBCASE("proportions sum to one on random inputs") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      SplitMix64 rng(seed);
      std::vector<double> theta;
      for (int i = 0; i < 137; ++i) theta.push_back(20.0 * rng.next_unit() - 10.0);
      const Histogram hist = ability_histogram(params_from(std::move(theta), {0.0}), 30);
      double total = 0.0;
      for (const double p : hist.proportions) total += p;
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("difficulty vs practice scatter") {
  std::vector<ResponseRecord> records;
  int order = 0;
  for (int i = 0; i < 100; ++i) records.push_back({"s" + std::to_string(i % 3), "k0", 1, order++});
  for (int i = 0; i < 10; ++i) records.push_back({"s0", "k1", 0, order++});
  const InteractionTable table = build_table(records);

  SUBCASE("x is log10 of the attempt count") {
    const ScatterSeries series = difficulty_vs_practice(params_from({0, 0, 0}, {1.0, 1.0}), table);
    CHECK(series.x[0] == doctest::Approx(2.0));
    CHECK(series.x[1] == doctest::Approx(1.0));
    CHECK(series.slope == 0.0);  // equal difficulties
  }
  SUBCASE("easier high-count skills give a negative slope") {
    const ScatterSeries series = difficulty_vs_practice(params_from({0, 0, 0}, {-3.0, 2.0}), table);
    CHECK(series.slope < 0.0);
  }
}

TEST_CASE("ability vs attempts has one point per student") {
  const InteractionTable table = test::random_table(25, 5, 300, 91);
  const ModelParams params = test::random_params(table, 2.0, 92);
  const ScatterSeries series = ability_vs_attempts(params, table);
  CHECK(series.x.size() == static_cast<std::size_t>(table.num_students));
  // student with 10 attempts maps to x = 1
  for (std::size_t s = 0; s < series.x.size(); ++s) {
    if (table.attempts_per_student[s] == 10) CHECK(series.x[s] == doctest::Approx(1.0));
  }
}

TEST_CASE("skill observed vs predicted") {
  std::vector<ResponseRecord> records = {{"s0", "k0", 1, 0}};
  const InteractionTable table = build_table(records);
  // beta chosen so theta - beta = ln 9, hence predicted probability 0.9
  ModelParams params = params_from({2.0}, {2.0 - std::log(9.0)});

  SUBCASE("single record skill") {
    const auto rows = skill_observed_vs_predicted(params, table, {"k0"});
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].observed_fraction == 1.0);
    CHECK(rows[0].mean_predicted == doctest::Approx(0.9).epsilon(1e-9));
  }
  SUBCASE("unknown skill throws") {
    CHECK_THROWS_AS(skill_observed_vs_predicted(params, table, {"nope"}), std::invalid_argument);
  }
}

TEST_CASE("skill observed fractions match brute-force recomputation") {
  const InteractionTable table = test::random_table(12, 4, 200, 61);
  const ModelParams params = test::random_params(table, 2.0, 62);
  const auto rows = skill_observed_vs_predicted(params, table, table.skill_labels);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    double correct = 0.0;
    std::int64_t count = 0;
    for (const auto& r : table.records) {
      if (static_cast<std::size_t>(r.skill) == k) {
        correct += r.correct;
        ++count;
      }
    }
    CHECK(rows[k].observed_fraction == correct / static_cast<double>(count));
  }
}

TEST_CASE("student trajectory") {
  std::vector<ResponseRecord> records = {
      {"a", "k0", 1, 0}, {"b", "k0", 0, 1}, {"a", "k1", 0, 2}, {"a", "k0", 1, 3}};
  const InteractionTable table = build_table(records);
  const ModelParams params = params_from({-1.0, 2.0}, {0.0, 1.0});

  SUBCASE("selector lowest picks the argmin ability") {
    const Trajectory traj = student_trajectory(params, table, StudentSelector::lowest);
    CHECK(traj.student == "a");
    REQUIRE(traj.points.size() == 3);  // length equals that student's attempts
    CHECK(traj.points[0].attempt_index == 0);
    CHECK(traj.points[1].attempt_index == 1);
    CHECK(traj.points[1].skill == "k1");
    // probabilities are exactly predict_prob of the fitted parameters
    CHECK(traj.points[0].predicted == predict_prob(-1.0, 0.0));
    CHECK(traj.points[1].predicted == predict_prob(-1.0, 1.0));
  }
  SUBCASE("single-skill student has a constant sequence") {
    const Trajectory traj = student_trajectory(params, table, std::string("b"));
    REQUIRE(traj.points.size() == 1);
    CHECK(traj.points[0].predicted == predict_prob(2.0, 0.0));
  }
  SUBCASE("unknown student throws") {
    CHECK_THROWS_AS(student_trajectory(params, table, std::string("zz")), std::invalid_argument);
  }
}
