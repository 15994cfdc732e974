#pragma once

#include <string>
#include <vector>

#include "irtmap/fit.hpp"
#include "irtmap/model.hpp"
#include "irtmap/table.hpp"

namespace irtmap {

struct VectorSummary {
  std::int64_t count = 0;
  double mean = 0.0;
  double std_dev = 0.0;  // population (divide by n)
  double p25 = 0.0;
  double median = 0.0;
  double p75 = 0.0;
};

struct CohortSummary {
  VectorSummary ability;
  VectorSummary difficulty;
};

// Percentiles use linear interpolation between closest order statistics:
// rank h = q * (n - 1), value = v[floor(h)] + frac(h) * (v[floor(h)+1] - v[floor(h)]).
CohortSummary cohort_summary(const ModelParams& params);

struct SkillRanking {
  // (label, difficulty); easiest ascending from the minimum, hardest
  // descending from the maximum. Ties break on label lexicographic order.
  std::vector<std::pair<std::string, double>> easiest;
  std::vector<std::pair<std::string, double>> hardest;
};

SkillRanking rank_skills(const ModelParams& params, const std::vector<std::string>& skill_labels,
                         int k = 5);

// Mean ability minus mean difficulty, in logits.
double relative_mastery(const CohortSummary& summary);

struct Histogram {
  std::vector<double> edges;        // bins + 1 entries
  std::vector<double> proportions;  // sums to 1
};

// Equal-width bins over [min, max]; right-most bin closed. A degenerate range
// (all values equal) yields a single bin of width 1 centered at the value.
Histogram ability_histogram(const ModelParams& params, int bins = 30);

struct ScatterSeries {
  std::vector<std::string> labels;
  std::vector<double> x;  // log10 attempt count
  std::vector<double> y;  // estimated logit
  double slope = 0.0;     // OLS of y on x
  double intercept = 0.0;
};

ScatterSeries difficulty_vs_practice(const ModelParams& params, const InteractionTable& table);
ScatterSeries ability_vs_attempts(const ModelParams& params, const InteractionTable& table);

struct SkillComparison {
  std::string label;
  double observed_fraction = 0.0;
  double mean_predicted = 0.0;
};

// Per-skill observed fraction correct vs. mean predicted probability over the
// same records. Throws on an unknown skill label.
std::vector<SkillComparison> skill_observed_vs_predicted(const ModelParams& params,
                                                         const InteractionTable& table,
                                                         const std::vector<std::string>& skills);

struct TrajectoryPoint {
  std::int64_t attempt_index = 0;
  std::string skill;
  double predicted = 0.0;
  int observed = 0;
};

struct Trajectory {
  std::string student;
  std::vector<TrajectoryPoint> points;
};

enum class StudentSelector { lowest, highest };

Trajectory student_trajectory(const ModelParams& params, const InteractionTable& table,
                              const std::string& student);
Trajectory student_trajectory(const ModelParams& params, const InteractionTable& table,
                              StudentSelector selector);

}  // namespace irtmap
