#include "irtmap/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace irtmap {

namespace {

double percentile(const std::vector<double>& sorted, double q) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = q * static_cast<double>(n - 1);
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= n) return sorted[n - 1];
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

VectorSummary summarize(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("cannot summarize an empty vector");
  VectorSummary out;
  out.count = static_cast<std::int64_t>(values.size());
  const double n = static_cast<double>(values.size());
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (const double v : values) ss += (v - out.mean) * (v - out.mean);
  out.std_dev = std::sqrt(ss / n);

  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  out.p25 = percentile(sorted, 0.25);
  out.median = percentile(sorted, 0.50);
  out.p75 = percentile(sorted, 0.75);
  return out;
}

ScatterSeries scatter(const std::vector<double>& estimates,
                      const std::vector<std::int64_t>& attempts,
                      const std::vector<std::string>& labels) {
  ScatterSeries series;
  series.labels = labels;
  series.x.reserve(estimates.size());
  series.y = estimates;
  for (const std::int64_t count : attempts) {
    series.x.push_back(std::log10(static_cast<double>(count)));
  }

  const double n = static_cast<double>(series.x.size());
  const double mean_x = std::accumulate(series.x.begin(), series.x.end(), 0.0) / n;
  const double mean_y = std::accumulate(series.y.begin(), series.y.end(), 0.0) / n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < series.x.size(); ++i) {
    sxx += (series.x[i] - mean_x) * (series.x[i] - mean_x);
    sxy += (series.x[i] - mean_x) * (series.y[i] - mean_y);
  }
  series.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  series.intercept = mean_y - series.slope * mean_x;
  return series;
}

}  // namespace

CohortSummary cohort_summary(const ModelParams& params) {
  return {summarize(params.theta), summarize(params.beta)};
}

SkillRanking rank_skills(const ModelParams& params, const std::vector<std::string>& skill_labels,
                         int k) {
  if (k < 1) throw std::invalid_argument("rank_skills: k must be at least 1");
  if (static_cast<std::size_t>(k) > params.beta.size()) {
    throw std::invalid_argument("rank_skills: k exceeds skill count");
  }
  if (skill_labels.size() != params.beta.size()) {
    throw std::invalid_argument("rank_skills: label count mismatch");
  }

  // Separate orderings so ties resolve to the lexicographically first label
  // on both sides.
  std::vector<std::size_t> ascending(params.beta.size());
  std::iota(ascending.begin(), ascending.end(), 0);
  std::vector<std::size_t> descending = ascending;
  std::sort(ascending.begin(), ascending.end(), [&](std::size_t a, std::size_t b) {
    if (params.beta[a] != params.beta[b]) return params.beta[a] < params.beta[b];
    return skill_labels[a] < skill_labels[b];
  });
  std::sort(descending.begin(), descending.end(), [&](std::size_t a, std::size_t b) {
    if (params.beta[a] != params.beta[b]) return params.beta[a] > params.beta[b];
    return skill_labels[a] < skill_labels[b];
  });

  SkillRanking ranking;
  for (int i = 0; i < k; ++i) {
    const std::size_t easy = ascending[static_cast<std::size_t>(i)];
    ranking.easiest.emplace_back(skill_labels[easy], params.beta[easy]);
    const std::size_t hard = descending[static_cast<std::size_t>(i)];
    ranking.hardest.emplace_back(skill_labels[hard], params.beta[hard]);
  }
  return ranking;
}

double relative_mastery(const CohortSummary& summary) {
  return summary.ability.mean - summary.difficulty.mean;
}

Histogram ability_histogram(const ModelParams& params, int bins) {
  if (bins < 1) throw std::invalid_argument("ability_histogram: bins must be at least 1");
  const std::vector<double>& theta = params.theta;
  if (theta.empty()) throw std::invalid_argument("ability_histogram: no students");

  const auto [min_it, max_it] = std::minmax_element(theta.begin(), theta.end());
  double lo = *min_it;
  double hi = *max_it;

  Histogram hist;
  if (lo == hi) {
    // Degenerate range: one unit-width bin centered at the value.
    hist.edges = {lo - 0.5, lo + 0.5};
    hist.proportions = {1.0};
    return hist;
  }

  const double width = (hi - lo) / static_cast<double>(bins);
  hist.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int b = 0; b <= bins; ++b) {
    hist.edges[static_cast<std::size_t>(b)] = lo + width * static_cast<double>(b);
  }
  hist.edges.back() = hi;

  hist.proportions.assign(static_cast<std::size_t>(bins), 0.0);
  const double share = 1.0 / static_cast<double>(theta.size());
  for (const double t : theta) {
    int b = static_cast<int>((t - lo) / width);
    if (b >= bins) b = bins - 1;  // right-most bin is closed
    hist.proportions[static_cast<std::size_t>(b)] += share;
  }
  return hist;
}

ScatterSeries difficulty_vs_practice(const ModelParams& params, const InteractionTable& table) {
  return scatter(params.beta, table.attempts_per_skill, table.skill_labels);
}

ScatterSeries ability_vs_attempts(const ModelParams& params, const InteractionTable& table) {
  return scatter(params.theta, table.attempts_per_student, table.student_labels);
}

std::vector<SkillComparison> skill_observed_vs_predicted(const ModelParams& params,
                                                         const InteractionTable& table,
                                                         const std::vector<std::string>& skills) {
  std::vector<SkillComparison> rows;
  for (const std::string& label : skills) {
    const auto it = std::find(table.skill_labels.begin(), table.skill_labels.end(), label);
    if (it == table.skill_labels.end()) {
      throw std::invalid_argument("unknown skill label: " + label);
    }
    const std::int32_t k = static_cast<std::int32_t>(it - table.skill_labels.begin());

    SkillComparison row;
    row.label = label;
    double observed = 0.0;
    double predicted = 0.0;
    std::int64_t count = 0;
    for (const auto& r : table.records) {
      if (r.skill != k) continue;
      observed += static_cast<double>(r.correct);
      predicted += predict_prob(params.theta[static_cast<std::size_t>(r.student)],
                                params.beta[static_cast<std::size_t>(r.skill)]);
      ++count;
    }
    if (count == 0) throw std::invalid_argument("skill has no attempts: " + label);
    row.observed_fraction = observed / static_cast<double>(count);
    row.mean_predicted = predicted / static_cast<double>(count);
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

Trajectory trajectory_for_index(const ModelParams& params, const InteractionTable& table,
                                std::int32_t student) {
  Trajectory trajectory;
  trajectory.student = table.student_labels[static_cast<std::size_t>(student)];

  std::vector<const Interaction*> rows;
  for (const auto& r : table.records) {
    if (r.student == student) rows.push_back(&r);
  }
  std::sort(rows.begin(), rows.end(),
            [](const Interaction* a, const Interaction* b) { return a->order < b->order; });

  std::int64_t attempt = 0;
  for (const Interaction* r : rows) {
    TrajectoryPoint point;
    point.attempt_index = attempt++;
    point.skill = table.skill_labels[static_cast<std::size_t>(r->skill)];
    point.predicted = predict_prob(params.theta[static_cast<std::size_t>(r->student)],
                                   params.beta[static_cast<std::size_t>(r->skill)]);
    point.observed = r->correct;
    trajectory.points.push_back(std::move(point));
  }
  return trajectory;
}

}  // namespace

Trajectory student_trajectory(const ModelParams& params, const InteractionTable& table,
                              const std::string& student) {
  const auto it = std::find(table.student_labels.begin(), table.student_labels.end(), student);
  if (it == table.student_labels.end()) {
    throw std::invalid_argument("unknown student label: " + student);
  }
  return trajectory_for_index(params, table,
                              static_cast<std::int32_t>(it - table.student_labels.begin()));
}

Trajectory student_trajectory(const ModelParams& params, const InteractionTable& table,
                              StudentSelector selector) {
  if (params.theta.empty()) throw std::invalid_argument("no students");
  const auto it = selector == StudentSelector::lowest
                      ? std::min_element(params.theta.begin(), params.theta.end())
                      : std::max_element(params.theta.begin(), params.theta.end());
  return trajectory_for_index(params, table,
                              static_cast<std::int32_t>(it - params.theta.begin()));
}

}  // namespace irtmap
