#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "irtmap/csv.hpp"
#include "irtmap/model.hpp"
#include "irtmap/rng.hpp"
#include "irtmap/table.hpp"

namespace irtmap::test {

// Random table over at most `max_students` x `max_skills` labels; interning
// keeps only the entities that actually appear.
inline InteractionTable random_table(int max_students, int max_skills, int num_records,
                                     std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<ResponseRecord> records;
  records.reserve(static_cast<std::size_t>(num_records));
  for (int i = 0; i < num_records; ++i) {
    ResponseRecord r;
    r.student = "s" + std::to_string(rng.next_below(static_cast<std::uint64_t>(max_students)));
    r.skill = "k" + std::to_string(rng.next_below(static_cast<std::uint64_t>(max_skills)));
    r.correct = static_cast<int>(rng.next_below(2));
    r.order = i;
    records.push_back(std::move(r));
  }
  return build_table(records);
}

inline ModelParams random_params(const InteractionTable& table, double half_range,
                                 std::uint64_t seed) {
  SplitMix64 rng(seed);
  ModelParams params = ModelParams::zeros(table.num_students, table.num_skills);
  for (double& t : params.theta) t = half_range * (2.0 * rng.next_unit() - 1.0);
  for (double& b : params.beta) b = half_range * (2.0 * rng.next_unit() - 1.0);
  return params;
}

// Uniform-correctness table: one student, one skill, the given outcome counts.
inline InteractionTable single_cell_table(int num_correct, int num_incorrect) {
  std::vector<ResponseRecord> records;
  int order = 0;
  for (int i = 0; i < num_correct; ++i) records.push_back({"s0", "k0", 1, order++});
  for (int i = 0; i < num_incorrect; ++i) records.push_back({"s0", "k0", 0, order++});
  return build_table(records);
}

inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double mean_a = 0.0;
  double mean_b = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mean_a += a[i];
    mean_b += b[i];
  }
  mean_a /= n;
  mean_b /= n;
  double saa = 0.0;
  double sbb = 0.0;
  double sab = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    saa += (a[i] - mean_a) * (a[i] - mean_a);
    sbb += (b[i] - mean_b) * (b[i] - mean_b);
    sab += (a[i] - mean_a) * (b[i] - mean_b);
  }
  return sab / std::sqrt(saa * sbb);
}

// Root of 2 * sigma^2 * n_correct * (1 - sigmoid(d)) = d on [0, hi], found by
// bisection. Stationarity condition for a single all-correct cell with
// theta = -beta = d/2.
inline double separation_distance_oracle(int num_correct, double sigma_squared,
                                         double hi = 40.0) {
  auto h = [&](double d) {
    return 2.0 * sigma_squared * num_correct * (1.0 - 1.0 / (1.0 + std::exp(-d))) - d;
  };
  double lo = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace irtmap::test
