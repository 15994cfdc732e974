#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "irtmap/model.hpp"
#include "irtmap/table.hpp"

namespace irtmap {

struct GaussianSpec {
  double mean = 0.0;
  double sd = 1.0;
};

struct SynthSpec {
  std::int32_t num_students = 100;
  std::int32_t num_skills = 10;
  std::int32_t responses_per_student = 50;
  GaussianSpec theta_distribution;
  GaussianSpec beta_distribution;
  std::uint64_t seed = 0;
  // Optional per-skill sampling weights; uniform when empty.
  std::vector<double> skill_weights;

  void validate() const;
};

struct SynthResult {
  InteractionTable table;
  ModelParams truth;
};

// Forward simulation of the response model: draw theta*/beta* from the spec
// distributions, assign each attempt a skill (uniform or weighted), and draw
// correctness Bernoulli(predict_prob(theta*_s, beta*_k)). The skill
// assignment pass is redrawn until every skill is covered; correctness draws
// happen after coverage is settled so the output is a pure function of the
// seed. Throws when num_skills exceeds total attempts.
SynthResult generate(const SynthSpec& spec);

}  // namespace irtmap
