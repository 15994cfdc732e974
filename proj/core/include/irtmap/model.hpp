#pragma once

#include <cmath>
#include <vector>

#include "irtmap/table.hpp"

namespace irtmap {

struct PriorConfig {
  double sigma_squared = 100.0;  // shared variance for ability and difficulty priors

  void validate() const;  // throws std::invalid_argument unless sigma_squared > 0
};

struct ModelParams {
  std::vector<double> theta;  // per-student ability, logits
  std::vector<double> beta;   // per-skill difficulty, logits

  static ModelParams zeros(std::int32_t num_students, std::int32_t num_skills) {
    return {std::vector<double>(static_cast<std::size_t>(num_students), 0.0),
            std::vector<double>(static_cast<std::size_t>(num_skills), 0.0)};
  }
};

// log(1 + exp(x)) without overflow.
inline double log1p_exp(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

// Logistic function, stable for large |x|.
inline double sigmoid(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  const double e = std::exp(x);
  return e / (1.0 + e);
}

// P(correct) = sigmoid(ability - difficulty). Throws on non-finite input.
double predict_prob(double theta_s, double beta_k);

// Negative log-likelihood of the table plus Gaussian prior penalties
// sum(theta^2) / (2 sigma^2) + sum(beta^2) / (2 sigma^2). Log terms use
// log1p_exp directly; no probability is ever materialized. Records are
// accumulated left to right in table order.
double neg_log_posterior(const ModelParams& params, const InteractionTable& table,
                         const PriorConfig& prior);

struct Gradient {
  std::vector<double> theta;
  std::vector<double> beta;
};

// Analytic gradient of neg_log_posterior:
//   d/dtheta_s = -sum_{i: s_i=s} (y_i - p_i) + theta_s / sigma^2
//   d/dbeta_k  = +sum_{i: k_i=k} (y_i - p_i) + beta_k / sigma^2
// Likelihood contributions are scattered in record order, then the prior term
// is added per coordinate, so results are bit-reproducible.
Gradient gradient(const ModelParams& params, const InteractionTable& table,
                  const PriorConfig& prior);

}  // namespace irtmap
