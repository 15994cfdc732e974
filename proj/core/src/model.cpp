#include "irtmap/model.hpp"

#include <stdexcept>

namespace irtmap {

void PriorConfig::validate() const {
  if (!(sigma_squared > 0.0)) throw std::invalid_argument("sigma_squared must be positive");
}

namespace {

void check_sizes(const ModelParams& params, const InteractionTable& table) {
  if (params.theta.size() != static_cast<std::size_t>(table.num_students) ||
      params.beta.size() != static_cast<std::size_t>(table.num_skills)) {
    throw std::invalid_argument("parameter vectors do not match table dimensions");
  }
}

}  // namespace

double predict_prob(double theta_s, double beta_k) {
  if (!std::isfinite(theta_s) || !std::isfinite(beta_k)) {
    throw std::invalid_argument("predict_prob: non-finite input");
  }
  return sigmoid(theta_s - beta_k);
}

double neg_log_posterior(const ModelParams& params, const InteractionTable& table,
                         const PriorConfig& prior) {
  check_sizes(params, table);
  prior.validate();

  // -[y log p + (1-y) log(1-p)] with p = sigmoid(z) reduces to
  // log1p_exp(-z) for y=1 and log1p_exp(z) for y=0.
  double nll = 0.0;
  for (const auto& r : table.records) {
    const double z = params.theta[static_cast<std::size_t>(r.student)] -
                     params.beta[static_cast<std::size_t>(r.skill)];
    nll += log1p_exp(r.correct ? -z : z);
  }

  double penalty = 0.0;
  for (const double t : params.theta) penalty += t * t;
  for (const double b : params.beta) penalty += b * b;
  return nll + penalty / (2.0 * prior.sigma_squared);
}

Gradient gradient(const ModelParams& params, const InteractionTable& table,
                  const PriorConfig& prior) {
  check_sizes(params, table);
  prior.validate();

  Gradient grad;
  grad.theta.assign(params.theta.size(), 0.0);
  grad.beta.assign(params.beta.size(), 0.0);
  for (const auto& r : table.records) {
    const std::size_t s = static_cast<std::size_t>(r.student);
    const std::size_t k = static_cast<std::size_t>(r.skill);
    const double residual = static_cast<double>(r.correct) - sigmoid(params.theta[s] - params.beta[k]);
    grad.theta[s] -= residual;
    grad.beta[k] += residual;
  }
  for (std::size_t s = 0; s < grad.theta.size(); ++s) {
    grad.theta[s] += params.theta[s] / prior.sigma_squared;
  }
  for (std::size_t k = 0; k < grad.beta.size(); ++k) {
    grad.beta[k] += params.beta[k] / prior.sigma_squared;
  }
  return grad;
}

}  // namespace irtmap
