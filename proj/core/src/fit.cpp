#include "irtmap/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace irtmap {

void FitConfig::validate() const {
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
  if (!(gradient_tolerance > 0.0) || !(objective_relative_tolerance > 0.0)) {
    throw std::invalid_argument("tolerances must be positive");
  }
  if (history_size < 1) throw std::invalid_argument("history_size must be at least 1");
}

LbfgsOptions FitConfig::lbfgs_options() const {
  LbfgsOptions options;
  options.max_iterations = max_iterations;
  options.gradient_tolerance = gradient_tolerance;
  options.objective_relative_tolerance = objective_relative_tolerance;
  options.history_size = history_size;
  return options;
}

namespace {

ModelParams unpack(const std::vector<double>& x, std::int32_t num_students,
                   std::int32_t num_skills) {
  ModelParams params;
  params.theta.assign(x.begin(), x.begin() + num_students);
  params.beta.assign(x.begin() + num_students, x.begin() + num_students + num_skills);
  return params;
}

}  // namespace

FitResult fit_map(const InteractionTable& table, const PriorConfig& prior,
                  const FitConfig& config) {
  ModelParams initial;
  initial.theta.assign(static_cast<std::size_t>(table.num_students), config.initial_value);
  initial.beta.assign(static_cast<std::size_t>(table.num_skills), config.initial_value);
  return fit_map(table, prior, config, initial);
}

FitResult fit_map(const InteractionTable& table, const PriorConfig& prior,
                  const FitConfig& config, const ModelParams& initial) {
  if (table.records.empty()) throw std::invalid_argument("cannot fit an empty table");
  config.validate();
  prior.validate();

  const std::int32_t S = table.num_students;
  const std::int32_t K = table.num_skills;
  if (initial.theta.size() != static_cast<std::size_t>(S) ||
      initial.beta.size() != static_cast<std::size_t>(K)) {
    throw std::invalid_argument("initial parameters do not match table dimensions");
  }
  const double inv_var = 1.0 / prior.sigma_squared;

  // Flat layout: theta[0..S) then beta[0..K).
  auto objective = [&](const std::vector<double>& x, std::vector<double>& grad) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double nll = 0.0;
    for (const auto& r : table.records) {
      const std::size_t s = static_cast<std::size_t>(r.student);
      const std::size_t k = static_cast<std::size_t>(S) + static_cast<std::size_t>(r.skill);
      const double z = x[s] - x[k];
      nll += log1p_exp(r.correct ? -z : z);
      const double residual = static_cast<double>(r.correct) - sigmoid(z);
      grad[s] -= residual;
      grad[k] += residual;
    }
    double penalty = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      penalty += x[i] * x[i];
      grad[i] += x[i] * inv_var;
    }
    return nll + 0.5 * penalty * inv_var;
  };

  std::vector<double> x0;
  x0.reserve(static_cast<std::size_t>(S + K));
  x0.insert(x0.end(), initial.theta.begin(), initial.theta.end());
  x0.insert(x0.end(), initial.beta.begin(), initial.beta.end());
  const LbfgsResult opt = lbfgs_minimize(objective, std::move(x0), config.lbfgs_options());

  FitResult result;
  result.params = unpack(opt.x, S, K);
  result.converged = opt.converged();
  result.iterations = opt.iterations;
  result.final_objective = opt.objective;
  result.final_gradient_norm = opt.gradient_inf_norm;
  result.termination_reason = opt.reason;
  return result;
}

BaselineModel fit_baseline(const InteractionTable& table, const FitConfig& config,
                           double ridge_epsilon) {
  if (table.records.empty()) throw std::invalid_argument("cannot fit an empty table");
  config.validate();
  if (!(ridge_epsilon >= 0.0)) throw std::invalid_argument("ridge_epsilon must be non-negative");

  const std::int32_t S = table.num_students;
  const std::int32_t K = table.num_skills;

  // Flat layout: intercept, student effects, skill effects. Ridge applies to
  // everything but the intercept.
  auto objective = [&](const std::vector<double>& x, std::vector<double>& grad) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double nll = 0.0;
    for (const auto& r : table.records) {
      const std::size_t s = 1 + static_cast<std::size_t>(r.student);
      const std::size_t k = 1 + static_cast<std::size_t>(S) + static_cast<std::size_t>(r.skill);
      const double z = x[0] + x[s] + x[k];
      nll += log1p_exp(r.correct ? -z : z);
      const double residual = static_cast<double>(r.correct) - sigmoid(z);
      grad[0] -= residual;
      grad[s] -= residual;
      grad[k] -= residual;
    }
    double penalty = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) {
      penalty += x[i] * x[i];
      grad[i] += ridge_epsilon * x[i];
    }
    return nll + 0.5 * ridge_epsilon * penalty;
  };

  std::vector<double> x0(static_cast<std::size_t>(1 + S + K), config.initial_value);
  const LbfgsResult opt = lbfgs_minimize(objective, std::move(x0), config.lbfgs_options());

  BaselineModel model;
  model.intercept = opt.x[0];
  model.student_effects.assign(opt.x.begin() + 1, opt.x.begin() + 1 + S);
  model.skill_effects.assign(opt.x.begin() + 1 + S, opt.x.end());
  model.ridge_epsilon = ridge_epsilon;
  model.converged = opt.converged();
  model.iterations = opt.iterations;
  model.final_objective = opt.objective;
  model.termination_reason = opt.reason;
  return model;
}

double check_gradient(const InteractionTable& table, const PriorConfig& prior,
                      const ModelParams& trial_params, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("finite-difference step must be positive");

  const Gradient analytic = gradient(trial_params, table, prior);
  ModelParams probe = trial_params;

  double max_rel_error = 0.0;
  auto compare = [&](double& coord, double analytic_value) {
    const double saved = coord;
    coord = saved + step;
    const double f_plus = neg_log_posterior(probe, table, prior);
    coord = saved - step;
    const double f_minus = neg_log_posterior(probe, table, prior);
    coord = saved;
    const double numeric = (f_plus - f_minus) / (2.0 * step);
    const double scale = std::max({std::fabs(analytic_value), std::fabs(numeric), 1.0});
    max_rel_error = std::max(max_rel_error, std::fabs(analytic_value - numeric) / scale);
  };
  for (std::size_t s = 0; s < probe.theta.size(); ++s) compare(probe.theta[s], analytic.theta[s]);
  for (std::size_t k = 0; k < probe.beta.size(); ++k) compare(probe.beta[k], analytic.beta[k]);
  return max_rel_error;
}

}  // namespace irtmap
