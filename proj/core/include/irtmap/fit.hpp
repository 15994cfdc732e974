#pragma once

#include "irtmap/lbfgs.hpp"
#include "irtmap/model.hpp"
#include "irtmap/table.hpp"

namespace irtmap {

struct FitConfig {
  int max_iterations = 500;
  double gradient_tolerance = 1e-5;
  double objective_relative_tolerance = 1e-9;
  int history_size = 10;
  double initial_value = 0.0;

  void validate() const;
  LbfgsOptions lbfgs_options() const;
};

struct FitResult {
  ModelParams params;
  bool converged = false;
  int iterations = 0;
  double final_objective = 0.0;
  double final_gradient_norm = 0.0;
  Termination termination_reason = Termination::max_iter;
};

// MAP estimate of theta and beta by minimizing neg_log_posterior. All
// parameters start at config.initial_value; the second overload starts from
// an explicit point instead.
FitResult fit_map(const InteractionTable& table, const PriorConfig& prior,
                  const FitConfig& config);
FitResult fit_map(const InteractionTable& table, const PriorConfig& prior,
                  const FitConfig& config, const ModelParams& initial);

// One-hot logistic baseline: logit = intercept + student_effect + skill_effect,
// maximum likelihood with a ridge penalty ridge_epsilon/2 * ||effects||^2 on
// the non-intercept coefficients. The ridge resolves the one-hot redundancy
// and keeps separated entities finite.
struct BaselineModel {
  double intercept = 0.0;
  std::vector<double> student_effects;
  std::vector<double> skill_effects;
  double ridge_epsilon = 1e-6;
  bool converged = false;
  int iterations = 0;
  double final_objective = 0.0;
  Termination termination_reason = Termination::max_iter;

  double predict(std::int32_t student, std::int32_t skill) const {
    return sigmoid(intercept + student_effects[static_cast<std::size_t>(student)] +
                   skill_effects[static_cast<std::size_t>(skill)]);
  }
};

BaselineModel fit_baseline(const InteractionTable& table, const FitConfig& config,
                           double ridge_epsilon = 1e-6);

// Max relative error between the analytic gradient and central finite
// differences of neg_log_posterior over every coordinate. Throws unless
// step > 0.
double check_gradient(const InteractionTable& table, const PriorConfig& prior,
                      const ModelParams& trial_params, double step);

}  // namespace irtmap
