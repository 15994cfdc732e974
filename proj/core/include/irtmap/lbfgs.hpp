#pragma once

#include <functional>
#include <string>
#include <vector>

namespace irtmap {

// value = f(x), grad overwritten with the gradient at x.
using ObjectiveFn =
    std::function<double(const std::vector<double>& x, std::vector<double>& grad)>;

struct LbfgsOptions {
  int max_iterations = 500;
  double gradient_tolerance = 1e-5;           // infinity norm
  double objective_relative_tolerance = 1e-9;  // |f_prev - f| / max(1, |f_prev|)
  int history_size = 10;
  double armijo_c1 = 1e-4;
  double curvature_c2 = 0.9;
  int max_line_search_steps = 50;
};

enum class Termination { gradient_tol, objective_tol, max_iter };

struct LbfgsResult {
  std::vector<double> x;
  double objective = 0.0;
  double gradient_inf_norm = 0.0;
  int iterations = 0;
  Termination reason = Termination::max_iter;

  bool converged() const { return reason != Termination::max_iter; }
};

// Limited-memory BFGS with backtracking Armijo line search. Curvature pairs
// with y.s below a threshold are skipped rather than forcing a Wolfe search;
// on the convex objectives used here this keeps descent monotone and
// deterministic. Throws std::runtime_error on a non-finite objective value or
// a failed line search.
LbfgsResult lbfgs_minimize(const ObjectiveFn& objective, std::vector<double> x0,
                           const LbfgsOptions& options);

const char* termination_name(Termination reason);

}  // namespace irtmap
