#include "irtmap/lbfgs.hpp"

#include <cmath>
#include <deque>
#include <stdexcept>

namespace irtmap {

namespace {

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (const double x : v) m = std::max(m, std::fabs(x));
  return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct CurvaturePair {
  std::vector<double> s;
  std::vector<double> y;
  double rho = 0.0;
};

// Two-loop recursion; overwrites q with -H*g.
void apply_inverse_hessian(std::vector<double>& q, const std::deque<CurvaturePair>& history) {
  std::vector<double> alpha(history.size());
  for (std::size_t i = history.size(); i-- > 0;) {
    alpha[i] = history[i].rho * dot(history[i].s, q);
    for (std::size_t j = 0; j < q.size(); ++j) q[j] -= alpha[i] * history[i].y[j];
  }
  if (!history.empty()) {
    const CurvaturePair& last = history.back();
    const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
    for (double& x : q) x *= gamma;
  }
  for (std::size_t i = 0; i < history.size(); ++i) {
    const double beta = history[i].rho * dot(history[i].y, q);
    for (std::size_t j = 0; j < q.size(); ++j) q[j] += (alpha[i] - beta) * history[i].s[j];
  }
  for (double& x : q) x = -x;
}

}  // namespace

const char* termination_name(Termination reason) {
  switch (reason) {
    case Termination::gradient_tol:
      return "gradient_tol";
    case Termination::objective_tol:
      return "objective_tol";
    case Termination::max_iter:
      return "max_iter";
  }
  return "unknown";
}

LbfgsResult lbfgs_minimize(const ObjectiveFn& objective, std::vector<double> x0,
                           const LbfgsOptions& options) {
  const std::size_t n = x0.size();
  std::vector<double> x = std::move(x0);
  std::vector<double> grad(n, 0.0);
  double f = objective(x, grad);
  if (!std::isfinite(f)) throw std::runtime_error("objective is non-finite at the initial point");

  std::deque<CurvaturePair> history;
  std::vector<double> direction(n), x_new(n), grad_new(n);

  LbfgsResult result;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const double gnorm = inf_norm(grad);
    if (gnorm <= options.gradient_tolerance) {
      result.x = x;
      result.objective = f;
      result.gradient_inf_norm = gnorm;
      result.iterations = iter;
      result.reason = Termination::gradient_tol;
      return result;
    }

    direction = grad;
    apply_inverse_hessian(direction, history);
    double dir_deriv = dot(direction, grad);
    if (dir_deriv >= 0.0) {
      // Not a descent direction; fall back to steepest descent.
      for (std::size_t i = 0; i < n; ++i) direction[i] = -grad[i];
      dir_deriv = -dot(grad, grad);
      history.clear();
    }

    // Backtracking Armijo search from a unit step.
    double step = 1.0;
    double f_new = 0.0;
    bool accepted = false;
    for (int ls = 0; ls < options.max_line_search_steps; ++ls) {
      for (std::size_t i = 0; i < n; ++i) x_new[i] = x[i] + step * direction[i];
      f_new = objective(x_new, grad_new);
      if (!std::isfinite(f_new)) {
        throw std::runtime_error("objective became non-finite at iteration " +
                                 std::to_string(iter));
      }
      if (f_new <= f + options.armijo_c1 * step * dir_deriv) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      throw std::runtime_error("line search failed at iteration " + std::to_string(iter));
    }

    CurvaturePair pair;
    pair.s.resize(n);
    pair.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      pair.s[i] = x_new[i] - x[i];
      pair.y[i] = grad_new[i] - grad[i];
    }
    const double sy = dot(pair.s, pair.y);
    if (sy > 1e-10) {
      pair.rho = 1.0 / sy;
      history.push_back(std::move(pair));
      if (history.size() > static_cast<std::size_t>(options.history_size)) history.pop_front();
    }

    const double f_prev = f;
    x.swap(x_new);
    grad.swap(grad_new);
    f = f_new;

    if (f_prev - f <= options.objective_relative_tolerance * std::max(1.0, std::fabs(f_prev))) {
      result.x = x;
      result.objective = f;
      result.gradient_inf_norm = inf_norm(grad);
      result.iterations = iter + 1;
      result.reason = Termination::objective_tol;
      return result;
    }
  }

  result.x = x;
  result.objective = f;
  result.gradient_inf_norm = inf_norm(grad);
  result.iterations = options.max_iterations;
  result.reason = Termination::max_iter;
  return result;
}

}  // namespace irtmap
