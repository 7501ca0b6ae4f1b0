#pragma once

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "daplsr/types.hpp"

namespace daplsr {

/// Conjugate-gradient ascent settings. max_iters is the inner iteration
/// budget N, grad_tol and step_tol the gradient and step stopping
/// tolerances.
struct SolverParams {
  int max_iters = 200;
  double grad_tol = 1e-6;
  double step_tol = 1e-10;
  double armijo_c = 1e-4;    // sufficient-increase coefficient
  double backtrack = 0.5;    // step shrink factor
  double alpha0 = 1.0;       // initial trial step
  int max_backtracks = 50;
};

enum class StopReason { kGradientTolerance, kStepTolerance, kMaxIterations, kLineSearchFailure };

inline const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::kGradientTolerance: return "gradient tolerance";
    case StopReason::kStepTolerance: return "step tolerance";
    case StopReason::kMaxIterations: return "max iterations";
    case StopReason::kLineSearchFailure: return "line-search failure";
  }
  return "unknown";
}

/// State at one iteration plus the step accepted from it (alpha = 0 on the
/// terminal record and whenever no step was taken).
struct IterationRecord {
  double objective;
  double grad_norm;
  double alpha;
  bool restarted = false;  // direction reset to the gradient this iteration
};

struct SolveTrace {
  std::vector<IterationRecord> iterations;
  StopReason reason = StopReason::kMaxIterations;
  int accepted_steps = 0;

  double final_objective() const { return iterations.back().objective; }
};

struct SolveResult {
  Matrix x;
  SolveTrace trace;
};

/// Objective and Euclidean gradient of a smooth function to maximize.
struct AscentProblem {
  std::function<double(const Matrix&)> objective;
  std::function<Matrix(const Matrix&)> euclid_grad;
};

/// Fletcher-Reeves ratio with a steepest-ascent restart guard for a
/// vanishing previous gradient.
inline double fletcher_reeves(double g_new_sq, double g_old_sq) {
  if (g_old_sq < 1e-300) return 0.0;
  return g_new_sq / g_old_sq;
}

inline std::string trace_to_csv(const SolveTrace& trace) {
  std::ostringstream out;
  out << "iter,objective,grad_norm,alpha\n";
  out.precision(17);
  for (std::size_t i = 0; i < trace.iterations.size(); ++i) {
    const auto& rec = trace.iterations[i];
    out << i << ',' << rec.objective << ',' << rec.grad_norm << ',' << rec.alpha << '\n';
  }
  return out.str();
}

namespace detail {

inline void validate(const SolverParams& p) {
  if (p.max_iters < 0 || p.max_backtracks < 1) {
    throw std::invalid_argument("solver: iteration budgets must be positive");
  }
  if (!(p.grad_tol > 0 && p.step_tol > 0 && p.alpha0 > 0)) {
    throw std::invalid_argument("solver: tolerances and alpha0 must be positive");
  }
  if (!(p.backtrack > 0 && p.backtrack < 1) || !(p.armijo_c > 0 && p.armijo_c < 1)) {
    throw std::invalid_argument("solver: backtrack and armijo_c must lie in (0, 1)");
  }
}

inline double checked_objective(const AscentProblem& problem, const Matrix& x) {
  double f = problem.objective(x);
  if (!std::isfinite(f)) throw std::runtime_error("solver: objective returned a non-finite value");
  return f;
}

}  // namespace detail

/// Conjugate-gradient ascent on a manifold: Fletcher-Reeves directions with
/// projection transport, Armijo sufficient-increase backtracking, and three
/// stopping rules (gradient norm, accepted step size, iteration budget).
/// Any of the three conditions terminates the loop.
template <class ManifoldT>
SolveResult maximize(const AscentProblem& problem, const ManifoldT& manifold, Matrix x0,
                     const SolverParams& params = {}) {
  detail::validate(params);
  if (manifold.feasibility_error(x0) > manifold.feasibility_tolerance()) {
    throw std::invalid_argument("solver: initial point infeasible");
  }

  SolveResult result;
  SolveTrace& trace = result.trace;
  Matrix x = std::move(x0);
  double f = detail::checked_objective(problem, x);
  Matrix g = manifold.rgrad(x, problem.euclid_grad(x));
  double g_sq = manifold.inner(x, g, g);
  Matrix dir = g;

  for (int iter = 0;; ++iter) {
    double grad_norm = std::sqrt(std::max(0.0, g_sq));
    if (grad_norm <= params.grad_tol) {
      trace.iterations.push_back({f, grad_norm, 0.0});
      trace.reason = StopReason::kGradientTolerance;
      break;
    }
    if (iter >= params.max_iters) {
      trace.iterations.push_back({f, grad_norm, 0.0});
      trace.reason = StopReason::kMaxIterations;
      break;
    }

    double slope = manifold.inner(x, g, dir);
    bool restarted = false;
    if (slope <= 0.0) {  // not an ascent direction: fall back to the gradient
      dir = g;
      slope = g_sq;
      restarted = true;
    }

    double alpha = params.alpha0;
    Matrix x_next;
    double f_next = 0.0;
    bool accepted = false;
    for (int bt = 0; bt < params.max_backtracks; ++bt) {
      Matrix candidate = manifold.retract(x, alpha * dir);
      double f_cand = detail::checked_objective(problem, candidate);
      if (f_cand >= f + params.armijo_c * alpha * slope) {
        x_next = std::move(candidate);
        f_next = f_cand;
        accepted = true;
        break;
      }
      alpha *= params.backtrack;
    }
    if (!accepted) {
      trace.iterations.push_back({f, grad_norm, 0.0, restarted});
      trace.reason = StopReason::kLineSearchFailure;
      break;
    }

    trace.iterations.push_back({f, grad_norm, alpha, restarted});
    trace.accepted_steps++;

    Matrix g_next = manifold.rgrad(x_next, problem.euclid_grad(x_next));
    double g_next_sq = manifold.inner(x_next, g_next, g_next);
    double beta = fletcher_reeves(g_next_sq, g_sq);
    dir = g_next + beta * manifold.transport(x, x_next, dir);

    x = std::move(x_next);
    f = f_next;
    g = std::move(g_next);
    g_sq = g_next_sq;

    if (alpha <= params.step_tol) {
      trace.iterations.push_back({f, std::sqrt(std::max(0.0, g_sq)), 0.0});
      trace.reason = StopReason::kStepTolerance;
      break;
    }
  }

  result.x = std::move(x);
  return result;
}

}  // namespace daplsr
