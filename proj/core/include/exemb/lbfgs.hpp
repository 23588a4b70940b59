#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "exemb/dense.hpp"

namespace exemb {

/// Objective callback: returns f(x) and writes the gradient into `grad`
/// (already sized like x).
using Objective = std::function<double(const Vector& x, Vector& grad)>;

struct LbfgsSettings {
  int memory = 10;
  int max_iters = 2000;
  /// Converged when max_i |grad_i| <= grad_tol.
  double grad_tol = 1e-5;
  /// Converged when (f_prev - f) / max(|f_prev|, |f|, 1) <= rel_f_tol.
  double rel_f_tol = 2.220446049250313e-09;
  /// Objective evaluations allowed per line search.
  int max_line_search = 20;
  int max_evals = 15000;
  double c1 = 1e-4;  // sufficient decrease
  double c2 = 0.9;   // curvature
};

enum class StopReason { GradTol, RelFTol, MaxIters, MaxEvals, LineSearchFailed };

std::string_view to_string(StopReason reason);

struct LbfgsResult {
  Vector x;
  double loss = 0.0;
  int iters = 0;
  int evals = 0;
  StopReason reason = StopReason::MaxIters;
  /// Loss at x0 followed by the loss after every accepted step.
  std::vector<double> loss_history;

  bool converged() const {
    return reason == StopReason::GradTol || reason == StopReason::RelFTol;
  }
};

/// Limited-memory BFGS with a strong-Wolfe line search.
///
/// A non-finite loss or gradient from the callback throws NumericalError.
/// A line search that cannot make progress, even after dropping the
/// curvature memory, ends the run with StopReason::LineSearchFailed and
/// the best iterate found.
LbfgsResult lbfgs_minimize(const Objective& objective, Vector x0, const LbfgsSettings& settings = {});

/// Largest normwise relative error between the analytic gradient at x and
/// central finite differences with the given step:
/// ||g - g_fd|| / max(||g||, ||g_fd||, tiny).
double gradient_check(const Objective& objective, const Vector& x, double step = 1e-5);

}  // namespace exemb
