#include "exemb/lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "exemb/errors.hpp"

namespace exemb {

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::GradTol: return "grad_tol";
    case StopReason::RelFTol: return "rel_f_tol";
    case StopReason::MaxIters: return "max_iters";
    case StopReason::MaxEvals: return "max_evals";
    case StopReason::LineSearchFailed: return "line_search_failed";
  }
  return "unknown";
}

namespace {

struct Point {
  double step = 0.0;
  double f = 0.0;
  double slope = 0.0;  // directional derivative g.d
  Vector x;
  Vector g;
};

// Minimizer of the cubic through (a, fa, da) and (b, fb, db); falls back to
// bisection when the cubic has no real minimizer.
double cubic_minimizer(const Point& a, const Point& b) {
  const double d1 = a.slope + b.slope - 3.0 * (a.f - b.f) / (a.step - b.step);
  const double disc = d1 * d1 - a.slope * b.slope;
  if (disc < 0.0) return 0.5 * (a.step + b.step);
  const double d2 = std::copysign(std::sqrt(disc), b.step - a.step);
  const double denom = b.slope - a.slope + 2.0 * d2;
  if (denom == 0.0) return 0.5 * (a.step + b.step);
  const double t = b.step - (b.step - a.step) * (b.slope + d2 - d1) / denom;
  return std::isfinite(t) ? t : 0.5 * (a.step + b.step);
}

class Evaluator {
 public:
  Evaluator(const Objective& objective, int iteration) : objective_(objective), iteration_(iteration) {}

  double operator()(const Vector& x, Vector& g) {
    g.resize(x.size());
    const double f = objective_(x, g);
    ++evals;
    if (!std::isfinite(f) || !g.allFinite()) {
      throw NumericalError("lbfgs: non-finite loss or gradient at iteration " + std::to_string(iteration_) +
                           " (evaluation " + std::to_string(evals) + ")");
    }
    return f;
  }

  void set_iteration(int it) { iteration_ = it; }
  int evals = 0;

 private:
  const Objective& objective_;
  int iteration_;
};

enum class SearchStatus { Wolfe, Armijo, Failed };

// Strong-Wolfe search along d from `origin`; on success `result` holds the
// accepted point. Armijo means the evaluation budget ran out but a point
// with sufficient decrease exists.
SearchStatus line_search(Evaluator& eval, const Point& origin, const Vector& d, double initial_step,
                         const LbfgsSettings& s, Point& result) {
  const double f0 = origin.f;
  const double g0 = origin.slope;
  auto probe = [&](double step) {
    Point p;
    p.step = step;
    p.x = origin.x + step * d;
    p.f = eval(p.x, p.g);
    p.slope = p.g.dot(d);
    return p;
  };
  auto armijo = [&](const Point& p) { return p.f <= f0 + s.c1 * p.step * g0; };
  auto curvature = [&](const Point& p) { return std::abs(p.slope) <= -s.c2 * g0; };

  Point prev = origin;
  prev.step = 0.0;
  double step = initial_step;
  int budget = s.max_line_search;
  Point lo, hi;
  bool bracketed = false;

  while (budget-- > 0) {
    Point cur = probe(step);
    if (!armijo(cur) || (prev.step > 0.0 && cur.f >= prev.f)) {
      lo = prev;
      hi = cur;
      bracketed = true;
      break;
    }
    if (curvature(cur)) {
      result = std::move(cur);
      return SearchStatus::Wolfe;
    }
    if (cur.slope >= 0.0) {
      lo = cur;
      hi = prev;
      bracketed = true;
      break;
    }
    // Extrapolate within [1.1, 4] times the current step.
    double next = cubic_minimizer(prev, cur);
    next = std::clamp(next, cur.step * 1.1, cur.step * 4.0);
    prev = std::move(cur);
    step = next;
  }
  if (!bracketed) {
    if (prev.step > 0.0) {
      result = std::move(prev);
      return SearchStatus::Armijo;
    }
    return SearchStatus::Failed;
  }

  // Zoom: lo always satisfies sufficient decrease and has the lowest f seen.
  while (budget-- > 0) {
    const double a = std::min(lo.step, hi.step);
    const double b = std::max(lo.step, hi.step);
    const double width = b - a;
    if (width <= std::numeric_limits<double>::epsilon() * std::max(1.0, b)) break;
    double trial = cubic_minimizer(lo, hi);
    if (!(trial > a + 0.1 * width && trial < b - 0.1 * width)) trial = 0.5 * (a + b);
    Point cur = probe(trial);
    if (!armijo(cur) || cur.f >= lo.f) {
      hi = std::move(cur);
    } else {
      if (curvature(cur)) {
        result = std::move(cur);
        return SearchStatus::Wolfe;
      }
      if (cur.slope * (hi.step - lo.step) >= 0.0) hi = lo;
      lo = std::move(cur);
    }
  }
  if (lo.step > 0.0 && lo.f < f0) {
    result = std::move(lo);
    return SearchStatus::Armijo;
  }
  return SearchStatus::Failed;
}

}  // namespace

LbfgsResult lbfgs_minimize(const Objective& objective, Vector x0, const LbfgsSettings& settings) {
  if (!x0.allFinite()) throw NumericalError("lbfgs: non-finite starting point");
  Evaluator eval(objective, 0);

  Point cur;
  cur.x = std::move(x0);
  cur.f = eval(cur.x, cur.g);

  LbfgsResult result;
  result.loss_history.push_back(cur.f);

  std::deque<Vector> s_hist, y_hist;
  std::deque<double> rho_hist;
  const auto finish = [&](StopReason reason, int iters) {
    result.x = std::move(cur.x);
    result.loss = cur.f;
    result.iters = iters;
    result.evals = eval.evals;
    result.reason = reason;
    return result;
  };

  if (cur.g.lpNorm<Eigen::Infinity>() <= settings.grad_tol) return finish(StopReason::GradTol, 0);

  Vector d;
  std::vector<double> alpha(static_cast<std::size_t>(settings.memory));
  for (int it = 1; it <= settings.max_iters; ++it) {
    eval.set_iteration(it);
    if (eval.evals >= settings.max_evals) return finish(StopReason::MaxEvals, it - 1);

    // Two-loop recursion.
    d = -cur.g;
    const std::size_t m = s_hist.size();
    for (std::size_t i = m; i-- > 0;) {
      alpha[i] = rho_hist[i] * s_hist[i].dot(d);
      d -= alpha[i] * y_hist[i];
    }
    if (m > 0) d *= s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
    for (std::size_t i = 0; i < m; ++i) {
      const double beta = rho_hist[i] * y_hist[i].dot(d);
      d += (alpha[i] - beta) * s_hist[i];
    }
    cur.slope = cur.g.dot(d);
    if (!(cur.slope < 0.0)) {
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      d = -cur.g;
      cur.slope = -cur.g.squaredNorm();
    }

    Point next;
    double initial = s_hist.empty() ? std::min(1.0, 1.0 / d.norm()) : 1.0;
    SearchStatus status = line_search(eval, cur, d, initial, settings, next);
    if (status == SearchStatus::Failed && !s_hist.empty()) {
      // Drop the curvature memory and retry along steepest descent.
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      d = -cur.g;
      cur.slope = -cur.g.squaredNorm();
      initial = std::min(1.0, 1.0 / d.norm());
      status = line_search(eval, cur, d, initial, settings, next);
    }
    if (status == SearchStatus::Failed) return finish(StopReason::LineSearchFailed, it - 1);

    Vector s = next.x - cur.x;
    Vector y = next.g - cur.g;
    const double sy = s.dot(y);
    if (sy > std::numeric_limits<double>::epsilon() * y.squaredNorm()) {
      if (static_cast<int>(s_hist.size()) == settings.memory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
    }

    const double f_prev = cur.f;
    cur = std::move(next);
    result.loss_history.push_back(cur.f);

    if (cur.g.lpNorm<Eigen::Infinity>() <= settings.grad_tol) return finish(StopReason::GradTol, it);
    const double scale = std::max({std::abs(f_prev), std::abs(cur.f), 1.0});
    if ((f_prev - cur.f) / scale <= settings.rel_f_tol) return finish(StopReason::RelFTol, it);
  }
  return finish(StopReason::MaxIters, settings.max_iters);
}

double gradient_check(const Objective& objective, const Vector& x, double step) {
  Vector g(x.size());
  objective(x, g);
  Vector fd(x.size());
  Vector probe = x;
  Vector scratch(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double orig = probe[i];
    probe[i] = orig + step;
    const double fp = objective(probe, scratch);
    probe[i] = orig - step;
    const double fm = objective(probe, scratch);
    probe[i] = orig;
    fd[i] = (fp - fm) / (2.0 * step);
  }
  const double denom = std::max({g.norm(), fd.norm(), 1e-300});
  return (g - fd).norm() / denom;
}

}  // namespace exemb
