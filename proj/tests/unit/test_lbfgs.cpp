#include <gtest/gtest.h>

#include <cmath>

#include "exemb/errors.hpp"
#include "exemb/lbfgs.hpp"

using namespace exemb;

namespace {

double rosenbrock(const Vector& x, Vector& g) {
  double f = 0.0;
  g.setZero(x.size());
  for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
    const double a = x[i + 1] - x[i] * x[i];
    const double b = 1.0 - x[i];
    f += 100.0 * a * a + b * b;
    g[i] += -400.0 * x[i] * a - 2.0 * b;
    g[i + 1] += 200.0 * a;
  }
  return f;
}

}  // namespace

TEST(Lbfgs, SolvesRosenbrock) {
  Vector x0 = Vector::Constant(10, -1.2);
  LbfgsSettings s;
  s.rel_f_tol = 0.0;
  s.grad_tol = 1e-8;
  const LbfgsResult r = lbfgs_minimize(rosenbrock, x0, s);
  EXPECT_EQ(r.reason, StopReason::GradTol);
  EXPECT_TRUE(r.converged());
  EXPECT_LT((r.x - Vector::Ones(10)).norm(), 1e-6);
  for (std::size_t i = 1; i < r.loss_history.size(); ++i) EXPECT_LE(r.loss_history[i], r.loss_history[i - 1]);
}

TEST(Lbfgs, QuadraticConvergesQuickly) {
  const Vector d = Vector::LinSpaced(20, 1.0, 50.0);
  const Objective quad = [&](const Vector& x, Vector& g) {
    g = d.cwiseProduct(x);
    return 0.5 * x.dot(g);
  };
  const LbfgsResult r = lbfgs_minimize(quad, Vector::Ones(20), {});
  EXPECT_TRUE(r.converged());
  EXPECT_LT(r.x.lpNorm<Eigen::Infinity>(), 1e-4);
  EXPECT_LT(r.iters, 100);
}

TEST(Lbfgs, RespectsIterationBudget) {
  LbfgsSettings s;
  s.max_iters = 5;
  s.rel_f_tol = 0.0;
  s.grad_tol = 0.0;
  const LbfgsResult r = lbfgs_minimize(rosenbrock, Vector::Constant(6, -1.2), s);
  EXPECT_EQ(r.reason, StopReason::MaxIters);
  EXPECT_EQ(r.iters, 5);
}

TEST(Lbfgs, NonFiniteObjectiveThrows) {
  const Objective bad = [](const Vector& x, Vector& g) {
    g = x;
    return std::log(-1.0);
  };
  EXPECT_THROW(lbfgs_minimize(bad, Vector::Ones(3), {}), NumericalError);
  EXPECT_THROW(lbfgs_minimize(rosenbrock, Vector::Constant(2, NAN), {}), NumericalError);
}

TEST(Lbfgs, GradientCheckDetectsWrongGradient) {
  const Objective good = [](const Vector& x, Vector& g) {
    g = 2.0 * x;
    return x.squaredNorm();
  };
  const Objective wrong = [](const Vector& x, Vector& g) {
    g = 3.0 * x;
    return x.squaredNorm();
  };
  const Vector x = Vector::LinSpaced(5, -1.0, 2.0);
  EXPECT_LT(gradient_check(good, x), 1e-8);
  EXPECT_GT(gradient_check(wrong, x), 0.1);
}

TEST(Lbfgs, StopReasonNames) {
  EXPECT_EQ(to_string(StopReason::GradTol), "grad_tol");
  EXPECT_EQ(to_string(StopReason::MaxIters), "max_iters");
}
