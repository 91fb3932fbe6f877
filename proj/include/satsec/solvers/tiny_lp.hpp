#pragma once

namespace satsec::solvers {

/// Optimum of  max u1 + u2  subject to
///   u1 <= t1*c,  u1 <= t2*a,  u2 <= t1*d,  u2 <= t3*b,  u1, u2 >= 0,
/// over slot fractions t1 + t2 + t3 = 1, each positive.
struct LpResult {
  double t1 = 0.0, t2 = 0.0, t3 = 0.0;
  double u1 = 0.0, u2 = 0.0;
  double objective = 0.0;
};

/// Analytic piecewise solution. Negative coefficients are clamped to zero
/// (a dead link contributes nothing); if every coefficient is nonpositive
/// the objective is zero at equal thirds. The value function over t1 is
/// concave piecewise linear, so the maximum is found exactly by evaluating
/// the greedy inner allocation at the intersection points of its segments.
LpResult tiny_lp(double c, double d, double a, double b);

}  // namespace satsec::solvers
