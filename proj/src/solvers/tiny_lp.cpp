#include "satsec/solvers/tiny_lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace satsec::solvers {

namespace {

struct Inner {
  double u1 = 0.0, u2 = 0.0;
  double t2 = 0.0, t3 = 0.0;  // minimal forward-link times supporting u1, u2
};

// Given t1, split the remaining time between the two forward-link slots.
// The inner problem is a fractional knapsack: fill the rate-cheaper slot
// first up to its return-link cap, then the other.
Inner inner_alloc(double t1, double c, double d, double a, double b) {
  Inner s;
  const double f = 1.0 - t1;
  const double cap1 = c * t1;
  const double cap2 = d * t1;
  if (a >= b) {
    s.u1 = (a > 0.0) ? std::min(cap1, a * f) : 0.0;
    s.t2 = (a > 0.0) ? s.u1 / a : 0.0;
    s.u2 = (b > 0.0) ? std::min(cap2, b * (f - s.t2)) : 0.0;
    s.t3 = (b > 0.0) ? s.u2 / b : 0.0;
  } else {
    s.u2 = std::min(cap2, b * f);
    s.t3 = s.u2 / b;
    s.u1 = (a > 0.0) ? std::min(cap1, a * (f - s.t3)) : 0.0;
    s.t2 = (a > 0.0) ? s.u1 / a : 0.0;
  }
  return s;
}

}  // namespace

LpResult tiny_lp(double c, double d, double a, double b) {
  for (double x : {c, d, a, b})
    if (!std::isfinite(x)) throw std::invalid_argument("tiny_lp: non-finite coefficient");

  c = std::max(c, 0.0);
  d = std::max(d, 0.0);
  a = std::max(a, 0.0);
  b = std::max(b, 0.0);

  // Value-function segments: both caps binding, one cap plus the time budget
  // (two variants), and budget-only on the better slot.
  struct Line {
    double slope, intercept;
  };
  std::vector<Line> lines;
  lines.push_back({c + d, 0.0});
  if (a > 0.0) lines.push_back({c - b - b * c / a, b});
  if (b > 0.0) lines.push_back({d - a - a * d / b, a});
  lines.push_back({-std::max(a, b), std::max(a, b)});

  std::vector<double> candidates{0.0, 1.0};
  for (size_t i = 0; i < lines.size(); ++i)
    for (size_t j = i + 1; j < lines.size(); ++j) {
      const double ds = lines[i].slope - lines[j].slope;
      if (std::abs(ds) < 1e-300) continue;
      const double t = (lines[j].intercept - lines[i].intercept) / ds;
      if (t > 0.0 && t < 1.0) candidates.push_back(t);
    }
  std::sort(candidates.begin(), candidates.end());

  double best_t1 = 0.0, best_val = -1.0;
  for (double t1 : candidates) {
    const Inner s = inner_alloc(t1, c, d, a, b);
    const double val = s.u1 + s.u2;
    if (val > best_val) {
      best_val = val;
      best_t1 = t1;
    }
  }

  LpResult out;
  if (best_val <= 0.0) {
    out.t1 = out.t2 = out.t3 = 1.0 / 3.0;
    return out;
  }

  const Inner s = inner_alloc(best_t1, c, d, a, b);
  out.t1 = best_t1;
  const double slack = std::max(0.0, 1.0 - best_t1 - s.t2 - s.t3);
  out.t2 = s.t2 + 0.5 * slack;
  out.t3 = s.t3 + 0.5 * slack;

  // Open-interval contract: nudge any zero slot by epsilon, paid for by the
  // largest slot. The objective shift is far below the solver tolerance.
  constexpr double kEps = 1e-9;
  double* slots[3] = {&out.t1, &out.t2, &out.t3};
  for (double* t : slots) {
    if (*t < kEps) {
      double* largest = slots[0];
      for (double* o : slots)
        if (*o > *largest) largest = o;
      *largest -= kEps - *t;
      *t = kEps;
    }
  }

  out.u1 = std::min(out.t1 * c, out.t2 * a);
  out.u2 = std::min(out.t1 * d, out.t3 * b);
  out.objective = out.u1 + out.u2;
  return out;
}

}  // namespace satsec::solvers
