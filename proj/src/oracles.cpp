#include "satsec/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace satsec::oracles {

namespace {

using solvers::inner;
using solvers::Matrix;
using solvers::norm_sq;

struct XorShift64 {
  uint64_t s;
  explicit XorShift64(uint64_t seed) : s(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  uint64_t next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  double sym() {  // uniform in [-1, 1)
    return static_cast<double>(next() >> 11) * 0x1.0p-52 - 1.0;
  }
};

}  // namespace

double sdp_grid_best_min_snr(std::span<const cx> a, std::span<const cx> b, double sigma2_1,
                             double sigma2_2, double p_total, int n_theta, int n_phi) {
  const size_t n = a.size();
  const double na2 = norm_sq(a);
  const double nb2 = norm_sq(b);
  if (na2 <= 0.0 || nb2 <= 0.0) return 0.0;

  // Own orthonormal basis of span{a, b}; when b is parallel to a the second
  // direction is an arbitrary orthogonal one (the grid optimum then sits at
  // theta = 0 anyway).
  CVec q1(a.begin(), a.end());
  const double an = std::sqrt(na2);
  for (cx& z : q1) z /= an;
  CVec q2(n);
  {
    const cx r = inner(q1, b);
    for (size_t k = 0; k < n; ++k) q2[k] = b[k] - r * q1[k];
    double rn = std::sqrt(norm_sq(q2));
    if (rn <= 1e-12 * std::sqrt(nb2)) {
      size_t weakest = 0;
      for (size_t k = 1; k < n; ++k)
        if (std::norm(q1[k]) < std::norm(q1[weakest])) weakest = k;
      std::fill(q2.begin(), q2.end(), cx(0.0));
      q2[weakest] = 1.0;
      const cx proj = inner(q1, q2);
      for (size_t k = 0; k < n; ++k) q2[k] -= proj * q1[k];
      rn = std::sqrt(norm_sq(q2));
    }
    for (cx& z : q2) z /= rn;
  }

  // |a^H x|^2 for x = cos(t) q1 + sin(t) e^{i p} q2 collapses to
  // u + v_re cos(p) + v_im sin(p) with per-theta constants.
  const cx a1 = inner(a, q1), a2 = inner(a, q2);
  const cx b1 = inner(b, q1), b2 = inner(b, q2);
  const cx ka = std::conj(a1) * a2;
  const cx kb = std::conj(b1) * b2;

  std::vector<double> cphi(n_phi), sphi(n_phi);
  for (int j = 0; j < n_phi; ++j) {
    const double phi = 2.0 * std::numbers::pi * j / n_phi;
    cphi[j] = std::cos(phi);
    sphi[j] = std::sin(phi);
  }

  const double inv1 = p_total / sigma2_1;
  const double inv2 = p_total / sigma2_2;
  double best = 0.0;
  for (int i = 0; i < n_theta; ++i) {
    const double theta = 0.5 * std::numbers::pi * i / (n_theta - 1);
    const double ct = std::cos(theta), st = std::sin(theta);
    const double ua = ct * ct * std::norm(a1) + st * st * std::norm(a2);
    const double ub = ct * ct * std::norm(b1) + st * st * std::norm(b2);
    const double va_re = 2.0 * ct * st * ka.real(), va_im = -2.0 * ct * st * ka.imag();
    const double vb_re = 2.0 * ct * st * kb.real(), vb_im = -2.0 * ct * st * kb.imag();
    for (int j = 0; j < n_phi; ++j) {
      const double qa = (ua + va_re * cphi[j] + va_im * sphi[j]) * inv1;
      const double qb = (ub + vb_re * cphi[j] + vb_im * sphi[j]) * inv2;
      best = std::max(best, std::min(qa, qb));
    }
  }
  return best;
}

double lp_grid_best(double c, double d, double a, double b, int n, int stages) {
  c = std::max(c, 0.0);
  d = std::max(d, 0.0);
  a = std::max(a, 0.0);
  b = std::max(b, 0.0);

  const auto value = [&](double t1, double t2) {
    const double t3 = 1.0 - t1 - t2;
    if (t1 < 0.0 || t2 < 0.0 || t3 < 0.0) return -1.0;
    const double u1 = std::max(0.0, std::min(t1 * c, t2 * a));
    const double u2 = std::max(0.0, std::min(t1 * d, t3 * b));
    return u1 + u2;
  };

  double lo1 = 0.0, hi1 = 1.0, lo2 = 0.0, hi2 = 1.0;
  double best = 0.0;
  for (int stage = 0; stage < stages; ++stage) {
    const double step1 = (hi1 - lo1) / n;
    const double step2 = (hi2 - lo2) / n;
    double best_t1 = lo1, best_t2 = lo2;
    for (int i = 0; i <= n; ++i) {
      const double t1 = lo1 + i * step1;
      for (int j = 0; j <= n; ++j) {
        const double t2 = lo2 + j * step2;
        const double v = value(t1, t2);
        if (v > best) {
          best = v;
          best_t1 = t1;
          best_t2 = t2;
        }
      }
    }
    // Zoom into a two-cell margin around the incumbent.
    lo1 = std::max(0.0, best_t1 - 2.0 * step1);
    hi1 = std::min(1.0, best_t1 + 2.0 * step1);
    lo2 = std::max(0.0, best_t2 - 2.0 * step2);
    hi2 = std::min(1.0, best_t2 + 2.0 * step2);
  }
  return best;
}

namespace {

double generalized_quotient_sample(const Matrix& u, const Matrix& e, XorShift64& rng) {
  const int n = u.rows();
  CVec v(n);
  for (int k = 0; k < n; ++k) v[k] = cx(rng.sym(), rng.sym());
  double num = 0.0, den = 0.0;
  for (int i = 0; i < n; ++i) {
    cx su = 0.0, se = 0.0;
    for (int j = 0; j < n; ++j) {
      su += u(i, j) * v[j];
      se += e(i, j) * v[j];
    }
    num += (std::conj(v[i]) * su).real();
    den += (std::conj(v[i]) * se).real();
  }
  return num / den;
}

}  // namespace

double sampled_max_generalized_quotient(const Matrix& u, const Matrix& e, int n_samples,
                                        uint64_t seed) {
  XorShift64 rng(seed);
  double best = -1e300;
  for (int s = 0; s < n_samples; ++s)
    best = std::max(best, generalized_quotient_sample(u, e, rng));
  return best;
}

double sampled_max_quotient(const Matrix& m, int n_samples, uint64_t seed) {
  const Matrix eye = Matrix::identity(m.rows());
  XorShift64 rng(seed);
  double best = -1e300;
  for (int s = 0; s < n_samples; ++s)
    best = std::max(best, generalized_quotient_sample(m, eye, rng));
  return best;
}

}  // namespace satsec::oracles
