#include "satsec/conv_scheme.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace satsec::conv_scheme {

namespace {

using solvers::inner;
using solvers::Matrix;
using solvers::norm_sq;

CVec conj_of(std::span<const cx> h) {
  CVec g(h.size());
  for (size_t k = 0; k < h.size(); ++k) g[k] = std::conj(h[k]);
  return g;
}

// Deterministic unit vector orthogonal to a given nonzero vector.
CVec unit_orthogonal(std::span<const cx> v) {
  const size_t n = v.size();
  size_t weakest = 0;
  for (size_t k = 1; k < n; ++k)
    if (std::norm(v[k]) < std::norm(v[weakest])) weakest = k;
  CVec e(n, 0.0);
  e[weakest] = 1.0;
  const cx proj = inner(v, e) / norm_sq(v);
  for (size_t k = 0; k < n; ++k) e[k] -= proj * v[k];
  const double nrm = std::sqrt(norm_sq(e));
  for (cx& z : e) z /= nrm;
  return e;
}

}  // namespace

solvers::EigPair structured_pencil_max(double alpha_u, std::span<const cx> g, double alpha_e,
                                       std::span<const cx> f) {
  if (!(alpha_u > 0.0) || !(alpha_e > 0.0))
    throw std::invalid_argument("structured_pencil_max: loadings must be positive");
  const size_t n = g.size();
  const double ng2 = norm_sq(g);
  const double nf2 = norm_sq(f);

  // Degenerate spans first.
  if (ng2 <= 0.0 && nf2 <= 0.0) {
    CVec e(n, 0.0);
    e[0] = 1.0;
    return {alpha_u / alpha_e, std::move(e)};
  }
  if (ng2 <= 0.0) {
    // U is a scaled identity; the best direction avoids f entirely.
    CVec v = unit_orthogonal(f);
    return {alpha_u / alpha_e, std::move(v)};
  }

  CVec q1(g.begin(), g.end());
  const double gn = std::sqrt(ng2);
  for (cx& z : q1) z /= gn;

  const cx f1 = inner(q1, f);
  CVec resid(n);
  for (size_t k = 0; k < n; ++k) resid[k] = f[k] - f1 * q1[k];
  const double rn = std::sqrt(norm_sq(resid));

  if (nf2 <= 0.0 || rn <= 1e-12 * std::sqrt(nf2)) {
    // One-dimensional span: compare the in-span quotient with the
    // out-of-span ratio alpha_u/alpha_e.
    const double lam_in = (alpha_u + ng2) / (alpha_e + std::norm(f1));
    const double lam_out = alpha_u / alpha_e;
    if (lam_in >= lam_out || n == 1) return {lam_in, std::move(q1)};
    CVec v = unit_orthogonal(f);
    return {lam_out, std::move(v)};
  }

  CVec q2 = resid;
  for (cx& z : q2) z /= rn;

  // Reduced 2x2 pencil: Ut = alpha_u I + gt gt^H with gt = (||g||, 0),
  // Et = alpha_e I + ft ft^H with ft = (f1, rn). det(Ut - lambda Et) = 0 is a
  // quadratic with positive leading coefficient det(Et).
  const cx gt1 = gn, gt2 = 0.0;
  const cx ft1 = f1, ft2 = rn;

  const double u11 = alpha_u + std::norm(gt1);
  const double u22 = alpha_u + std::norm(gt2);
  const cx u12 = gt1 * std::conj(gt2);
  const double e11 = alpha_e + std::norm(ft1);
  const double e22 = alpha_e + std::norm(ft2);
  const cx e12 = ft1 * std::conj(ft2);

  const double qa = e11 * e22 - std::norm(e12);
  const double qb = -(u11 * e22 + u22 * e11 - 2.0 * (u12 * std::conj(e12)).real());
  const double qc = u11 * u22 - std::norm(u12);
  const double disc = std::max(0.0, qb * qb - 4.0 * qa * qc);
  const double lambda = (-qb + std::sqrt(disc)) / (2.0 * qa);

  // Null vector of M = Ut - lambda Et from its larger row.
  const cx m11 = u11 - lambda * e11;
  const cx m12 = u12 - lambda * e12;
  const cx m21 = std::conj(m12);
  const cx m22 = u22 - lambda * e22;
  cx v1, v2;
  if (std::norm(m11) + std::norm(m12) >= std::norm(m21) + std::norm(m22)) {
    v1 = -m12;
    v2 = m11;
  } else {
    v1 = m22;
    v2 = -m21;
  }
  const double vn = std::sqrt(std::norm(v1) + std::norm(v2));
  v1 /= vn;
  v2 /= vn;

  CVec v(n);
  for (size_t k = 0; k < n; ++k) v[k] = v1 * q1[k] + v2 * q2[k];
  return {lambda, std::move(v)};
}

ConvDesignIntermediates build_intermediates(const ChannelSet& ch, const NoiseModel& noise,
                                            const TxPowers& powers, double beta) {
  if (!(beta > 0.0) || !(beta < 1.0))
    throw std::invalid_argument("build_intermediates: beta must lie strictly inside (0, 1)");
  noise.validate();
  const double p_s = powers.sat_fl_w;
  const int n = static_cast<int>(ch.h_sat_u1.size());

  ConvDesignIntermediates inter;
  inter.beta = beta;
  inter.p_s = p_s;
  inter.g_u1 = conj_of(ch.h_sat_u1);
  inter.g_u2 = conj_of(ch.h_sat_u2);
  inter.f_e1 = conj_of(ch.h_sat_e1);
  inter.f_e2 = conj_of(ch.h_sat_e2);

  inter.load_u1 = noise.sigma2_u1 / ((1.0 - beta) * p_s);
  inter.load_u2 = noise.sigma2_u2 / (beta * p_s);
  inter.load_e1 = noise.sigma2_e1 / ((1.0 - beta) * p_s);
  inter.load_e2 = noise.sigma2_e2 / (beta * p_s);

  inter.u1_mat = Matrix::identity(n) * inter.load_u1 + Matrix::conj_outer(ch.h_sat_u1);
  inter.u2_mat = Matrix::identity(n) * inter.load_u2 + Matrix::conj_outer(ch.h_sat_u2);
  inter.e1_mat = Matrix::identity(n) * inter.load_e1 + Matrix::conj_outer(ch.h_sat_e1);
  inter.e2_mat = Matrix::identity(n) * inter.load_e2 + Matrix::conj_outer(ch.h_sat_e2);

  inter.lambda_w1 =
      structured_pencil_max(inter.load_u2, inter.g_u2, inter.load_e2, inter.f_e2).value;
  inter.lambda_w2 =
      structured_pencil_max(inter.load_u1, inter.g_u1, inter.load_e1, inter.f_e1).value;

  inter.c_const =
      std::max(0.0, std::log2(1.0 + powers.user1_w * norm_sq(ch.h_u1_sat) / noise.sigma2_sat) -
                        std::log2(1.0 + powers.user1_w * std::norm(ch.h_u1_e1) / noise.sigma2_e1));
  inter.d_const =
      std::max(0.0, std::log2(1.0 + powers.user2_w * norm_sq(ch.h_u2_sat) / noise.sigma2_sat) -
                        std::log2(1.0 + powers.user2_w * std::norm(ch.h_u2_e2) / noise.sigma2_e2));
  return inter;
}

std::pair<CVec, CVec> design_beamformers_con(const ConvDesignIntermediates& inter, double beta,
                                             double p_s) {
  const solvers::EigPair p1 =
      structured_pencil_max(inter.load_u2, inter.g_u2, inter.load_e2, inter.f_e2);
  const solvers::EigPair p2 =
      structured_pencil_max(inter.load_u1, inter.g_u1, inter.load_e1, inter.f_e1);

  CVec w1 = p1.vector;
  CVec w2 = p2.vector;
  const double s1 = std::sqrt(beta * p_s);
  const double s2 = std::sqrt((1.0 - beta) * p_s);
  for (cx& z : w1) z *= s1;
  for (cx& z : w2) z *= s2;
  return {std::move(w1), std::move(w2)};
}

solvers::LpResult allocate_time_con(const ConvDesignIntermediates& inter,
                                    const NoiseModel& noise) {
  const double a =
      std::max(0.0, std::log2(noise.sigma2_e2 / noise.sigma2_u2 * inter.lambda_w1));
  const double b =
      std::max(0.0, std::log2(noise.sigma2_e1 / noise.sigma2_u1 * inter.lambda_w2));
  return solvers::tiny_lp(inter.c_const, inter.d_const, a, b);
}

namespace {

struct BetaEval {
  double value = 0.0;
  double u1 = 0.0, u2 = 0.0;
  rates::TimeAllocation time;
};

BetaEval evaluate_beta(const ConvDesignIntermediates& inter, const NoiseModel& noise,
                       const TimePolicy& policy) {
  const double a =
      std::max(0.0, std::log2(noise.sigma2_e2 / noise.sigma2_u2 * inter.lambda_w1));
  const double b =
      std::max(0.0, std::log2(noise.sigma2_e1 / noise.sigma2_u1 * inter.lambda_w2));

  BetaEval ev;
  if (policy.kind == TimePolicy::Kind::Optimized) {
    const solvers::LpResult lp = solvers::tiny_lp(inter.c_const, inter.d_const, a, b);
    ev.time = {lp.t1, lp.t2, lp.t3};
    ev.u1 = lp.u1;
    ev.u2 = lp.u2;
    ev.value = lp.objective;
  } else {
    double t1, t2;
    if (policy.kind == TimePolicy::Kind::EqualThirds) {
      t1 = t2 = 1.0 / 3.0;
    } else {
      t1 = policy.t1;
      t2 = policy.t2;
    }
    const double t3 = 1.0 - t1 - t2;
    if (!(t1 > 0.0) || !(t2 > 0.0) || !(t3 > 0.0))
      throw std::invalid_argument("conv time policy: slots must be positive and sum below 1");
    ev.time = {t1, t2, t3};
    ev.u1 = std::min(t1 * inter.c_const, t2 * a);
    ev.u2 = std::min(t1 * inter.d_const, t3 * b);
    ev.value = ev.u1 + ev.u2;
  }
  return ev;
}

}  // namespace

ConvSolution optimize_beta(const ChannelSet& ch, const NoiseModel& noise, const TxPowers& powers,
                           const SearchConfig& search, const TimePolicy& policy) {
  search.validate();
  const int bins = search.beta_bins;

  ConvSolution best;
  double best_val = -1.0;
  double best_beta = 0.5;
  BetaEval best_ev;
  for (int k = 1; k <= bins; ++k) {
    const double beta = static_cast<double>(k) / (bins + 1);
    const ConvDesignIntermediates inter = build_intermediates(ch, noise, powers, beta);
    const BetaEval ev = evaluate_beta(inter, noise, policy);
    if (ev.value > best_val) {
      best_val = ev.value;
      best_beta = beta;
      best_ev = ev;
    }
  }

  const ConvDesignIntermediates inter = build_intermediates(ch, noise, powers, best_beta);
  auto [w1, w2] = design_beamformers_con(inter, best_beta, powers.sat_fl_w);
  best.beta = best_beta;
  best.w1 = std::move(w1);
  best.w2 = std::move(w2);
  best.time = best_ev.time;
  best.u1 = best_ev.u1;
  best.u2 = best_ev.u2;
  best.sum_secrecy = best_ev.value;
  return best;
}

MonotonicityCheck theorem1_monotonicity_check(const ChannelSet& ch, const NoiseModel& noise,
                                              const TxPowers& powers, double beta,
                                              std::span<const double> alpha_grid) {
  const ConvDesignIntermediates inter = build_intermediates(ch, noise, powers, beta);
  const auto [w1, w2] = design_beamformers_con(inter, beta, powers.sat_fl_w);
  const solvers::LpResult lp = allocate_time_con(inter, noise);

  const auto transposed_gain = [](const CVec& h, const CVec& w) {
    cx dot = 0.0;
    for (size_t k = 0; k < h.size(); ++k) dot += h[k] * w[k];
    return std::norm(dot);
  };

  MonotonicityCheck out;
  const auto run = [&](double x_user, double y_eve, double sigma2_u, double sigma2_e, double t,
                       bool& checked, bool& ok) {
    // Precondition: the eavesdropper-weighted user gain dominates.
    if (!(sigma2_e * x_user > sigma2_u * y_eve)) return;
    checked = true;
    ok = true;
    double prev = -1e300;
    for (double alpha : alpha_grid) {
      const double a2 = alpha * alpha;
      const double f = t * std::log2(sigma2_e / sigma2_u * (sigma2_u + a2 * x_user) /
                                     (sigma2_e + a2 * y_eve));
      if (f < prev - 1e-12) ok = false;
      prev = f;
    }
  };

  run(transposed_gain(ch.h_sat_u2, w1), transposed_gain(ch.h_sat_e2, w1), noise.sigma2_u2,
      noise.sigma2_e2, lp.t2, out.checked_f1, out.ok_f1);
  run(transposed_gain(ch.h_sat_u1, w2), transposed_gain(ch.h_sat_e1, w2), noise.sigma2_u1,
      noise.sigma2_e1, lp.t3, out.checked_f2, out.ok_f2);
  return out;
}

}  // namespace satsec::conv_scheme
