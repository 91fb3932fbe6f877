#include "satsec/xor_scheme.hpp"

#include <cmath>
#include <stdexcept>

namespace satsec::xor_scheme {

namespace {

using solvers::inner;
using solvers::Matrix;
using solvers::norm_sq;
using solvers::scaled;

CVec matched_beam(const CVec& h, double power) {
  // Maximizes |h^T w| under a power budget: w proportional to conj(h).
  CVec w(h.size());
  const double nrm = std::sqrt(norm_sq(h));
  const double s = std::sqrt(power) / nrm;
  for (size_t k = 0; k < h.size(); ++k) w[k] = s * std::conj(h[k]);
  return w;
}

}  // namespace

void SearchConfig::validate() const {
  if (time_bins < 2 || beta_bins < 2) throw std::invalid_argument("search config: bins must be >= 2");
}

XorPrecompute precompute(const ChannelSet& ch, const NoiseModel& noise, const TxPowers& powers) {
  noise.validate();
  XorPrecompute pre;
  pre.c1 = std::max(0.0, std::log2(1.0 + powers.user1_w * norm_sq(ch.h_u1_sat) / noise.sigma2_sat) -
                             std::log2(1.0 + powers.user1_w * std::norm(ch.h_u1_e1) / noise.sigma2_e1));
  pre.c2 = std::max(0.0, std::log2(1.0 + powers.user2_w * norm_sq(ch.h_u2_sat) / noise.sigma2_sat) -
                             std::log2(1.0 + powers.user2_w * std::norm(ch.h_u2_e2) / noise.sigma2_e2));

  const bool secure1 = pre.c1 > 0.0;
  const bool secure2 = pre.c2 > 0.0;
  if (secure1 && secure2) {
    pre.branch = Branch::Case1;
    const Matrix a = Matrix::conj_outer(ch.h_sat_u1);
    const Matrix b = Matrix::conj_outer(ch.h_sat_u2);
    pre.sdp = solvers::maxmin_sdp(a, b, noise.sigma2_u1, noise.sigma2_u2, powers.sat_fl_w);
    pre.gamma_full = pre.sdp.gamma_star;
    pre.beam_full = pre.sdp.beamformer;
  } else if (!secure1 && secure2) {
    // Only U2's message is live; it is delivered to U1.
    pre.branch = Branch::Case2;
    pre.beam_full = matched_beam(ch.h_sat_u1, powers.sat_fl_w);
    pre.gamma_full = powers.sat_fl_w * norm_sq(ch.h_sat_u1) / noise.sigma2_u1;
  } else if (secure1 && !secure2) {
    pre.branch = Branch::Case3;
    pre.beam_full = matched_beam(ch.h_sat_u2, powers.sat_fl_w);
    pre.gamma_full = powers.sat_fl_w * norm_sq(ch.h_sat_u2) / noise.sigma2_u2;
  } else {
    pre.branch = Branch::AllBlocked;
    pre.beam_full = CVec(ch.h_sat_u1.size(), 0.0);
  }
  return pre;
}

XorEvaluation evaluate_at(const XorPrecompute& pre, double t1) {
  if (!(t1 > 0.0) || !(t1 < 1.0)) throw std::invalid_argument("evaluate_at: t1 outside (0, 1)");
  const double t2 = 1.0 - t1;

  XorEvaluation ev;
  if (pre.branch == Branch::AllBlocked) return ev;

  const double fl_rate = t2 * std::log2(1.0 + pre.gamma_full);
  switch (pre.branch) {
    case Branch::Case1:
      ev.cap = t1 * std::max(pre.c1, pre.c2);
      ev.u_star = std::min(fl_rate, ev.cap);
      ev.sum_secrecy = std::min(t1 * pre.c1, ev.u_star) + std::min(t1 * pre.c2, ev.u_star);
      break;
    case Branch::Case2:
      ev.cap = t1 * pre.c2;
      ev.u_star = std::min(fl_rate, ev.cap);
      ev.sum_secrecy = std::min(t1 * pre.c2, ev.u_star);
      break;
    case Branch::Case3:
      ev.cap = t1 * pre.c1;
      ev.u_star = std::min(fl_rate, ev.cap);
      ev.sum_secrecy = std::min(t1 * pre.c1, ev.u_star);
      break;
    default:
      break;
  }
  return ev;
}

CVec rl_cap_power_scaling(CVec w, double gamma_star, double cap_u, double t2) {
  if (cap_u < 0.0) throw std::invalid_argument("rl_cap_power_scaling: negative cap");
  if (gamma_star <= 0.0) return w;
  if (t2 * std::log2(1.0 + gamma_star) <= cap_u) return w;
  const double gamma_cap = std::exp2(cap_u / t2) - 1.0;
  const double s = std::sqrt(gamma_cap / gamma_star);
  for (cx& z : w) z *= s;
  return w;
}

namespace {

XorSolution finalize(const XorPrecompute& pre, double t1) {
  const double t2 = 1.0 - t1;
  const XorEvaluation ev = evaluate_at(pre, t1);

  XorSolution sol;
  sol.time = {t1, t2, 0.0};
  sol.branch = pre.branch;
  sol.rl_secrecy_u1 = t1 * pre.c1;
  sol.rl_secrecy_u2 = t1 * pre.c2;
  sol.u_star = ev.u_star;
  sol.sum_secrecy = ev.sum_secrecy;
  sol.beamformer = rl_cap_power_scaling(pre.beam_full, pre.gamma_full, ev.cap, t2);
  return sol;
}

}  // namespace

XorSolution design_beamformer_xor(const ChannelSet& ch, const NoiseModel& noise,
                                  const TxPowers& powers, double t1, double t2) {
  if (std::abs(t1 + t2 - 1.0) > 1e-12 || !(t1 > 0.0) || !(t1 < 1.0))
    throw std::invalid_argument("design_beamformer_xor: t1 + t2 must be 1 with t1 in (0, 1)");
  return finalize(precompute(ch, noise, powers), t1);
}

XorSolution optimize_time_xor(const ChannelSet& ch, const NoiseModel& noise,
                              const TxPowers& powers, const SearchConfig& search) {
  search.validate();
  const XorPrecompute pre = precompute(ch, noise, powers);

  double best_t1 = 0.5;
  double best_val = evaluate_at(pre, 0.5).sum_secrecy;
  const int m = search.time_bins;
  for (int k = 1; k <= m; ++k) {
    const double t1 = static_cast<double>(k) / (m + 1);
    const double val = evaluate_at(pre, t1).sum_secrecy;
    if (val > best_val) {
      best_val = val;
      best_t1 = t1;
    }
  }
  return finalize(pre, best_t1);
}

}  // namespace satsec::xor_scheme
