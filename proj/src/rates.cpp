#include "satsec/rates.hpp"

#include <cmath>
#include <stdexcept>

#include "satsec/solvers/dense.hpp"

namespace satsec::rates {

namespace {

void check_time(double t, const char* who) {
  if (!(t > 0.0) || t > 1.0) throw std::invalid_argument(std::string(who) + ": time fraction outside (0, 1]");
}

void check_nonneg(double x, const char* who) {
  if (!(x >= 0.0)) throw std::invalid_argument(std::string(who) + ": negative rate");
}

}  // namespace

NoiseModel NoiseModel::from_budget(const link_budget::LinkBudget& lb) {
  NoiseModel n;
  n.sigma2_sat = lb.sat_noise_w();
  n.sigma2_u1 = n.sigma2_u2 = lb.terminal_noise_w();
  n.sigma2_e1 = n.sigma2_e2 = lb.terminal_noise_w();
  return n;
}

void NoiseModel::validate() const {
  for (double s : {sigma2_sat, sigma2_u1, sigma2_u2, sigma2_e1, sigma2_e2})
    if (!(s > 0.0)) throw std::invalid_argument("noise model: variances must be positive");
}

TxPowers TxPowers::from_budget(const link_budget::LinkBudget& lb) {
  TxPowers p;
  p.user1_w = p.user2_w = lb.user_tx_power_w();
  p.sat_fl_w = lb.fl_tx_power_w();
  return p;
}

TimeAllocation TimeAllocation::two_slot(double t1) {
  check_time(t1, "two_slot");
  if (t1 >= 1.0) throw std::invalid_argument("two_slot: t1 must leave forward-link time");
  return {t1, 1.0 - t1, 0.0};
}

TimeAllocation TimeAllocation::three_slot(double t1, double t2) {
  check_time(t1, "three_slot");
  check_time(t2, "three_slot");
  const double t3 = 1.0 - t1 - t2;
  if (!(t3 > 0.0)) throw std::invalid_argument("three_slot: slots must leave positive t3");
  return {t1, t2, t3};
}

double rl_capacity(double p_user_w, std::span<const cx> h, double sigma2_w, double t1) {
  check_time(t1, "rl_capacity");
  return t1 * std::log2(1.0 + p_user_w * solvers::norm_sq(h) / sigma2_w);
}

double eve_rl_capacity(double p_user_w, cx h, double sigma2_w, double t1) {
  check_time(t1, "eve_rl_capacity");
  return t1 * std::log2(1.0 + p_user_w * std::norm(h) / sigma2_w);
}

double fl_rate(std::span<const cx> w, std::span<const cx> h, double sigma2_w, double t) {
  check_time(t, "fl_rate");
  cx dot = 0.0;
  for (size_t k = 0; k < h.size(); ++k) dot += h[k] * w[k];
  return t * std::log2(1.0 + std::norm(dot) / sigma2_w);
}

double rl_secrecy(double i_user, double i_eve) {
  return std::max(0.0, i_user - i_eve);
}

double fl_secrecy_xor(double sr_rl_u1, double sr_rl_u2, double i_fl_u1, double i_fl_u2) {
  check_nonneg(sr_rl_u1, "fl_secrecy_xor");
  check_nonneg(sr_rl_u2, "fl_secrecy_xor");
  check_nonneg(i_fl_u1, "fl_secrecy_xor");
  check_nonneg(i_fl_u2, "fl_secrecy_xor");
  const bool secure1 = sr_rl_u1 > 0.0;
  const bool secure2 = sr_rl_u2 > 0.0;
  if (secure1 && secure2) return std::min(i_fl_u1, i_fl_u2);
  if (!secure1 && secure2) return i_fl_u1;
  if (secure1 && !secure2) return i_fl_u2;
  return 0.0;
}

double end_to_end_xor(double sr_rl, double sr_fl) {
  return std::min(sr_rl, sr_fl);
}

double sum_secrecy_xor(double sr_u1, double sr_u2) {
  return sr_u1 + sr_u2;
}

double fl_secrecy_con(double i_fl_user, double i_fl_eve) {
  return std::max(0.0, i_fl_user - i_fl_eve);
}

double end_to_end_con(double own_rl_secrecy, double delivering_fl_secrecy) {
  return std::min(own_rl_secrecy, delivering_fl_secrecy);
}

double sum_secrecy_con(double sr_u1, double sr_u2) {
  return sr_u1 + sr_u2;
}

}  // namespace satsec::rates
