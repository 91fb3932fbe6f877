#pragma once

#include <span>

#include "satsec/link_budget.hpp"
#include "satsec/types.hpp"

namespace satsec::rates {

/// Receiver noise variances in watts. Eavesdroppers are ordinary terminals
/// and share the terminal noise temperature.
struct NoiseModel {
  double sigma2_sat = 0.0;
  double sigma2_u1 = 0.0, sigma2_u2 = 0.0;
  double sigma2_e1 = 0.0, sigma2_e2 = 0.0;

  static NoiseModel from_budget(const link_budget::LinkBudget& lb);
  void validate() const;
};

/// Transmit powers in watts, gathered from the link budget.
struct TxPowers {
  double user1_w = 1.0;
  double user2_w = 1.0;
  double sat_fl_w = 5.8210;

  static TxPowers from_budget(const link_budget::LinkBudget& lb);
};

/// Slot fractions. The XOR protocol uses two slots (t3 = 0); the
/// conventional protocol uses three.
struct TimeAllocation {
  double t1 = 0.0, t2 = 0.0, t3 = 0.0;

  static TimeAllocation two_slot(double t1);
  static TimeAllocation three_slot(double t1, double t2);
};

/// All rates are in bits per channel use (base-2 logs; the bandwidth factor
/// is omitted throughout).

double rl_capacity(double p_user_w, std::span<const cx> h, double sigma2_w, double t1);
double eve_rl_capacity(double p_user_w, cx h, double sigma2_w, double t1);
/// t * log2(1 + |h^T w|^2 / sigma^2) -- transpose, not conjugate, pairing.
double fl_rate(std::span<const cx> w, std::span<const cx> h, double sigma2_w, double t);

/// max(0, user capacity - eavesdropper capacity).
double rl_secrecy(double i_user, double i_eve);

/// Forward-link secrecy of the XOR broadcast. With at least one secure
/// return link the eavesdroppers recover nothing from the combined stream,
/// so the FL secrecy equals the supported broadcast rate: the minimum user
/// rate when both RLs are secure, or the receiving user's rate when only
/// one is. Both RLs insecure yields zero.
double fl_secrecy_xor(double sr_rl_u1, double sr_rl_u2, double i_fl_u1, double i_fl_u2);

double end_to_end_xor(double sr_rl, double sr_fl);
double sum_secrecy_xor(double sr_u1, double sr_u2);

double fl_secrecy_con(double i_fl_user, double i_fl_eve);
/// A user's message crosses its own return link and the forward-link hop
/// toward the other user; the end-to-end secrecy is the bottleneck of the two.
double end_to_end_con(double own_rl_secrecy, double delivering_fl_secrecy);
double sum_secrecy_con(double sr_u1, double sr_u2);

}  // namespace satsec::rates
