#pragma once

#include "satsec/channel_gen.hpp"
#include "satsec/rates.hpp"
#include "satsec/solvers.hpp"
#include "satsec/types.hpp"

namespace satsec::xor_scheme {

using channel_gen::ChannelSet;
using rates::NoiseModel;
using rates::TxPowers;

/// Which branch of the forward-link secrecy case table applied.
enum class Branch { Case1, Case2, Case3, AllBlocked };

struct XorSolution {
  rates::TimeAllocation time;  // t3 unused (zero)
  CVec beamformer;             // after any cap-driven power scaling
  double u_star = 0.0;         // supported broadcast rate
  double sum_secrecy = 0.0;
  double rl_secrecy_u1 = 0.0, rl_secrecy_u2 = 0.0;
  Branch branch = Branch::AllBlocked;
};

struct SearchConfig {
  int time_bins = 100;  // interior grid points for the t1 search
  int beta_bins = 100;  // conventional power-split grid
  double tolerance = 1e-9;

  void validate() const;
};

/// Time-independent part of the design: per-unit-time RL secrecy
/// coefficients, the case branch (fixed by their signs), and the
/// full-power beamformer with its min-SNR. Computed once per channel set
/// and reused across the whole t1 grid.
struct XorPrecompute {
  double c1 = 0.0, c2 = 0.0;  // RL secrecy per unit time, clamped at zero
  Branch branch = Branch::AllBlocked;
  double gamma_full = 0.0;    // min FL SNR of the full-power beamformer
  CVec beam_full;             // full-power beamformer direction
  solvers::MaxMinSdpResult sdp;  // populated in case 1
};

XorPrecompute precompute(const ChannelSet& ch, const NoiseModel& noise, const TxPowers& powers);

struct XorEvaluation {
  double u_star = 0.0;
  double sum_secrecy = 0.0;
  double cap = 0.0;  // RL-side upper bound on the useful broadcast rate
};

/// Canonical objective value at a given t1. Every scheme variant (equal,
/// optimized, explicit-time) evaluates through this single path, which is
/// what makes per-trial dominance comparisons exact.
XorEvaluation evaluate_at(const XorPrecompute& pre, double t1);

/// Full design at fixed (t1, t2 = 1 - t1): SDP beamformer in case 1,
/// matched beam toward the receiving user when only one RL is secure,
/// zero when none is; then cap-driven power scaling.
XorSolution design_beamformer_xor(const ChannelSet& ch, const NoiseModel& noise,
                                  const TxPowers& powers, double t1, double t2);

/// If t2*log2(1+gamma_star) exceeds cap_u, scales w down so the minimum
/// forward-link rate equals the cap exactly; otherwise returns w unchanged.
CVec rl_cap_power_scaling(CVec w, double gamma_star, double cap_u, double t2);

/// Grid search over t1 in {k/(m+1)} plus the equal-split point 0.5 (kept in
/// the candidate set so optimized never falls below equal allocation).
XorSolution optimize_time_xor(const ChannelSet& ch, const NoiseModel& noise,
                              const TxPowers& powers, const SearchConfig& search);

}  // namespace satsec::xor_scheme
