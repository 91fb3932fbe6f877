#pragma once

#include <span>
#include <utility>

#include "satsec/channel_gen.hpp"
#include "satsec/rates.hpp"
#include "satsec/solvers.hpp"
#include "satsec/types.hpp"
#include "satsec/xor_scheme.hpp"

namespace satsec::conv_scheme {

using channel_gen::ChannelSet;
using rates::NoiseModel;
using rates::TxPowers;
using xor_scheme::SearchConfig;

/// Top eigenpair of the pencil (alpha_u I + g g^H, alpha_e I + f f^H).
/// Both matrices are identity-plus-rank-one, so the pencil restricted to
/// span{g, f} carries the maximum; the reduced 2x2 problem is solved in
/// closed form. Cross-checked against the general Cholesky-whitened kernel.
solvers::EigPair structured_pencil_max(double alpha_u, std::span<const cx> g, double alpha_e,
                                       std::span<const cx> f);

/// Quadratic-form matrices of the two forward-link secrecy quotients and the
/// return-link secrecy constants. The identity loadings carry the beta power
/// split, so the quotients equal the true rate ratios only at full per-beam
/// power (which the designed beamformers always use).
struct ConvDesignIntermediates {
  solvers::Matrix u1_mat, u2_mat, e1_mat, e2_mat;
  double lambda_w1 = 0.0;  // max eigenvalue of (U2, E2), quotient of w1
  double lambda_w2 = 0.0;  // max eigenvalue of (U1, E1), quotient of w2
  double c_const = 0.0;    // U1's RL secrecy per unit time, clamped at zero
  double d_const = 0.0;    // U2's
  double beta = 0.0;
  double p_s = 0.0;
  // Identity loadings and conjugated channel factors, kept for the
  // closed-form eigenvector path.
  double load_u1 = 0.0, load_u2 = 0.0, load_e1 = 0.0, load_e2 = 0.0;
  CVec g_u1, g_u2, f_e1, f_e2;
};

ConvDesignIntermediates build_intermediates(const ChannelSet& ch, const NoiseModel& noise,
                                            const TxPowers& powers, double beta);

/// w1: top generalized eigenvector of (U2, E2), scaled to ||w1||^2 = beta*Ps.
/// w2: top generalized eigenvector of (U1, E1), scaled to (1-beta)*Ps.
/// w1 delivers U1's message to U2 in slot t2; w2 delivers U2's message to U1
/// in slot t3.
std::pair<CVec, CVec> design_beamformers_con(const ConvDesignIntermediates& inter, double beta,
                                             double p_s);

/// Forward-link secrecy slopes a, b from the eigenvalues (negative logs
/// clamped to zero), then the three-slot LP.
solvers::LpResult allocate_time_con(const ConvDesignIntermediates& inter, const NoiseModel& noise);

struct ConvSolution {
  double beta = 0.0;
  CVec w1, w2;
  rates::TimeAllocation time;
  double u1 = 0.0, u2 = 0.0;
  double sum_secrecy = 0.0;
};

/// How the slot times are chosen inside the beta search.
struct TimePolicy {
  enum class Kind { Optimized, EqualThirds, Explicit } kind = Kind::Optimized;
  double t1 = 0.0, t2 = 0.0;  // Explicit only

  static TimePolicy optimized() { return {Kind::Optimized, 0.0, 0.0}; }
  static TimePolicy equal_thirds() { return {Kind::EqualThirds, 0.0, 0.0}; }
  static TimePolicy explicit_times(double t1, double t2) { return {Kind::Explicit, t1, t2}; }
};

/// Grid search over beta in {k/(bins+1)}; each candidate builds the
/// intermediates, applies the time policy and keeps the best sum secrecy.
ConvSolution optimize_beta(const ChannelSet& ch, const NoiseModel& noise, const TxPowers& powers,
                           const SearchConfig& search,
                           const TimePolicy& policy = TimePolicy::optimized());

/// Power-scaling monotonicity of the two forward-link secrecy terms,
/// checked on a grid of amplitude factors. A beamformer whose user-side
/// weighted gain does not dominate the eavesdropper side fails the
/// precondition and is skipped rather than failed.
struct MonotonicityCheck {
  bool checked_f1 = false, ok_f1 = false;
  bool checked_f2 = false, ok_f2 = false;

  bool skipped() const { return !checked_f1 && !checked_f2; }
  bool passed() const { return (!checked_f1 || ok_f1) && (!checked_f2 || ok_f2); }
};

MonotonicityCheck theorem1_monotonicity_check(const ChannelSet& ch, const NoiseModel& noise,
                                              const TxPowers& powers, double beta,
                                              std::span<const double> alpha_grid);

}  // namespace satsec::conv_scheme
