#pragma once

#include <stdexcept>

#include "satsec/solvers/dense.hpp"

namespace satsec::solvers {

/// Solution of  max_{W >= 0, tr(W) <= P}  min(tr(WA)/sigma1^2, tr(WB)/sigma2^2)
/// for rank-one A and B built from channel vectors.
struct MaxMinSdpResult {
  double gamma_star = 0.0;  // attained min-SNR
  Matrix gram;              // W, Hermitian PSD, trace <= p_total
  CVec beamformer;          // rank-one factor w with W = w w^H
  double power_used = 0.0;  // ||w||^2
};

struct RankReductionError : std::runtime_error {
  explicit RankReductionError(const std::string& what) : std::runtime_error(what) {}
};

/// Any power outside span{a, b} (the rank-one factors of A and B) is wasted,
/// so the problem reduces to a 2x2 Hermitian variable over that span. The
/// reduced SDP is solved by bisection on gamma with a closed-form minimum-trace
/// feasibility check, and the feasible point is rescaled to the full budget.
/// Near-parallel factors collapse the span to one dimension and are solved
/// directly. Zero A and B yield gamma_star = 0 with a zero gram.
MaxMinSdpResult maxmin_sdp(const Matrix& a_mat, const Matrix& b_mat, double sigma2_1,
                           double sigma2_2, double p_total);

/// Recovers a beamformer from a feasible gram matrix. A gram that is already
/// rank one (second eigenvalue below 1e-8 of its trace) returns its scaled top
/// eigenvector; otherwise the standard purification walk removes eigenvalues
/// while preserving tr(W), tr(WA) and tr(WB) until rank one is reached.
CVec rank_one_extract(const MaxMinSdpResult& result, const Matrix& a_mat, const Matrix& b_mat,
                      double sigma2_1, double sigma2_2, double p_total);

/// Factor of an (assumed) rank-one Hermitian PSD matrix: v with M = v v^H.
/// Throws std::invalid_argument when the residual exceeds tol * trace.
CVec rank_one_factor(const Matrix& m, double tol = 1e-9);

}  // namespace satsec::solvers
