#pragma once

#include <cstdint>
#include <span>

#include "satsec/solvers/dense.hpp"
#include "satsec/types.hpp"

namespace satsec::oracles {

/// Brute-force reference for the max-min beamforming problem: unit vectors
/// of the 2-D subspace spanned by the channel factors are parametrized as
/// cos(theta) q1 + sin(theta) e^{i phi} q2 on an n_theta x n_phi grid,
/// scaled to full power, and the best min-SNR is returned. Independent of
/// the solver: it performs its own basis construction.
double sdp_grid_best_min_snr(std::span<const cx> a, std::span<const cx> b, double sigma2_1,
                             double sigma2_2, double p_total, int n_theta = 2000,
                             int n_phi = 2000);

/// Grid search for the three-slot LP. Each stage lays an n x n grid over the
/// (t1, t2) simplex region of interest and the next stage zooms into the
/// best cell's neighborhood; three stages of 1000 x 1000 resolve the optimum
/// to well below 1e-6 absolute for unit-scale coefficients.
double lp_grid_best(double c, double d, double a, double b, int n = 1000, int stages = 3);

/// Largest generalized Rayleigh quotient v^H U v / v^H E v over n_samples
/// pseudo-random vectors (xorshift-driven, deterministic in the seed).
double sampled_max_generalized_quotient(const solvers::Matrix& u, const solvers::Matrix& e,
                                        int n_samples, uint64_t seed);

/// Largest plain Rayleigh quotient v^H M v / v^H v over random samples.
double sampled_max_quotient(const solvers::Matrix& m, int n_samples, uint64_t seed);

}  // namespace satsec::oracles
