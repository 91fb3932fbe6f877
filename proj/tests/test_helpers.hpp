#pragma once

#include <cmath>

#include "satsec/channel_gen.hpp"
#include "satsec/rates.hpp"
#include "satsec/solvers.hpp"
#include "satsec/types.hpp"

namespace satsec::test {

inline CVec unit_vec(size_t n, size_t k, double scale = 1.0) {
  CVec v(n, 0.0);
  v[k] = scale;
  return v;
}

inline CVec random_cvec(channel_gen::Rng& rng, size_t n, double scale = 1.0) {
  CVec v(n);
  for (size_t k = 0; k < n; ++k) v[k] = scale * rng.complex_gaussian(1.0);
  return v;
}

inline solvers::Matrix random_hermitian(channel_gen::Rng& rng, int n) {
  solvers::Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = rng.gaussian();
    for (int j = i + 1; j < n; ++j) {
      const cx z = rng.complex_gaussian(1.0);
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  }
  return m;
}

inline solvers::Matrix random_pd(channel_gen::Rng& rng, int n, double ridge = 0.1) {
  solvers::Matrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.complex_gaussian(1.0);
  solvers::Matrix m = g * g.adjoint();
  m += solvers::Matrix::identity(n) * ridge;
  // Exact hermitization; the product can drift in the last ulp.
  for (int i = 0; i < n; ++i) {
    m(i, i) = cx(m(i, i).real(), 0.0);
    for (int j = i + 1; j < n; ++j) {
      const cx v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
  }
  return m;
}

/// Channel set with every link spelled out; defaults give both users strong
/// secure return links so the XOR design lands in case 1.
struct ChannelBuilder {
  channel_gen::ChannelSet ch;

  explicit ChannelBuilder(size_t n_feeds) {
    ch.h_u1_sat = unit_vec(n_feeds, 0, 100.0);
    ch.h_u2_sat = unit_vec(n_feeds, 1, 100.0);
    ch.h_sat_u1 = unit_vec(n_feeds, 0);
    ch.h_sat_u2 = unit_vec(n_feeds, 1);
    ch.h_sat_e1 = CVec(n_feeds, 0.0);
    ch.h_sat_e2 = CVec(n_feeds, 0.0);
    ch.h_u1_e1 = 0.0;
    ch.h_u2_e2 = 0.0;
    ch.eve_distances_m = {2000.0, 2000.0};
  }
};

inline rates::NoiseModel unit_noise() {
  rates::NoiseModel n;
  n.sigma2_sat = n.sigma2_u1 = n.sigma2_u2 = n.sigma2_e1 = n.sigma2_e2 = 1.0;
  return n;
}

inline channel_gen::ChannelSet random_channels(channel_gen::Rng& rng, int n_feeds) {
  channel_gen::ScenarioChannelConfig cfg;
  cfg.n_feeds = n_feeds;
  return channel_gen::draw_scenario(rng, cfg);
}

}  // namespace satsec::test
