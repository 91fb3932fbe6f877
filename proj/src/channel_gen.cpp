#include "satsec/channel_gen.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace satsec::channel_gen {

namespace {

uint64_t splitmix64(uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

uint64_t mix_seed(uint64_t master_seed, uint64_t stream_index) {
  uint64_t s = master_seed;
  (void)splitmix64(s);
  s ^= stream_index + 0x9e3779b97f4a7c15ull;
  return splitmix64(s);
}

double Rng::uniform01() {
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) {
  return lo + uniform01() * (hi - lo);
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform01();  // (0, 1]
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

cx Rng::complex_gaussian(double total_variance) {
  const double s = std::sqrt(0.5 * total_variance);
  const double re = gaussian();
  const double im = gaussian();
  return cx(s * re, s * im);
}

double Rng::lognormal(double mu, double sigma) {
  return std::exp(mu + sigma * gaussian());
}

void FadingParams::validate() const {
  if (!(los_mean > 0.0)) throw std::invalid_argument("fading: LOS mean must be positive");
  if (los_variance < 0.0) throw std::invalid_argument("fading: LOS variance must be nonnegative");
  if (!(diffuse_power > 0.0)) throw std::invalid_argument("fading: diffuse power must be positive");
  if (!std::isfinite(rl_k_factor_db)) throw std::invalid_argument("fading: K-factor must be finite");
}

std::pair<double, double> FadingParams::lognormal_mu_sigma() const {
  // exp(N(mu, s^2)) with mean m and variance v in the linear domain:
  // s^2 = ln(1 + v/m^2), mu = ln(m) - s^2/2.
  const double m = los_mean;
  const double v = los_variance;
  const double s2 = std::log1p(v / (m * m));
  return {std::log(m) - 0.5 * s2, std::sqrt(s2)};
}

CVec draw_satellite_channel(Rng& rng, int n_feeds, const FadingParams& fading,
                            double pathloss_db, double gains_db, Direction direction) {
  if (n_feeds < 2) throw std::invalid_argument("draw_satellite_channel: need at least 2 feeds");
  const double amp = std::sqrt(link_budget::db_to_linear(gains_db - pathloss_db));

  CVec h(n_feeds);
  if (direction == Direction::ForwardLink) {
    const auto [mu, sigma] = fading.lognormal_mu_sigma();
    for (int k = 0; k < n_feeds; ++k) {
      const double los_amp = rng.lognormal(mu, sigma);
      const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const cx diffuse = rng.complex_gaussian(fading.diffuse_power);
      h[k] = amp * (std::polar(los_amp, phase) + diffuse);
    }
  } else {
    // Fixed K-factor, unit total fading power: LOS power K/(K+1),
    // diffuse power 1/(K+1).
    const double k_lin = link_budget::db_to_linear(fading.rl_k_factor_db);
    const double los_amp = std::sqrt(k_lin / (k_lin + 1.0));
    const double diffuse_var = 1.0 / (k_lin + 1.0);
    for (int k = 0; k < n_feeds; ++k) {
      const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
      const cx diffuse = rng.complex_gaussian(diffuse_var);
      h[k] = amp * (std::polar(los_amp, phase) + diffuse);
    }
  }
  return h;
}

cx draw_ground_channel(Rng& rng, double distance_m, double carrier_freq_hz,
                       const link_budget::GroundChannelParams& params, double gains_db) {
  if (!(distance_m > 0.0)) throw std::invalid_argument("draw_ground_channel: distance must be positive");
  const double loss_db =
      link_budget::ground_pathloss_db(distance_m, carrier_freq_hz, params.pathloss_exponent);
  const double amp = std::sqrt(link_budget::db_to_linear(gains_db - loss_db));
  return amp * rng.complex_gaussian(1.0);
}

ScenarioChannelConfig ScenarioChannelConfig::from_budget(const link_budget::LinkBudget& lb,
                                                         const FadingParams& fading,
                                                         const link_budget::GroundChannelParams& ground,
                                                         int n_feeds) {
  ScenarioChannelConfig cfg;
  cfg.n_feeds = n_feeds;
  cfg.fading = fading;
  cfg.ground = ground;
  cfg.sat_gains_db = lb.sat_antenna_gain_dbi + lb.terminal_antenna_gain_dbi;
  cfg.sat_pathloss_db = lb.sat_link_pathloss_db;
  cfg.ground_gains_db = 2.0 * lb.terminal_antenna_gain_dbi;
  cfg.rl_freq_hz = lb.rl_freq_hz;
  return cfg;
}

void ScenarioChannelConfig::validate() const {
  if (n_feeds < 2) throw std::invalid_argument("scenario config: need at least 2 feeds");
  fading.validate();
  ground.validate();
  if (fixed_eve_distance_m && !(*fixed_eve_distance_m > 0.0))
    throw std::invalid_argument("scenario config: fixed eavesdropper distance must be positive");
}

ChannelSet draw_scenario(Rng& rng, const ScenarioChannelConfig& config) {
  config.validate();
  ChannelSet ch;

  if (config.fixed_eve_distance_m) {
    ch.eve_distances_m = {*config.fixed_eve_distance_m, *config.fixed_eve_distance_m};
  } else {
    const auto [lo, hi] = config.ground.eve_distance_range_m;
    ch.eve_distances_m.first = rng.uniform(lo, hi);
    ch.eve_distances_m.second = rng.uniform(lo, hi);
  }

  const auto sat = [&](Direction dir) {
    return draw_satellite_channel(rng, config.n_feeds, config.fading, config.sat_pathloss_db,
                                  config.sat_gains_db, dir);
  };
  ch.h_u1_sat = sat(Direction::ReturnLink);
  ch.h_u2_sat = sat(Direction::ReturnLink);
  ch.h_sat_u1 = sat(Direction::ForwardLink);
  ch.h_sat_u2 = sat(Direction::ForwardLink);
  ch.h_sat_e1 = sat(Direction::ForwardLink);
  ch.h_sat_e2 = sat(Direction::ForwardLink);

  ch.h_u1_e1 = draw_ground_channel(rng, ch.eve_distances_m.first, config.rl_freq_hz,
                                   config.ground, config.ground_gains_db);
  ch.h_u2_e2 = draw_ground_channel(rng, ch.eve_distances_m.second, config.rl_freq_hz,
                                   config.ground, config.ground_gains_db);
  return ch;
}

}  // namespace satsec::channel_gen
