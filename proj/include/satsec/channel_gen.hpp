#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <utility>

#include "satsec/link_budget.hpp"
#include "satsec/types.hpp"

namespace satsec::channel_gen {

/// Identifier recorded in output headers; any change to the generator or to
/// the draw recipes below must bump it.
inline constexpr const char* kRngId = "mt19937_64+boxmuller/v1";

uint64_t mix_seed(uint64_t master_seed, uint64_t stream_index);

/// Deterministic generator: mt19937_64 (bit-exact per the standard) with
/// uniforms taken as 53-bit mantissas and gaussians via Box-Muller. The
/// spare gaussian of each Box-Muller pair is cached.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}
  static Rng for_trial(uint64_t master_seed, uint64_t trial_index) {
    return Rng(mix_seed(master_seed, trial_index));
  }

  double uniform01();  // [0, 1)
  double uniform(double lo, double hi);
  double gaussian();
  cx complex_gaussian(double total_variance);  // CN(0, total_variance)
  double lognormal(double mu, double sigma);

 private:
  std::mt19937_64 eng_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Rician fading shape parameters. Forward-link line-of-sight amplitudes are
/// lognormal with the given linear-domain envelope mean and variance; the
/// return link uses a fixed K-factor with unit total fading power.
struct FadingParams {
  double los_mean = 0.787;
  double los_variance = 0.0671;
  double diffuse_power = 0.0456;
  double rl_k_factor_db = 15.0;

  void validate() const;
  /// Parameters of the underlying normal for the lognormal LOS amplitude.
  std::pair<double, double> lognormal_mu_sigma() const;
};

enum class Direction { ReturnLink, ForwardLink };

/// One Monte Carlo draw of every channel coefficient in the system.
struct ChannelSet {
  CVec h_u1_sat, h_u2_sat;    // return link, user -> satellite
  CVec h_sat_u1, h_sat_u2;    // forward link, satellite -> user
  CVec h_sat_e1, h_sat_e2;    // forward link, satellite -> eavesdropper
  cx h_u1_e1, h_u2_e2;        // ground, user -> own eavesdropper
  std::pair<double, double> eve_distances_m{0.0, 0.0};
};

/// Per-feed coefficient: sqrt(linear(gains - pathloss)) * (LOS + diffuse).
/// Entries are independent across feeds. n_feeds must be at least 2.
CVec draw_satellite_channel(Rng& rng, int n_feeds, const FadingParams& fading,
                            double pathloss_db, double gains_db, Direction direction);

/// CN(0,1) scaled by sqrt(linear(gains - ground_pathloss)).
cx draw_ground_channel(Rng& rng, double distance_m, double carrier_freq_hz,
                       const link_budget::GroundChannelParams& params, double gains_db);

struct ScenarioChannelConfig {
  int n_feeds = 5;
  FadingParams fading;
  link_budget::GroundChannelParams ground;
  double sat_gains_db = 27.8;     // satellite antenna + terminal antenna
  double sat_pathloss_db = 151.0;
  double ground_gains_db = 7.0;   // two terminal antennas
  double rl_freq_hz = 1.616e9;
  /// When set, replaces the random eavesdropper distance draw entirely
  /// (the uniforms are then not consumed, keeping the satellite draws
  /// aligned across distance sweeps).
  std::optional<double> fixed_eve_distance_m;

  static ScenarioChannelConfig from_budget(const link_budget::LinkBudget& lb,
                                           const FadingParams& fading,
                                           const link_budget::GroundChannelParams& ground,
                                           int n_feeds);
  void validate() const;
};

/// Draw order is fixed: eavesdropper distances, the four RL/FL user vectors,
/// the two eavesdropper FL vectors, then the two ground scalars.
ChannelSet draw_scenario(Rng& rng, const ScenarioChannelConfig& config);

}  // namespace satsec::channel_gen
