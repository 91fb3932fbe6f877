#pragma once

#include <string>
#include <utility>

namespace satsec::link_budget {

inline constexpr double kSpeedOfLightMps = 2.99792458e8;

double db_to_linear(double x_db);
double linear_to_db(double x);

/// K*T*B noise floor in watts from the dB-domain Boltzmann constant.
double noise_power_w(double boltzmann_dbw_per_k_hz, double temperature_k, double bandwidth_hz);

/// 10*log10[(4*pi/lambda)^2 * d^exponent] for the user-to-eavesdropper
/// ground links. Satellite paths use the fixed budget constant instead.
double ground_pathloss_db(double distance_m, double carrier_freq_hz, double exponent);

double max_doppler_hz(double speed_mps, double carrier_freq_hz);

/// Satellite link budget. Defaults are the L-band LEO system the simulator
/// models; every field can be overridden from a JSON config file. All
/// computation downstream is in linear units, dB appears only here.
struct LinkBudget {
  double boltzmann_dbw_per_k_hz = -226.8;
  double carrier_bandwidth_hz = 41.67e3;
  double sat_noise_temp_k = 290.0;
  double terminal_noise_temp_k = 321.0;
  double total_sat_power_dbw = 31.46;
  double fl_tx_power_dbw = 7.65;
  double user_tx_power_dbw = 0.0;
  double sat_antenna_gain_dbi = 24.3;
  double terminal_antenna_gain_dbi = 3.5;
  double sat_link_pathloss_db = 151.0;
  double rl_freq_hz = 1.616e9;
  double fl_freq_hz = 1.616e9;
  double sat_doppler_hz = 270.0;
  int beams = 48;
  int feeds_total = 318;
  int carriers_per_beam = 20;
  int frequency_reuse_factor = 12;
  double guard_bandwidth_hz = 2.0e3;

  double fl_tx_power_w() const { return db_to_linear(fl_tx_power_dbw); }
  double user_tx_power_w() const { return db_to_linear(user_tx_power_dbw); }
  double sat_noise_w() const;
  double terminal_noise_w() const;

  /// Throws std::invalid_argument on out-of-range fields.
  void validate() const;

  /// Key/value JSON file; absent keys keep their defaults.
  static LinkBudget from_json_file(const std::string& path);
  static LinkBudget from_json_text(const std::string& text);
  std::string to_json_text() const;
};

struct GroundChannelParams {
  double pathloss_exponent = 3.7;
  double user_speed_mps = 10.0;
  std::pair<double, double> eve_distance_range_m = {2000.0, 2500.0};

  void validate() const;
};

}  // namespace satsec::link_budget
