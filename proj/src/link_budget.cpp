#include "satsec/link_budget.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace satsec::link_budget {

double db_to_linear(double x_db) {
  if (!std::isfinite(x_db)) throw std::invalid_argument("db_to_linear: non-finite input");
  return std::pow(10.0, x_db / 10.0);
}

double linear_to_db(double x) {
  if (!std::isfinite(x) || x <= 0.0)
    throw std::invalid_argument("linear_to_db: input must be finite and positive");
  return 10.0 * std::log10(x);
}

double noise_power_w(double boltzmann_dbw_per_k_hz, double temperature_k, double bandwidth_hz) {
  if (!(temperature_k > 0.0)) throw std::invalid_argument("noise_power_w: temperature must be positive");
  if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("noise_power_w: bandwidth must be positive");
  return db_to_linear(boltzmann_dbw_per_k_hz) * temperature_k * bandwidth_hz;
}

double ground_pathloss_db(double distance_m, double carrier_freq_hz, double exponent) {
  if (!(distance_m > 0.0)) throw std::invalid_argument("ground_pathloss_db: distance must be positive");
  if (!(carrier_freq_hz > 0.0)) throw std::invalid_argument("ground_pathloss_db: frequency must be positive");
  const double lambda = kSpeedOfLightMps / carrier_freq_hz;
  const double four_pi_over_lambda = 4.0 * std::numbers::pi / lambda;
  return 10.0 * std::log10(four_pi_over_lambda * four_pi_over_lambda *
                           std::pow(distance_m, exponent));
}

double max_doppler_hz(double speed_mps, double carrier_freq_hz) {
  if (speed_mps < 0.0) throw std::invalid_argument("max_doppler_hz: speed must be nonnegative");
  if (!(carrier_freq_hz > 0.0)) throw std::invalid_argument("max_doppler_hz: frequency must be positive");
  return speed_mps * carrier_freq_hz / kSpeedOfLightMps;
}

double LinkBudget::sat_noise_w() const {
  return noise_power_w(boltzmann_dbw_per_k_hz, sat_noise_temp_k, carrier_bandwidth_hz);
}

double LinkBudget::terminal_noise_w() const {
  return noise_power_w(boltzmann_dbw_per_k_hz, terminal_noise_temp_k, carrier_bandwidth_hz);
}

void LinkBudget::validate() const {
  if (!(sat_noise_temp_k > 0.0) || !(terminal_noise_temp_k > 0.0))
    throw std::invalid_argument("link budget: temperatures must be positive");
  if (!(carrier_bandwidth_hz > 0.0))
    throw std::invalid_argument("link budget: bandwidth must be positive");
  constexpr double kBandLo = 1616.0e6, kBandHi = 1626.5e6;
  for (double f : {rl_freq_hz, fl_freq_hz})
    if (f < kBandLo || f > kBandHi)
      throw std::invalid_argument("link budget: carrier frequency outside the 1616-1626.5 MHz band");
  for (double p : {fl_tx_power_w(), user_tx_power_w(), sat_noise_w(), terminal_noise_w(),
                   db_to_linear(total_sat_power_dbw)})
    if (!std::isfinite(p) || !(p > 0.0))
      throw std::invalid_argument("link budget: derived linear power not finite and positive");
}

void GroundChannelParams::validate() const {
  if (!(pathloss_exponent > 2.0))
    throw std::invalid_argument("ground params: pathloss exponent must exceed 2");
  if (!(eve_distance_range_m.first > 0.0) ||
      eve_distance_range_m.first > eve_distance_range_m.second)
    throw std::invalid_argument("ground params: invalid eavesdropper distance range");
  if (user_speed_mps < 0.0) throw std::invalid_argument("ground params: negative user speed");
}

namespace {

using nlohmann::json;

template <typename T>
void load_if(const json& j, const char* key, T& field) {
  if (j.contains(key)) field = j.at(key).get<T>();
}

}  // namespace

LinkBudget LinkBudget::from_json_text(const std::string& text) {
  const json j = json::parse(text);
  LinkBudget lb;
  load_if(j, "boltzmann_dbw_per_k_hz", lb.boltzmann_dbw_per_k_hz);
  load_if(j, "carrier_bandwidth_hz", lb.carrier_bandwidth_hz);
  load_if(j, "sat_noise_temp_k", lb.sat_noise_temp_k);
  load_if(j, "terminal_noise_temp_k", lb.terminal_noise_temp_k);
  load_if(j, "total_sat_power_dbw", lb.total_sat_power_dbw);
  load_if(j, "fl_tx_power_dbw", lb.fl_tx_power_dbw);
  load_if(j, "user_tx_power_dbw", lb.user_tx_power_dbw);
  load_if(j, "sat_antenna_gain_dbi", lb.sat_antenna_gain_dbi);
  load_if(j, "terminal_antenna_gain_dbi", lb.terminal_antenna_gain_dbi);
  load_if(j, "sat_link_pathloss_db", lb.sat_link_pathloss_db);
  load_if(j, "rl_freq_hz", lb.rl_freq_hz);
  load_if(j, "fl_freq_hz", lb.fl_freq_hz);
  load_if(j, "sat_doppler_hz", lb.sat_doppler_hz);
  load_if(j, "beams", lb.beams);
  load_if(j, "feeds_total", lb.feeds_total);
  load_if(j, "carriers_per_beam", lb.carriers_per_beam);
  load_if(j, "frequency_reuse_factor", lb.frequency_reuse_factor);
  load_if(j, "guard_bandwidth_hz", lb.guard_bandwidth_hz);
  lb.validate();
  return lb;
}

LinkBudget LinkBudget::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("link budget: cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::string LinkBudget::to_json_text() const {
  nlohmann::json j;
  j["boltzmann_dbw_per_k_hz"] = boltzmann_dbw_per_k_hz;
  j["carrier_bandwidth_hz"] = carrier_bandwidth_hz;
  j["sat_noise_temp_k"] = sat_noise_temp_k;
  j["terminal_noise_temp_k"] = terminal_noise_temp_k;
  j["total_sat_power_dbw"] = total_sat_power_dbw;
  j["fl_tx_power_dbw"] = fl_tx_power_dbw;
  j["user_tx_power_dbw"] = user_tx_power_dbw;
  j["sat_antenna_gain_dbi"] = sat_antenna_gain_dbi;
  j["terminal_antenna_gain_dbi"] = terminal_antenna_gain_dbi;
  j["sat_link_pathloss_db"] = sat_link_pathloss_db;
  j["rl_freq_hz"] = rl_freq_hz;
  j["fl_freq_hz"] = fl_freq_hz;
  j["sat_doppler_hz"] = sat_doppler_hz;
  j["beams"] = beams;
  j["feeds_total"] = feeds_total;
  j["carriers_per_beam"] = carriers_per_beam;
  j["frequency_reuse_factor"] = frequency_reuse_factor;
  j["guard_bandwidth_hz"] = guard_bandwidth_hz;
  return j.dump(2);
}

}  // namespace satsec::link_budget
