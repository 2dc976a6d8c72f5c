#include "spoofsim/config_io.hpp"

#include <fstream>
#include <set>
#include <string>

#include "spoofsim/errors.hpp"

namespace spoofsim {

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "range_m",      "area_rx_m2",    "cross_section_m2", "center_freq_hz",
      "n_t_prime",    "pulse_width_s", "avg_power_w",      "bits_receiver",
      "bits_spoofer", "prf_hz"};
  return keys;
}

double number_field(const nlohmann::json& j, const std::string& key) {
  if (!j.contains(key)) {
    throw config_error("config: missing required field '" + key + "'");
  }
  if (!j.at(key).is_number()) {
    throw config_error("config: field '" + key + "' must be a number");
  }
  return j.at(key).get<double>();
}

int integer_field(const nlohmann::json& j, const std::string& key) {
  if (!j.contains(key)) {
    throw config_error("config: missing required field '" + key + "'");
  }
  if (!j.at(key).is_number_integer()) {
    throw config_error("config: field '" + key + "' must be an integer");
  }
  return j.at(key).get<int>();
}

} // namespace

RadarScenario scenario_from_json(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw config_error("config: document must be a JSON object");
  }
  for (const auto& item : j.items()) {
    if (known_keys().count(item.key()) == 0) {
      throw config_error("config: unknown field '" + item.key() + "'");
    }
  }
  RadarScenario sc;
  sc.range_m = number_field(j, "range_m");
  sc.area_rx_m2 = number_field(j, "area_rx_m2");
  sc.cross_section_m2 = number_field(j, "cross_section_m2");
  sc.center_freq_hz = number_field(j, "center_freq_hz");
  sc.n_t_prime = number_field(j, "n_t_prime");
  sc.pulse_width_s = number_field(j, "pulse_width_s");
  sc.avg_power_w = number_field(j, "avg_power_w");
  sc.bits_receiver = integer_field(j, "bits_receiver");
  sc.bits_spoofer = integer_field(j, "bits_spoofer");
  sc.prf_hz = number_field(j, "prf_hz");
  try {
    sc.validate();
  } catch (const std::invalid_argument& e) {
    throw config_error(std::string("config: ") + e.what());
  }
  return sc;
}

RadarScenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw config_error("config: cannot open '" + path + "'");
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw config_error("config: " + path + ": " + e.what());
  }
  return scenario_from_json(j);
}

nlohmann::ordered_json scenario_to_json(const RadarScenario& sc) {
  nlohmann::ordered_json j;
  j["range_m"] = sc.range_m;
  j["area_rx_m2"] = sc.area_rx_m2;
  j["cross_section_m2"] = sc.cross_section_m2;
  j["center_freq_hz"] = sc.center_freq_hz;
  j["n_t_prime"] = sc.n_t_prime;
  j["pulse_width_s"] = sc.pulse_width_s;
  j["avg_power_w"] = sc.avg_power_w;
  j["bits_receiver"] = sc.bits_receiver;
  j["bits_spoofer"] = sc.bits_spoofer;
  j["prf_hz"] = sc.prf_hz;
  return j;
}

} // namespace spoofsim
