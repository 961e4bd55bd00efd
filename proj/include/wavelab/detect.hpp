#pragma once

#include <cmath>
#include <set>
#include <vector>

#include "wavelab/scenario.hpp"

namespace wavelab::detect {

struct DetectionRow {
  double gain = 1.0;
  std::size_t detected = 0;
  std::size_t known = 0;
  std::vector<Mac> networks;  // detected BSSIDs, sorted
};

/// BSSIDs of configured APs whose beacons reached any monitor.
inline std::vector<Mac> detected_networks(const sim::Scenario& s, const Capture& capture) {
  std::set<Mac> known;
  for (const auto& ap : s.aps) known.insert(ap.config.bssid);
  std::set<Mac> seen;
  for (const auto& r : capture)
    if (r.frame.ftype == FrameType::Beacon && known.count(r.frame.bssid)) seen.insert(r.frame.bssid);
  return {seen.begin(), seen.end()};
}

/// Reruns the scenario with every monitor's antenna gain set to `gain`.
inline DetectionRow run_at_gain(sim::Scenario s, double gain) {
  if (s.monitors.empty()) throw Error(ErrorKind::ConfigError, "detection scenario needs a monitor");
  for (auto& m : s.monitors) m.radio.antenna_gain = gain;
  DetectionRow row;
  row.gain = gain;
  row.known = s.aps.size();
  row.networks = detected_networks(s, sim::run_scenario(s));
  row.detected = row.networks.size();
  return row;
}

inline std::vector<DetectionRow> sweep(const sim::Scenario& s, const std::vector<double>& gains) {
  std::vector<DetectionRow> out;
  out.reserve(gains.size());
  for (double g : gains) out.push_back(run_at_gain(s, g));
  return out;
}

/// 10^(dB/10).
inline double gain_from_db(double db) { return std::pow(10.0, db / 10.0); }

}  // namespace wavelab::detect
