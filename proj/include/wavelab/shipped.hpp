#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wavelab/scenario.hpp"
#include "wavelab/survey.hpp"

namespace wavelab::shipped {

// Same text as data/scenarios/*.json and data/profiles/*.json.

inline constexpr std::string_view kBonnPreliminary = R"json({
  "name": "bonn-preliminary",
  "seed": 2001,
  "duration": 145.0,
  "origin": [50.7339, 7.0997],
  "aps": [
    {"bssid": "00:60:1d:0b:00:01", "ssid": "uni-bib", "channel": 1, "radio": {"position": [0, 90], "tx_power_mw": 50}},
    {"bssid": "00:02:2d:0b:00:02", "ssid": "praxis", "channel": 6, "radio": {"position": [400, 260], "tx_power_mw": 50}},
    {"bssid": "00:60:1d:0b:00:03", "ssid": "WaveLAN Network", "channel": 3, "radio": {"position": [800, 50], "tx_power_mw": 50}},
    {"bssid": "00:40:96:0b:00:04", "ssid": "tsunami", "channel": 11, "radio": {"position": [1200, 400], "tx_power_mw": 50}},
    {"bssid": "00:02:2d:0b:00:05", "ssid": "kanzlei", "channel": 6, "radio": {"position": [1600, 140], "tx_power_mw": 50}},
    {"bssid": "00:60:1d:0b:00:06", "ssid": "labor", "channel": 9, "radio": {"position": [2000, 200], "tx_power_mw": 50}}
  ],
  "monitors": [
    {"radio": {"position": [-300, 0], "velocity": [18.06, 0], "antenna_gain": 1.0, "sensitivity_mw": 0.005}}
  ]
}
)json";

inline constexpr std::string_view kEvilTwin = R"json({
  "name": "evil-twin",
  "seed": 7,
  "duration": 3.0,
  "aps": [
    {"bssid": "00:40:96:10:20:30", "ssid": "kanzlei", "channel": 6, "auth": "shared", "relay": true,
     "privacy": {"key": "0badc0ffee", "iv_policy": {"kind": "sequential", "start": 0}},
     "radio": {"position": [0, 0], "tx_power_mw": 50}}
  ],
  "stations": [
    {"mac": "00:02:2d:00:00:01", "ssid": "kanzlei",
     "wep": {"key": "0badc0ffee", "iv_policy": {"kind": "random", "seed": 1}},
     "radio": {"position": [3, 0]}},
    {"mac": "00:02:2d:00:00:02", "ssid": "kanzlei", "wep_fallback": true, "start_time": 1.0,
     "wep": {"key": "0badc0ffee", "iv_policy": {"kind": "random", "seed": 2}},
     "traffic": [{"dst": "00:02:2d:00:00:01", "payload_text": "0100 EUR to account 4711"},
                 {"dst": "00:02:2d:00:00:01", "payload_text": "0250 EUR to account 4711"}],
     "radio": {"position": [75, 5]}},
    {"mac": "00:02:2d:00:00:03", "ssid": "kanzlei", "wep_fallback": true, "start_time": 1.0,
     "wep": {"key": "0badc0ffee", "iv_policy": {"kind": "random", "seed": 3}},
     "traffic": [{"dst": "00:02:2d:00:00:01", "payload_text": "0075 EUR to account 4711"}],
     "radio": {"position": [75, -5]}}
  ],
  "twin": {
    "ap": {"bssid": "00:60:1d:66:66:66", "ssid": "kanzlei", "channel": 6, "auth": "open",
           "radio": {"position": [80, 0], "tx_power_mw": 200}},
    "upstream": {"mac": "00:60:1d:77:77:77", "auth": "forge"},
    "rewrite": {"offset": 0, "value_hex": "39"}
  }
}
)json";

inline constexpr std::string_view kHiddenSsid = R"json({
  "name": "hidden-ssid",
  "seed": 11,
  "duration": 2.0,
  "aps": [
    {"bssid": "00:60:1d:aa:00:01", "ssid": "intern", "channel": 6, "hidden": true, "radio": {"position": [0, 0]}}
  ],
  "stations": [
    {"mac": "00:02:2d:aa:bb:cc", "ssid": "intern", "start_time": 0.5, "radio": {"position": [10, 0]}}
  ],
  "monitors": [
    {"radio": {"position": [20, 10]}}
  ]
}
)json";

inline constexpr std::string_view kSharedKey = R"json({
  "name": "shared-key",
  "seed": 3,
  "duration": 1.5,
  "aps": [
    {"bssid": "00:40:96:5a:5a:01", "ssid": "buero", "channel": 11, "auth": "shared", "relay": true,
     "privacy": {"passphrase": "bonn", "iv_policy": {"kind": "sequential", "start": 0}},
     "radio": {"position": [0, 0]}}
  ],
  "stations": [
    {"mac": "00:02:2d:5a:00:01", "ssid": "buero",
     "wep": {"passphrase": "bonn", "iv_policy": {"kind": "random", "seed": 9}},
     "traffic": [{"dst": "00:02:2d:5a:00:02", "payload_hex": "aaaa030000000800450000"}],
     "radio": {"position": [5, 0]}},
    {"mac": "00:02:2d:5a:00:02", "ssid": "buero",
     "wep": {"passphrase": "bonn", "iv_policy": {"kind": "random", "seed": 10}},
     "radio": {"position": [-5, 0]}}
  ],
  "attacker": {"mac": "02:00:00:00:be:ef", "radio": {"position": [0, 20]}}
}
)json";

inline constexpr std::string_view kMacAcl = R"json({
  "name": "mac-acl",
  "seed": 5,
  "duration": 1.0,
  "aps": [
    {"bssid": "00:40:96:ac:1c:01", "ssid": "firma", "channel": 1,
     "mac_acl": ["00:02:2d:00:00:07"], "radio": {"position": [0, 0]}}
  ],
  "stations": [
    {"mac": "00:02:2d:00:00:07", "ssid": "firma", "radio": {"position": [5, 5]}}
  ],
  "attacker": {"mac": "02:00:00:00:be:ef", "radio": {"position": [0, 20]}}
}
)json";

inline constexpr std::string_view kFixedIv = R"json({
  "name": "fixed-iv",
  "seed": 13,
  "duration": 1.0,
  "aps": [
    {"bssid": "00:40:96:f1:f1:01", "ssid": "heim", "channel": 6, "relay": true,
     "privacy": {"key": "1f2e3d4c5b", "iv_policy": {"kind": "fixed", "iv": "00beef"}},
     "radio": {"position": [0, 0]}}
  ],
  "stations": [
    {"mac": "00:02:2d:f1:00:01", "ssid": "heim",
     "wep": {"key": "1f2e3d4c5b", "iv_policy": {"kind": "random", "seed": 4}},
     "traffic": [{"dst": "00:02:2d:f1:00:02", "payload_text": "GET /konto HTTP/1.0 PIN 2468"}],
     "radio": {"position": [5, 0]}},
    {"mac": "00:02:2d:f1:00:02", "ssid": "heim",
     "wep": {"key": "1f2e3d4c5b", "iv_policy": {"kind": "random", "seed": 5}},
     "radio": {"position": [-5, 0]}}
  ],
  "attacker": {"mac": "02:00:00:00:be:ef", "radio": {"position": [0, 20]}}
}
)json";

inline constexpr std::string_view kBonnCologne2001 = R"json({
  "name": "bonn-cologne-2001",
  "total": 283,
  "adhoc": 11,
  "wep": 78,
  "hidden": 59,
  "hidden_same_vendor": 58,
  "default_named": 84,
  "hidden_vendor": "00:60:1d",
  "regions": [
    {"name": "bonn", "networks": 157, "lat": 50.7339, "lon": 7.0997},
    {"name": "cologne", "networks": 126, "lat": 50.9375, "lon": 6.9603}
  ]
}
)json";

inline const std::vector<std::pair<std::string_view, std::string_view>>& scenarios() {
  static const std::vector<std::pair<std::string_view, std::string_view>> all = {
      {"bonn-preliminary", kBonnPreliminary},
      {"evil-twin", kEvilTwin},
      {"hidden-ssid", kHiddenSsid},
      {"shared-key", kSharedKey},
      {"mac-acl", kMacAcl},
      {"fixed-iv", kFixedIv},
  };
  return all;
}

inline const std::vector<std::pair<std::string_view, std::string_view>>& profiles() {
  static const std::vector<std::pair<std::string_view, std::string_view>> all = {
      {"bonn-cologne-2001", kBonnCologne2001},
  };
  return all;
}

inline std::optional<std::string_view> scenario_text(std::string_view name) {
  for (const auto& [n, text] : scenarios())
    if (n == name) return text;
  return std::nullopt;
}

inline sim::Scenario scenario(std::string_view name) {
  auto text = scenario_text(name);
  if (!text) throw Error(ErrorKind::NotFound, "no shipped scenario named " + std::string(name));
  return sim::parse_scenario(std::string(*text));
}

inline survey::Profile profile(std::string_view name) {
  for (const auto& [n, text] : profiles())
    if (n == name) return survey::profile_from_json(nlohmann::json::parse(text));
  throw Error(ErrorKind::NotFound, "no shipped profile named " + std::string(name));
}

/// A shipped name, or else a path to a JSON file.
inline sim::Scenario scenario_or_file(const std::string& ref) {
  if (scenario_text(ref)) return scenario(ref);
  return sim::load_scenario(ref);
}

inline survey::Profile profile_or_file(const std::string& ref) {
  for (const auto& [n, _] : profiles())
    if (n == ref) return profile(ref);
  std::ifstream in(ref);
  if (!in) throw Error(ErrorKind::IoError, "no shipped profile or file named " + ref);
  try {
    return survey::profile_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

}  // namespace wavelab::shipped
