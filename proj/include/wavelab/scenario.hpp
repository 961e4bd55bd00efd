#pragma once

#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wavelab/capture.hpp"
#include "wavelab/error.hpp"
#include "wavelab/rogue.hpp"
#include "wavelab/simnet.hpp"

namespace wavelab::sim {

struct ApSpec {
  ApConfig config;
  Radio radio;
  friend bool operator==(const ApSpec&, const ApSpec&) = default;
};

struct StationSpec {
  StationConfig config;
  Radio radio;
  bool record = false;
  friend bool operator==(const StationSpec&, const StationSpec&) = default;
};

struct MonitorSpec {
  Radio radio;
  friend bool operator==(const MonitorSpec&, const MonitorSpec&) = default;
};

struct AttackerSpec {
  Mac mac;
  Radio radio;
  friend bool operator==(const AttackerSpec&, const AttackerSpec&) = default;
};

/// Scripted transmission from the attacker radio.
struct InjectionHook {
  double at = 0.0;
  Frame frame;
  friend bool operator==(const InjectionHook&, const InjectionHook&) = default;
};

struct TwinSpec {
  ApConfig config;
  Radio radio;
  UpstreamConfig upstream;
  std::optional<Rewrite> rewrite;
  friend bool operator==(const TwinSpec&, const TwinSpec&) = default;
};

/// Immutable description of one simulation run.
struct Scenario {
  std::string name;
  std::uint64_t seed = 0;
  double duration = 1.0;
  std::optional<std::pair<double, double>> origin;
  std::vector<ApSpec> aps;
  std::vector<StationSpec> stations;
  std::vector<MonitorSpec> monitors;
  std::optional<AttackerSpec> attacker;
  std::vector<InjectionHook> hooks;
  std::optional<TwinSpec> twin;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

inline void validate_scenario(const Scenario& s) {
  if (!(s.duration > 0.0)) throw Error(ErrorKind::ConfigError, "duration must be positive");
  for (std::size_t i = 0; i < s.aps.size(); ++i) {
    validate_ap(s.aps[i].config);
    validate_radio(s.aps[i].radio);
    for (std::size_t k = 0; k < i; ++k)
      if (s.aps[k].config.bssid == s.aps[i].config.bssid && !(s.aps[k].config == s.aps[i].config))
        throw Error(ErrorKind::ConfigError, "BSSID " + s.aps[i].config.bssid.str() + " configured twice differently");
  }
  for (const auto& st : s.stations) validate_radio(st.radio);
  for (const auto& m : s.monitors) validate_radio(m.radio);
  if (s.attacker) validate_radio(s.attacker->radio);
  if (s.twin) {
    validate_ap(s.twin->config);
    validate_radio(s.twin->radio);
    for (const auto& ap : s.aps)
      if (ap.config.bssid == s.twin->config.bssid)
        throw Error(ErrorKind::ConfigError, "twin BSSID collides with a configured AP");
  }
  if (s.attacker) {
    for (const auto& h : s.hooks)
      if (h.at < 0.0) throw Error(ErrorKind::ConfigError, "hook time must be nonnegative");
  } else if (!s.hooks.empty()) {
    throw Error(ErrorKind::ConfigError, "injection hooks need an attacker node");
  }
}

/// A simulator instantiated from a Scenario, with the ids of its nodes.
struct Built {
  std::unique_ptr<Simulator> sim;
  std::vector<NodeId> aps;
  std::vector<NodeId> stations;
  std::vector<NodeId> monitors;
  std::optional<NodeId> attacker;
  std::optional<NodeId> twin;

  AccessPoint& ap(std::size_t i) { return sim->get<AccessPoint>(aps.at(i)); }
  Station& station(std::size_t i) { return sim->get<Station>(stations.at(i)); }
  RogueAccessPoint& rogue() { return sim->get<RogueAccessPoint>(twin.value()); }
};

/// Node ids follow declaration order: APs, stations, monitors, attacker, twin.
inline Built build(const Scenario& s) {
  validate_scenario(s);
  Built b;
  b.sim = std::make_unique<Simulator>(s.seed);
  if (s.origin) b.sim->set_origin(s.origin->first, s.origin->second);
  for (const auto& ap : s.aps) b.aps.push_back(b.sim->add(std::make_unique<AccessPoint>(ap.config), ap.radio));
  for (const auto& st : s.stations)
    b.stations.push_back(b.sim->add(std::make_unique<Station>(st.config), st.radio, st.record));
  for (const auto& m : s.monitors) b.monitors.push_back(b.sim->add(std::make_unique<Monitor>(), m.radio, true));
  if (s.attacker) {
    b.attacker = b.sim->add(std::make_unique<AttackerNode>(s.attacker->mac), s.attacker->radio, true);
    for (const auto& h : s.hooks) b.sim->transmit_at(*b.attacker, h.frame, h.at);
  }
  if (s.twin)
    b.twin = b.sim->add(std::make_unique<RogueAccessPoint>(s.twin->config, s.twin->upstream, s.twin->rewrite),
                        s.twin->radio);
  return b;
}

/// Runs the scenario for its duration and returns what the recording nodes heard.
inline Capture run_scenario(const Scenario& s) {
  Built b = build(s);
  b.sim->run_until(s.duration);
  return b.sim->capture();
}

// ---------------------------------------------------------------------------
// JSON scenario files

namespace detail {

using nlohmann::json;

inline Vec2 vec2(const json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::ConfigError, "expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline Radio radio(const json& j) {
  Radio r;
  if (j.is_null()) return r;
  if (j.contains("position")) r.position = vec2(j["position"]);
  if (j.contains("velocity")) r.velocity = vec2(j["velocity"]);
  r.tx_power_mw = j.value("tx_power_mw", r.tx_power_mw);
  r.antenna_gain = j.value("antenna_gain", r.antenna_gain);
  r.sensitivity_mw = j.value("sensitivity_mw", r.sensitivity_mw);
  return r;
}

inline IvPolicy iv_policy(const json& j) {
  if (j.is_null()) return IvSequential{};
  std::string kind = j.value("kind", "sequential");
  if (kind == "sequential") return IvSequential{j.value("start", 0u)};
  if (kind == "random") return IvRandom{j.value("seed", std::uint64_t{0})};
  if (kind == "fixed") {
    Bytes raw = from_hex(j.at("iv").get<std::string>());
    if (raw.size() != 3) throw Error(ErrorKind::ConfigError, "fixed IV must be 3 octets");
    return IvFixed{{raw[0], raw[1], raw[2]}};
  }
  throw Error(ErrorKind::ConfigError, "unknown iv_policy kind " + kind);
}

inline std::optional<WepPrivacy> privacy(const json& j) {
  if (j.is_null()) return std::nullopt;
  WepPrivacy p;
  if (j.contains("key"))
    p.key = WepKey::from_hex(j["key"].get<std::string>());
  else if (j.contains("passphrase"))
    p.key = keygen_vendor(j["passphrase"].get<std::string>());
  else
    throw Error(ErrorKind::ConfigError, "privacy needs key or passphrase");
  p.iv_policy = iv_policy(j.value("iv_policy", json()));
  return p;
}

inline ApConfig ap_config(const json& j) {
  ApConfig c;
  c.bssid = Mac::parse(j.at("bssid").get<std::string>());
  c.ssid = j.value("ssid", "");
  c.channel = j.value("channel", std::uint8_t{6});
  c.beacon_rate_hz = j.value("beacon_rate_hz", 10.0);
  c.hidden = j.value("hidden", false);
  std::string auth = j.value("auth", "open");
  if (auth == "open")
    c.auth_mode = AuthMode::Open;
  else if (auth == "shared")
    c.auth_mode = AuthMode::SharedKey;
  else
    throw Error(ErrorKind::ConfigError, "auth must be open or shared");
  if (j.contains("mac_acl") && !j["mac_acl"].is_null()) {
    std::vector<Mac> acl;
    for (const auto& m : j["mac_acl"]) acl.push_back(Mac::parse(m.get<std::string>()));
    c.mac_acl = std::move(acl);
  }
  c.privacy = privacy(j.value("privacy", json()));
  c.relay = j.value("relay", false);
  c.adhoc = j.value("adhoc", false);
  return c;
}

inline Bytes payload(const json& j) {
  if (j.contains("payload_hex")) return from_hex(j["payload_hex"].get<std::string>());
  if (j.contains("payload_text")) return to_bytes(j["payload_text"].get<std::string>());
  throw Error(ErrorKind::ConfigError, "traffic item needs payload_hex or payload_text");
}

inline StationConfig station_config(const json& j) {
  StationConfig c;
  c.mac = Mac::parse(j.at("mac").get<std::string>());
  c.ssid = j.value("ssid", "");
  c.wep = privacy(j.value("wep", json()));
  c.wep_fallback = j.value("wep_fallback", false);
  c.start_time = j.value("start_time", 0.0);
  c.scan_time = j.value("scan_time", c.scan_time);
  c.data_interval = j.value("data_interval", c.data_interval);
  c.max_scans = j.value("max_scans", c.max_scans);
  if (j.contains("traffic"))
    for (const auto& t : j["traffic"]) c.traffic.push_back({Mac::parse(t.at("dst").get<std::string>()), payload(t)});
  return c;
}

}  // namespace detail

inline Scenario parse_scenario(const std::string& text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  try {
    Scenario s;
    s.name = j.value("name", "");
    s.seed = j.value("seed", std::uint64_t{0});
    s.duration = j.value("duration", 1.0);
    if (j.contains("origin")) {
      auto o = j["origin"];
      s.origin = std::make_pair(o.at(0).get<double>(), o.at(1).get<double>());
    }
    for (const auto& a : j.value("aps", json::array()))
      s.aps.push_back({detail::ap_config(a), detail::radio(a.value("radio", json()))});
    for (const auto& st : j.value("stations", json::array()))
      s.stations.push_back(
          {detail::station_config(st), detail::radio(st.value("radio", json())), st.value("record", false)});
    for (const auto& m : j.value("monitors", json::array())) s.monitors.push_back({detail::radio(m.value("radio", json()))});
    if (j.contains("attacker") && !j["attacker"].is_null()) {
      const auto& a = j["attacker"];
      s.attacker = AttackerSpec{Mac::parse(a.value("mac", "02:00:00:00:00:01")), detail::radio(a.value("radio", json()))};
    }
    for (const auto& h : j.value("hooks", json::array()))
      s.hooks.push_back({h.at("at").get<double>(), decode_frame_hex(h.at("frame_hex").get<std::string>())});
    if (j.contains("twin") && !j["twin"].is_null()) {
      const auto& t = j["twin"];
      TwinSpec tw;
      tw.config = detail::ap_config(t.at("ap"));
      tw.radio = detail::radio(t.at("ap").value("radio", json()));
      const auto& up = t.value("upstream", json::object());
      tw.upstream.mac = Mac::parse(up.value("mac", "02:00:00:00:00:02"));
      std::string auth = up.value("auth", "forge");
      if (auth == "open")
        tw.upstream.auth = UpstreamAuth::Open;
      else if (auth == "forge")
        tw.upstream.auth = UpstreamAuth::Forge;
      else
        throw Error(ErrorKind::ConfigError, "upstream auth must be open or forge");
      if (t.contains("rewrite") && !t["rewrite"].is_null())
        tw.rewrite = Rewrite{t["rewrite"].value("offset", std::size_t{0}),
                             from_hex(t["rewrite"].at("value_hex").get<std::string>())};
      s.twin = std::move(tw);
    }
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ConfigError, e.what());
  }
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

}  // namespace wavelab::sim
