#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wavelab/capture.hpp"
#include "wavelab/error.hpp"
#include "wavelab/frames.hpp"
#include "wavelab/rng.hpp"

namespace wavelab::survey {

using Oui = std::array<std::uint8_t, 3>;

enum class Mode { Managed, AdHoc };

struct Position {
  double lat = 0.0;
  double lon = 0.0;
  friend bool operator==(const Position&, const Position&) = default;
};

struct NetworkObservation {
  Mac bssid;
  std::string ssid;
  Mode mode = Mode::Managed;
  bool wep = false;
  bool hidden = false;
  Oui vendor_prefix{};
  double first_seen = 0.0;
  double last_seen = 0.0;
  std::vector<Position> positions;
  std::size_t beacons = 0;
};

/// Groups records by BSSID. Mode and privacy come from the flags of frames
/// the network itself announced (beacons, probe responses), falling back to
/// any frame when none were heard. A network is hidden when at least one
/// beacon was heard and none carried a name; its name is still filled in
/// from probe and association traffic.
inline std::vector<NetworkObservation> classify(const Capture& records) {
  struct Acc {
    NetworkObservation obs;
    bool seen = false;
    bool announced = false;
    bool beacon_named = false;
    bool any_privacy = false;
    bool any_adhoc = false;
    bool ann_privacy = false;
    bool ann_adhoc = false;
  };
  std::map<Mac, Acc> by_bssid;
  for (const auto& r : records) {
    const Frame& f = r.frame;
    if (f.bssid.is_broadcast()) continue;
    Acc& a = by_bssid[f.bssid];
    if (!a.seen) {
      a.seen = true;
      a.obs.bssid = f.bssid;
      a.obs.vendor_prefix = f.bssid.oui();
      a.obs.first_seen = r.t;
      a.obs.last_seen = r.t;
    }
    a.obs.first_seen = std::min(a.obs.first_seen, r.t);
    a.obs.last_seen = std::max(a.obs.last_seen, r.t);
    if (r.lat && r.lon) a.obs.positions.push_back({*r.lat, *r.lon});
    a.any_privacy |= f.privacy();
    a.any_adhoc |= f.adhoc();
    bool from_network = f.src == f.bssid;
    if ((f.ftype == FrameType::Beacon || f.ftype == FrameType::ProbeResponse) && from_network) {
      a.announced = true;
      a.ann_privacy |= f.privacy();
      a.ann_adhoc |= f.adhoc();
    }
    if (f.ftype == FrameType::Beacon) {
      ++a.obs.beacons;
      if (!f.ssid.empty()) a.beacon_named = true;
    }
    if (!f.ssid.empty()) a.obs.ssid = f.ssid;
  }
  std::vector<NetworkObservation> out;
  out.reserve(by_bssid.size());
  for (auto& [_, a] : by_bssid) {
    a.obs.wep = a.announced ? a.ann_privacy : a.any_privacy;
    a.obs.mode = (a.announced ? a.ann_adhoc : a.any_adhoc) ? Mode::AdHoc : Mode::Managed;
    a.obs.hidden = a.obs.beacons > 0 && !a.beacon_named;
    out.push_back(std::move(a.obs));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Factory SSIDs

/// vendor prefix -> factory SSIDs; entries under "*" apply to every vendor.
class DefaultSsidTable {
 public:
  void add(const std::string& prefix, const std::string& ssid) {
    if (prefix == "*")
      wildcard_.insert(ssid);
    else
      by_vendor_[parse_oui(prefix)].insert(ssid);
  }

  /// One `prefix ssid` pair per line; the SSID is the rest of the line.
  static DefaultSsidTable parse(std::istream& in) {
    DefaultSsidTable t;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      auto start = line.find_first_not_of(" \t");
      if (start == std::string::npos || line[start] == '#') continue;
      auto split = line.find_first_of(" \t", start);
      if (split == std::string::npos)
        throw Error(ErrorKind::ParseError, "default-SSID table line " + std::to_string(lineno) + ": missing ssid");
      auto ssid_start = line.find_first_not_of(" \t", split);
      if (ssid_start == std::string::npos)
        throw Error(ErrorKind::ParseError, "default-SSID table line " + std::to_string(lineno) + ": missing ssid");
      try {
        t.add(line.substr(start, split - start), line.substr(ssid_start));
      } catch (const Error& e) {
        throw Error(ErrorKind::ParseError, "default-SSID table line " + std::to_string(lineno) + ": " + e.detail());
      }
    }
    return t;
  }

  static DefaultSsidTable load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
    return parse(in);
  }

  static DefaultSsidTable shipped();

  bool matches(const std::string& ssid, const Oui& vendor, bool match_vendor) const {
    if (ssid.empty()) return false;
    if (wildcard_.count(ssid)) return true;
    if (match_vendor) {
      auto it = by_vendor_.find(vendor);
      return it != by_vendor_.end() && it->second.count(ssid);
    }
    for (const auto& [_, names] : by_vendor_)
      if (names.count(ssid)) return true;
    return false;
  }

  /// Factory names usable for a network of this vendor.
  std::vector<std::string> names_for(const Oui& vendor) const {
    std::vector<std::string> out(wildcard_.begin(), wildcard_.end());
    if (auto it = by_vendor_.find(vendor); it != by_vendor_.end()) out.insert(out.end(), it->second.begin(), it->second.end());
    return out;
  }

  std::vector<Oui> vendors() const {
    std::vector<Oui> out;
    for (const auto& [v, _] : by_vendor_) out.push_back(v);
    return out;
  }

  bool contains_anywhere(const std::string& ssid) const { return matches(ssid, Oui{}, false); }

 private:
  std::set<std::string> wildcard_;
  std::map<Oui, std::set<std::string>> by_vendor_;
};

inline constexpr const char* kShippedDefaultSsids = R"(# vendor-prefix factory-ssid
*        default
*        WLAN
*        Wireless
*        ANY
00:06:25 linksys
00:04:5a linksys
00:40:96 tsunami
00:02:2d WaveLAN Network
00:60:1d WaveLAN Network
00:60:1d Lucent
00:30:65 Apple Network
00:09:5b NETGEAR
00:50:8b Compaq
00:a0:f8 symbol
00:01:24 ACTIONTEC
00:90:4b default
)";

inline DefaultSsidTable DefaultSsidTable::shipped() {
  std::istringstream in(kShippedDefaultSsids);
  return parse(in);
}

// ---------------------------------------------------------------------------
// Aggregation

struct SurveyReport {
  std::size_t total_networks = 0;
  std::size_t adhoc_count = 0;
  std::size_t wep_count = 0;
  std::size_t hidden_count = 0;
  std::size_t default_ssid_count = 0;
  std::size_t hidden_same_vendor_max = 0;
  std::optional<Oui> hidden_vendor;
  int adhoc_pct = 0;
  int wep_pct = 0;
  int hidden_pct = 0;
  int default_ssid_pct = 0;
  int hidden_same_vendor_pct = 0;  // of hidden networks
  int unprotected_pct = 0;         // networks without WEP

  friend bool operator==(const SurveyReport&, const SurveyReport&) = default;
};

/// round(100 * count / total), halves away from zero.
inline int percent(std::size_t count, std::size_t total) {
  if (total == 0) return 0;
  return static_cast<int>(std::lround(100.0 * static_cast<double>(count) / static_cast<double>(total)));
}

inline SurveyReport aggregate(const std::vector<NetworkObservation>& observations, const DefaultSsidTable& defaults,
                              bool match_vendor = false) {
  if (observations.empty()) throw Error(ErrorKind::EmptySurvey, "no networks observed");
  SurveyReport r;
  r.total_networks = observations.size();
  std::map<Oui, std::size_t> hidden_by_vendor;
  for (const auto& o : observations) {
    if (o.mode == Mode::AdHoc) ++r.adhoc_count;
    if (o.wep) ++r.wep_count;
    if (o.hidden) {
      ++r.hidden_count;
      ++hidden_by_vendor[o.vendor_prefix];
    }
    if (defaults.matches(o.ssid, o.vendor_prefix, match_vendor)) ++r.default_ssid_count;
  }
  for (const auto& [v, n] : hidden_by_vendor)
    if (n > r.hidden_same_vendor_max) {
      r.hidden_same_vendor_max = n;
      r.hidden_vendor = v;
    }
  r.adhoc_pct = percent(r.adhoc_count, r.total_networks);
  r.wep_pct = percent(r.wep_count, r.total_networks);
  r.hidden_pct = percent(r.hidden_count, r.total_networks);
  r.default_ssid_pct = percent(r.default_ssid_count, r.total_networks);
  r.hidden_same_vendor_pct = percent(r.hidden_same_vendor_max, r.hidden_count);
  r.unprotected_pct = percent(r.total_networks - r.wep_count, r.total_networks);
  return r;
}

/// Networks a full survey would find, given the share a tour detects.
inline double estimate_total(std::size_t detected, double detection_rate) {
  if (!(detection_rate > 0.0) || detection_rate > 1.0)
    throw Error(ErrorKind::ConfigError, "detection rate must be in (0, 1]");
  return static_cast<double>(detected) / detection_rate;
}

inline nlohmann::ordered_json report_json(const SurveyReport& r) {
  nlohmann::ordered_json j;
  j["total_networks"] = r.total_networks;
  j["adhoc"] = {{"count", r.adhoc_count}, {"percent", r.adhoc_pct}};
  j["wep"] = {{"count", r.wep_count}, {"percent", r.wep_pct}};
  j["hidden"] = {{"count", r.hidden_count}, {"percent", r.hidden_pct}};
  j["default_ssid"] = {{"count", r.default_ssid_count}, {"percent", r.default_ssid_pct}};
  j["hidden_same_vendor"] = {{"count", r.hidden_same_vendor_max},
                             {"percent_of_hidden", r.hidden_same_vendor_pct},
                             {"vendor_prefix", r.hidden_vendor ? oui_str(*r.hidden_vendor) : ""}};
  j["unprotected_percent"] = r.unprotected_pct;
  return j;
}

inline std::string report_table(const SurveyReport& r) {
  std::ostringstream os;
  auto row = [&](const std::string& label, std::size_t n, int pct, const std::string& of = "") {
    os << label;
    for (std::size_t k = label.size(); k < 26; ++k) os << ' ';
    std::string num = std::to_string(n);
    for (std::size_t k = num.size(); k < 5; ++k) os << ' ';
    os << num << "  (" << pct << " %" << of << ")\n";
  };
  os << "networks                  " << r.total_networks << "\n";
  row("ad-hoc", r.adhoc_count, r.adhoc_pct);
  row("WEP", r.wep_count, r.wep_pct);
  row("hidden SSID", r.hidden_count, r.hidden_pct);
  row("factory-default SSID", r.default_ssid_count, r.default_ssid_pct);
  row("hidden, same vendor", r.hidden_same_vendor_max, r.hidden_same_vendor_pct, " of hidden");
  os << "without WEP               " << r.unprotected_pct << " %\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Corpus synthesis

struct Region {
  std::string name;
  std::size_t networks = 0;
  double lat = 0.0;
  double lon = 0.0;
  friend bool operator==(const Region&, const Region&) = default;
};

struct Profile {
  std::string name;
  std::size_t total = 0;
  std::size_t adhoc = 0;
  std::size_t wep = 0;
  std::size_t hidden = 0;
  std::size_t hidden_same_vendor = 0;
  std::size_t default_named = 0;
  std::string hidden_vendor = "00:60:1d";
  std::vector<Region> regions;  // networks per region; the last absorbs any remainder

  friend bool operator==(const Profile&, const Profile&) = default;
};

inline Profile profile_from_json(const nlohmann::json& j) {
  Profile p;
  try {
    p.name = j.value("name", "custom");
    p.total = j.at("total").get<std::size_t>();
    p.adhoc = j.value("adhoc", std::size_t{0});
    p.wep = j.value("wep", std::size_t{0});
    p.hidden = j.value("hidden", std::size_t{0});
    p.hidden_same_vendor = j.value("hidden_same_vendor", p.hidden);
    p.default_named = j.value("default_named", std::size_t{0});
    p.hidden_vendor = j.value("hidden_vendor", p.hidden_vendor);
    for (const auto& r : j.value("regions", nlohmann::json::array()))
      p.regions.push_back({r.value("name", ""), r.at("networks").get<std::size_t>(), r.value("lat", 50.7339),
                           r.value("lon", 7.0997)});
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return p;
}

inline void check_profile(const Profile& p) {
  auto bad = [](const std::string& why) { throw Error(ErrorKind::InfeasibleProfile, why); };
  if (p.adhoc > p.total) bad("ad-hoc count exceeds total");
  if (p.wep > p.total) bad("WEP count exceeds total");
  if (p.hidden > p.total) bad("hidden count exceeds total");
  if (p.default_named > p.total) bad("default-named count exceeds total");
  if (p.adhoc + p.hidden > p.total) bad("ad-hoc and hidden networks are disjoint but exceed the total");
  if (p.hidden_same_vendor > p.hidden) bad("hidden-same-vendor exceeds hidden");
  if (p.hidden > 0 && p.hidden_same_vendor == 0) bad("hidden networks need a largest vendor group of at least 1");
  std::size_t in_regions = 0;
  for (const auto& r : p.regions) in_regions += r.networks;
  if (in_regions > p.total) bad("regions hold more networks than the total");
}

namespace detail {

inline std::vector<std::size_t> pick(Rng& rng, std::vector<std::size_t> pool, std::size_t k) {
  rng.shuffle(pool);
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

inline Frame synth_frame(FrameType t, const Mac& src, const Mac& dst, const Mac& bssid, std::uint8_t fl,
                         std::uint8_t channel, std::string ssid, Bytes body = {}) {
  Frame f;
  f.ftype = t;
  f.src = src;
  f.dst = dst;
  f.bssid = bssid;
  f.flags = fl;
  f.channel = channel;
  f.ssid = std::move(ssid);
  f.body = std::move(body);
  return f;
}

}  // namespace detail

/// Deterministic wardriving capture whose classification reproduces the
/// profile's counts exactly. Categories overlap at random, except that no
/// ad-hoc network is hidden. Every hidden network gets one client
/// association so its name can be recovered.
inline Capture synthesize_corpus(const Profile& p, std::uint64_t seed,
                                 const DefaultSsidTable& defaults = DefaultSsidTable::shipped()) {
  check_profile(p);
  Capture out;
  if (p.total == 0) return out;
  Rng rng(seed);

  std::vector<std::size_t> all(p.total);
  std::iota(all.begin(), all.end(), 0);
  auto adhoc = detail::pick(rng, all, p.adhoc);
  std::vector<bool> is_adhoc(p.total, false), is_hidden(p.total, false), is_wep(p.total, false),
      is_default(p.total, false);
  for (auto i : adhoc) is_adhoc[i] = true;
  std::vector<std::size_t> managed;
  for (auto i : all)
    if (!is_adhoc[i]) managed.push_back(i);
  auto hidden = detail::pick(rng, managed, p.hidden);
  for (auto i : hidden) is_hidden[i] = true;
  for (auto i : detail::pick(rng, all, p.wep)) is_wep[i] = true;
  for (auto i : detail::pick(rng, all, p.default_named)) is_default[i] = true;

  // Vendor prefixes: the largest hidden group shares one prefix; the other
  // hidden networks each get a prefix of their own.
  const Oui hidden_oui = parse_oui(p.hidden_vendor);
  std::vector<Oui> pool = defaults.vendors();
  for (const char* v : {"00:02:2d", "00:40:96", "00:06:25", "00:30:65", "00:09:5b", "00:a0:f8", "00:50:8b"})
    pool.push_back(parse_oui(v));
  std::sort(pool.begin(), pool.end());
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

  std::vector<Oui> vendor(p.total);
  std::set<Oui> used_by_hidden = {hidden_oui};
  std::vector<std::size_t> hidden_shuffled = hidden;
  rng.shuffle(hidden_shuffled);
  for (std::size_t k = 0; k < hidden_shuffled.size(); ++k) {
    std::size_t i = hidden_shuffled[k];
    if (k < p.hidden_same_vendor) {
      vendor[i] = hidden_oui;
      continue;
    }
    Oui v;
    do {
      v = {static_cast<std::uint8_t>(rng.below(64) << 2), rng.byte(), rng.byte()};
    } while (used_by_hidden.count(v));
    used_by_hidden.insert(v);
    vendor[i] = v;
  }
  for (std::size_t i = 0; i < p.total; ++i)
    if (!is_hidden[i]) vendor[i] = pool[rng.below(pool.size())];

  // BSSIDs unique; SSIDs default or custom.
  std::set<Mac> bssids;
  static const char* kWords[] = {"home", "office", "lab", "praxis", "kanzlei", "buero", "cafe", "studio", "uni", "net"};
  std::vector<Mac> bssid(p.total);
  std::vector<std::string> ssid(p.total);
  for (std::size_t i = 0; i < p.total; ++i) {
    Mac m;
    do {
      m = Mac::from_parts(vendor[i], static_cast<std::uint32_t>(rng.below(1u << 24)));
    } while (bssids.count(m) || m.is_broadcast());
    bssids.insert(m);
    bssid[i] = m;
    if (is_default[i]) {
      auto names = defaults.names_for(vendor[i]);
      ssid[i] = names[rng.below(names.size())];
    } else {
      std::string s;
      do {
        s = std::string(kWords[rng.below(std::size(kWords))]) + "-" + std::to_string(rng.below(10000));
      } while (defaults.contains_anywhere(s));
      ssid[i] = s;
    }
  }

  // Tour: regions in order, networks visited in a shuffled order.
  std::vector<std::size_t> visit = all;
  rng.shuffle(visit);
  std::vector<Region> regions = p.regions;
  if (regions.empty()) regions.push_back({"bonn", p.total, 50.7339, 7.0997});
  std::size_t assigned = 0;
  for (const auto& r : regions) assigned += r.networks;
  regions.back().networks += p.total - assigned;

  double t = 0.0;
  std::size_t cursor = 0;
  for (const auto& region : regions) {
    double lat = region.lat;
    double lon = region.lon;
    for (std::size_t n = 0; n < region.networks && cursor < p.total; ++n, ++cursor) {
      std::size_t i = visit[cursor];
      lat += rng.uniform(-4e-4, 4e-4);
      lon += rng.uniform(-6e-4, 6e-4);
      std::uint8_t fl = 0;
      if (is_wep[i]) fl |= flags::kPrivacy;
      if (is_adhoc[i]) fl |= flags::kAdHoc;
      auto channel = static_cast<std::uint8_t>(1 + rng.below(11));
      std::size_t beacons = 2 + rng.below(3);
      for (std::size_t k = 0; k < beacons; ++k) {
        Frame b = detail::synth_frame(FrameType::Beacon, bssid[i], Mac::broadcast(), bssid[i], fl, channel,
                                      is_hidden[i] ? std::string() : ssid[i]);
        out.push_back(CaptureRecord{t, lat + rng.uniform(-2e-5, 2e-5), lon + rng.uniform(-2e-5, 2e-5),
                                    rng.uniform(1e-6, 1e-3), std::move(b)});
        t += 0.1;
      }
      if (is_hidden[i]) {
        Mac client = Mac::from_parts({0x00, 0x02, 0x2d}, static_cast<std::uint32_t>(rng.below(1u << 24)));
        Frame req = detail::synth_frame(FrameType::AssocRequest, client, bssid[i], bssid[i], 0, channel, ssid[i]);
        Frame resp = detail::synth_frame(FrameType::AssocResponse, bssid[i], client, bssid[i], 0, channel, ssid[i],
                                         Bytes{status::kSuccess});
        out.push_back(CaptureRecord{t, lat, lon, rng.uniform(1e-6, 1e-3), std::move(req)});
        t += 0.002;
        out.push_back(CaptureRecord{t, lat, lon, rng.uniform(1e-6, 1e-3), std::move(resp)});
        t += 0.1;
      }
      t += 2.0 + rng.uniform(0.0, 8.0);  // driving to the next network
    }
  }
  return out;
}

}  // namespace wavelab::survey
