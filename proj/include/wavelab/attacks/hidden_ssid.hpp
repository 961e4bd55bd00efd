#pragma once

#include <set>
#include <string>
#include <vector>

#include "wavelab/capture.hpp"
#include "wavelab/error.hpp"

namespace wavelab::attacks {

/// BSSIDs that beacon, but never with a name.
inline std::vector<Mac> hidden_bssids(const Capture& capture) {
  std::set<Mac> beaconing;
  std::set<Mac> named;
  for (const auto& r : capture) {
    const Frame& f = r.frame;
    if (f.ftype != FrameType::Beacon) continue;
    beaconing.insert(f.bssid);
    if (!f.ssid.empty()) named.insert(f.bssid);
  }
  std::vector<Mac> out;
  for (const auto& b : beaconing)
    if (!named.count(b)) out.push_back(b);
  return out;
}

/// Recovers the name of a network from the capture. Beacons answer directly
/// for announced networks; for hidden ones the name is taken from probe and
/// association traffic bound to the BSSID. Passive: needs no oracle.
inline std::string reveal_hidden_ssid(const Capture& capture, const Mac& bssid) {
  for (const auto& r : capture)
    if (r.frame.ftype == FrameType::Beacon && r.frame.bssid == bssid && !r.frame.ssid.empty()) return r.frame.ssid;
  for (const auto& r : capture) {
    const Frame& f = r.frame;
    if (f.bssid != bssid || f.ssid.empty()) continue;
    switch (f.ftype) {
      case FrameType::ProbeResponse:
      case FrameType::AssocRequest:
      case FrameType::AssocResponse:
      case FrameType::ProbeRequest:
        return f.ssid;
      default:
        break;
    }
  }
  throw Error(ErrorKind::NotFound, "no frame in the capture names " + bssid.str());
}

}  // namespace wavelab::attacks
