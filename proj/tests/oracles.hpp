#pragma once

// Reference implementations written independently of the library, used to
// derive expected values in tests.

#include <cstdint>
#include <string>
#include <vector>

namespace oracle {

using Bytes = std::vector<std::uint8_t>;

/// RC4 from the textbook description, with int state and explicit modulo.
inline Bytes rc4(const Bytes& key, std::size_t n) {
  int S[256];
  for (int i = 0; i < 256; i++) S[i] = i;
  int j = 0;
  for (int i = 0; i < 256; i++) {
    j = (j + S[i] + key[i % key.size()]) % 256;
    int t = S[i];
    S[i] = S[j];
    S[j] = t;
  }
  Bytes out;
  int i = 0;
  j = 0;
  while (out.size() < n) {
    i = (i + 1) % 256;
    j = (j + S[i]) % 256;
    int t = S[i];
    S[i] = S[j];
    S[j] = t;
    out.push_back(static_cast<std::uint8_t>(S[(S[i] + S[j]) % 256]));
  }
  return out;
}

/// CRC-32 by bitwise long division, no table.
inline std::uint32_t crc32(const Bytes& data) {
  std::uint32_t r = 0xFFFFFFFF;
  for (auto byte : data) {
    r ^= byte;
    for (int b = 0; b < 8; b++) r = (r & 1) ? (r >> 1) ^ 0xEDB88320 : r >> 1;
  }
  return ~r;
}

inline Bytes icv_le(const Bytes& data) {
  std::uint32_t c = crc32(data);
  return {static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(c >> 8), static_cast<std::uint8_t>(c >> 16),
          static_cast<std::uint8_t>(c >> 24)};
}

/// WEP encryption spelled out: RC4(iv || key) XOR (p || crc(p)).
inline Bytes wep(const Bytes& iv, const Bytes& key, const Bytes& plain) {
  Bytes seed = iv;
  seed.insert(seed.end(), key.begin(), key.end());
  Bytes msg = plain;
  Bytes icv = icv_le(plain);
  msg.insert(msg.end(), icv.begin(), icv.end());
  Bytes ks = rc4(seed, msg.size());
  for (std::size_t i = 0; i < msg.size(); i++) msg[i] ^= ks[i];
  return msg;
}

/// FMS for one key octet straight from the definition, for cross-checks.
inline int fms_guess(const Bytes& iv, const Bytes& known_key, std::uint8_t out0) {
  Bytes k = iv;
  k.insert(k.end(), known_key.begin(), known_key.end());
  int S[256];
  for (int i = 0; i < 256; i++) S[i] = i;
  int j = 0;
  int steps = static_cast<int>(k.size());
  for (int i = 0; i < steps; i++) {
    j = (j + S[i] + k[i]) % 256;
    int t = S[i];
    S[i] = S[j];
    S[j] = t;
  }
  if (S[1] >= steps || (S[1] + S[S[1]]) % 256 != steps) return -1;
  int inv = 0;
  for (int v = 0; v < 256; v++)
    if (S[v] == out0) inv = v;
  return ((inv - j - S[steps]) % 256 + 256) % 256;
}

/// Vendor generator from its definition.
inline Bytes vendor_key(const std::string& pass) {
  std::uint8_t seed[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < pass.size(); i++) seed[i % 4] ^= static_cast<std::uint8_t>(pass[i]);
  std::uint64_t x = seed[0] | (seed[1] << 8) | (seed[2] << 16) | (std::uint64_t(seed[3]) << 24);
  Bytes k;
  for (int n = 0; n < 5; n++) {
    x = (x * 0x343FD + 0x269EC3) % 4294967296ULL;
    k.push_back(static_cast<std::uint8_t>((x >> 16) & 0xFF));
  }
  return k;
}

}  // namespace oracle
