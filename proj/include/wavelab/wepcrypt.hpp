#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <utility>
#include <variant>

#include "wavelab/bytes.hpp"
#include "wavelab/error.hpp"
#include "wavelab/frames.hpp"
#include "wavelab/rng.hpp"

namespace wavelab {

// ---------------------------------------------------------------------------
// RC4

class Rc4 {
 public:
  /// Full 256-step key schedule. Seeds of 1..256 octets.
  explicit Rc4(ByteView seed) {
    if (seed.empty() || seed.size() > 256) throw Error(ErrorKind::BadSeedLength, "RC4 seed must be 1..256 octets");
    schedule(seed.data(), seed.size());
  }

  /// Unchecked fast path for hot loops that build their own seed.
  Rc4(const std::uint8_t* seed, std::size_t len) { schedule(seed, len); }

  std::uint8_t next() {
    i_ = static_cast<std::uint8_t>(i_ + 1);
    j_ = static_cast<std::uint8_t>(j_ + s_[i_]);
    std::swap(s_[i_], s_[j_]);
    return s_[static_cast<std::uint8_t>(s_[i_] + s_[j_])];
  }

  void apply(std::span<std::uint8_t> data) {
    for (auto& b : data) b ^= next();
  }

 private:
  void schedule(const std::uint8_t* seed, std::size_t len) {
    for (int k = 0; k < 256; ++k) s_[k] = static_cast<std::uint8_t>(k);
    std::uint8_t j = 0;
    for (int k = 0; k < 256; ++k) {
      j = static_cast<std::uint8_t>(j + s_[k] + seed[k % len]);
      std::swap(s_[k], s_[j]);
    }
  }

  std::array<std::uint8_t, 256> s_{};
  std::uint8_t i_ = 0;
  std::uint8_t j_ = 0;
};

inline Bytes rc4_keystream(ByteView seed, std::size_t n) {
  Rc4 rc4(seed);
  Bytes out(n);
  for (auto& b : out) b = rc4.next();
  return out;
}

// ---------------------------------------------------------------------------
// CRC-32 integrity value

namespace detail {
inline const std::array<std::uint32_t, 256>& crc_table() {
  static const auto table = [] {
    std::array<std::uint32_t, 256> t{};
    for (std::uint32_t n = 0; n < 256; ++n) {
      std::uint32_t c = n;
      for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
      t[n] = c;
    }
    return t;
  }();
  return table;
}
}  // namespace detail

inline std::uint32_t crc32(ByteView data) {
  const auto& t = detail::crc_table();
  std::uint32_t c = 0xFFFFFFFFu;
  for (auto b : data) c = t[(c ^ b) & 0xFF] ^ (c >> 8);
  return c ^ 0xFFFFFFFFu;
}

using Icv = std::array<std::uint8_t, 4>;

/// CRC-32 serialized little-endian, as carried in the WEP envelope.
inline Icv crc32_icv(ByteView data) {
  std::uint32_t c = crc32(data);
  return {static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(c >> 8), static_cast<std::uint8_t>(c >> 16),
          static_cast<std::uint8_t>(c >> 24)};
}

/// plaintext followed by its ICV: the byte string WEP encrypts.
inline Bytes with_icv(ByteView plaintext) {
  Bytes out(plaintext.begin(), plaintext.end());
  auto icv = crc32_icv(plaintext);
  out.insert(out.end(), icv.begin(), icv.end());
  return out;
}

// ---------------------------------------------------------------------------
// Keys and IVs

class WepKey {
 public:
  WepKey() : secret_(5, 0) {}

  explicit WepKey(Bytes secret, std::uint8_t key_id = 0) : secret_(std::move(secret)), key_id_(key_id) {
    if (secret_.size() != 5 && secret_.size() != 13)
      throw Error(ErrorKind::BadKeyLength, "WEP key must be 5 or 13 octets");
  }

  /// 10 or 26 hex digits.
  static WepKey from_hex(std::string_view hex) {
    if (hex.size() != 10 && hex.size() != 26)
      throw Error(ErrorKind::BadKeyLength, "WEP key must be 10 or 26 hex digits");
    return WepKey(wavelab::from_hex(hex));
  }

  const Bytes& secret() const { return secret_; }
  std::uint8_t key_id() const { return key_id_; }
  std::size_t bits() const { return secret_.size() * 8; }
  std::string hex() const { return to_hex(secret_); }

  /// iv followed by the secret: the per-frame RC4 seed.
  Bytes seed_for(const Iv& iv) const {
    Bytes seed(iv.begin(), iv.end());
    seed.insert(seed.end(), secret_.begin(), secret_.end());
    return seed;
  }

  friend bool operator==(const WepKey&, const WepKey&) = default;

 private:
  Bytes secret_;
  std::uint8_t key_id_ = 0;
};

struct IvSequential {
  std::uint32_t start = 0;
  friend bool operator==(const IvSequential&, const IvSequential&) = default;
};
struct IvRandom {
  std::uint64_t seed = 0;
  friend bool operator==(const IvRandom&, const IvRandom&) = default;
};
struct IvFixed {
  Iv iv{};
  friend bool operator==(const IvFixed&, const IvFixed&) = default;
};

using IvPolicy = std::variant<IvSequential, IvRandom, IvFixed>;

/// Stateful IV source following an IvPolicy. Sequential counters wrap at 2^24.
class IvGenerator {
 public:
  explicit IvGenerator(IvPolicy policy = IvSequential{}) : policy_(policy) {
    if (auto* s = std::get_if<IvSequential>(&policy_)) counter_ = s->start & 0xFFFFFF;
    if (auto* r = std::get_if<IvRandom>(&policy_)) rng_ = Rng(r->seed);
  }

  Iv next() {
    if (auto* f = std::get_if<IvFixed>(&policy_)) return f->iv;
    if (std::holds_alternative<IvRandom>(policy_)) return iv_from_u32(static_cast<std::uint32_t>(rng_.below(1u << 24)));
    Iv iv = iv_from_u32(counter_);
    counter_ = (counter_ + 1) & 0xFFFFFF;
    return iv;
  }

  const IvPolicy& policy() const { return policy_; }

 private:
  IvPolicy policy_;
  std::uint32_t counter_ = 0;
  Rng rng_{0};
};

/// A known keystream prefix for one IV under some (possibly unknown) key.
struct Keystream {
  Iv iv{};
  Bytes bytes;
  friend bool operator==(const Keystream&, const Keystream&) = default;
};

// ---------------------------------------------------------------------------
// Seal / open

inline WepEnvelope wep_seal(const WepKey& key, const Iv& iv, ByteView plaintext) {
  WepEnvelope env;
  env.iv = iv;
  env.key_id = key.key_id();
  env.ciphertext = with_icv(plaintext);
  Bytes seed = key.seed_for(iv);
  Rc4 rc4(seed);
  rc4.apply(env.ciphertext);
  return env;
}

/// Seals with a known keystream instead of a key; the IV is only carried.
inline WepEnvelope seal_with_keystream(const Iv& iv, std::uint8_t key_id, ByteView keystream, ByteView plaintext) {
  Bytes padded = with_icv(plaintext);
  if (keystream.size() < padded.size()) throw Error(ErrorKind::PrefixTooShort, "keystream shorter than plaintext + ICV");
  return WepEnvelope{iv, key_id, xor_bytes(padded, keystream)};
}

inline Bytes wep_open(const WepKey& key, const WepEnvelope& env) {
  if (env.ciphertext.size() < 4) throw Error(ErrorKind::IcvMismatch, "ciphertext shorter than ICV");
  Bytes plain = env.ciphertext;
  Bytes seed = key.seed_for(env.iv);
  Rc4 rc4(seed);
  rc4.apply(plain);
  std::size_t n = plain.size() - 4;
  auto icv = crc32_icv(ByteView(plain.data(), n));
  if (!std::equal(icv.begin(), icv.end(), plain.begin() + static_cast<std::ptrdiff_t>(n)))
    throw Error(ErrorKind::IcvMismatch, "integrity check failed");
  plain.resize(n);
  return plain;
}

// ---------------------------------------------------------------------------
// Weak vendor key generator: passphrase XOR-folded into a 32-bit seed, then
// one step of a linear congruential generator per key octet.

inline constexpr std::uint32_t kLcgMul = 0x343FD;
inline constexpr std::uint32_t kLcgAdd = 0x269EC3;

inline std::uint32_t vendor_seed(std::string_view passphrase) {
  if (passphrase.empty()) throw Error(ErrorKind::EmptyPassphrase, "passphrase must be nonempty");
  std::array<std::uint8_t, 4> s{};
  for (std::size_t i = 0; i < passphrase.size(); ++i) s[i % 4] ^= static_cast<std::uint8_t>(passphrase[i]);
  return std::uint32_t{s[0]} | (std::uint32_t{s[1]} << 8) | (std::uint32_t{s[2]} << 16) | (std::uint32_t{s[3]} << 24);
}

inline std::array<std::uint8_t, 5> vendor_key_octets(std::uint32_t seed) {
  std::array<std::uint8_t, 5> k{};
  std::uint32_t x = seed;
  for (auto& b : k) {
    x = x * kLcgMul + kLcgAdd;
    b = static_cast<std::uint8_t>((x >> 16) & 0xFF);
  }
  return k;
}

inline WepKey vendor_key_from_seed(std::uint32_t seed) {
  auto k = vendor_key_octets(seed);
  return WepKey(Bytes(k.begin(), k.end()));
}

inline WepKey keygen_vendor(std::string_view passphrase) { return vendor_key_from_seed(vendor_seed(passphrase)); }

}  // namespace wavelab
