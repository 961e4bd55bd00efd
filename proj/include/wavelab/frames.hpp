#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "wavelab/bytes.hpp"
#include "wavelab/error.hpp"

namespace wavelab {

/// Hardware address. The first three octets are the vendor prefix (OUI).
struct Mac {
  std::array<std::uint8_t, 6> octets{};

  static constexpr Mac broadcast() { return Mac{{0xff, 0xff, 0xff, 0xff, 0xff, 0xff}}; }

  /// Parses "aa:bb:cc:dd:ee:ff" (":" or "-" separators, or none).
  static Mac parse(std::string_view text) {
    std::string digits;
    for (char c : text) {
      if (c == ':' || c == '-') continue;
      digits.push_back(c);
    }
    if (digits.size() != 12) throw Error(ErrorKind::ParseError, "bad MAC address: " + std::string(text));
    Bytes raw = from_hex(digits);
    Mac m;
    std::copy(raw.begin(), raw.end(), m.octets.begin());
    return m;
  }

  /// Vendor prefix plus a 24-bit device suffix.
  static Mac from_parts(std::array<std::uint8_t, 3> oui, std::uint32_t suffix) {
    return Mac{{oui[0], oui[1], oui[2], static_cast<std::uint8_t>(suffix >> 16),
                static_cast<std::uint8_t>(suffix >> 8), static_cast<std::uint8_t>(suffix)}};
  }

  std::array<std::uint8_t, 3> oui() const { return {octets[0], octets[1], octets[2]}; }

  std::uint32_t suffix() const {
    return (std::uint32_t{octets[3]} << 16) | (std::uint32_t{octets[4]} << 8) | octets[5];
  }

  bool is_broadcast() const { return *this == broadcast(); }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < octets.size(); ++i) {
      if (i) out.push_back(':');
      out += to_hex(ByteView(&octets[i], 1));
    }
    return out;
  }

  friend auto operator<=>(const Mac&, const Mac&) = default;
};

inline std::string oui_str(const std::array<std::uint8_t, 3>& oui) {
  return to_hex(ByteView(&oui[0], 1)) + ":" + to_hex(ByteView(&oui[1], 1)) + ":" +
         to_hex(ByteView(&oui[2], 1));
}

inline std::array<std::uint8_t, 3> parse_oui(std::string_view text) {
  std::string digits;
  for (char c : text)
    if (c != ':' && c != '-') digits.push_back(c);
  if (digits.size() != 6) throw Error(ErrorKind::ParseError, "bad vendor prefix: " + std::string(text));
  Bytes raw = from_hex(digits);
  return {raw[0], raw[1], raw[2]};
}

enum class FrameType : std::uint8_t {
  Beacon = 0x01,
  ProbeRequest = 0x02,
  ProbeResponse = 0x03,
  AuthRequest = 0x04,
  AuthChallenge = 0x05,
  AuthResponse = 0x06,
  AuthResult = 0x07,
  AssocRequest = 0x08,
  AssocResponse = 0x09,
  Data = 0x0A,
  Deauth = 0x0B,
};

constexpr bool valid_frame_type(std::uint8_t code) { return code >= 0x01 && code <= 0x0B; }

constexpr std::string_view frame_type_name(FrameType t) {
  switch (t) {
    case FrameType::Beacon: return "Beacon";
    case FrameType::ProbeRequest: return "ProbeRequest";
    case FrameType::ProbeResponse: return "ProbeResponse";
    case FrameType::AuthRequest: return "AuthRequest";
    case FrameType::AuthChallenge: return "AuthChallenge";
    case FrameType::AuthResponse: return "AuthResponse";
    case FrameType::AuthResult: return "AuthResult";
    case FrameType::AssocRequest: return "AssocRequest";
    case FrameType::AssocResponse: return "AssocResponse";
    case FrameType::Data: return "Data";
    case FrameType::Deauth: return "Deauth";
  }
  return "?";
}

using Iv = std::array<std::uint8_t, 3>;

inline std::uint32_t iv_to_u32(const Iv& iv) {
  return (std::uint32_t{iv[0]} << 16) | (std::uint32_t{iv[1]} << 8) | iv[2];
}

inline Iv iv_from_u32(std::uint32_t v) {
  return {static_cast<std::uint8_t>(v >> 16), static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v)};
}

struct WepEnvelope {
  Iv iv{};
  std::uint8_t key_id = 0;
  Bytes ciphertext;  // encrypted payload followed by the encrypted 4-octet ICV

  std::size_t payload_size() const { return ciphertext.size() >= 4 ? ciphertext.size() - 4 : 0; }

  friend bool operator==(const WepEnvelope&, const WepEnvelope&) = default;
};

namespace flags {
inline constexpr std::uint8_t kPrivacy = 0x01;
inline constexpr std::uint8_t kAdHoc = 0x02;
inline constexpr std::uint8_t kReserved = 0xFC;
}  // namespace flags

inline constexpr std::size_t kMaxSsid = 32;

/// Status octet carried in AuthResult and AssocResponse bodies.
namespace status {
inline constexpr std::uint8_t kSuccess = 0x00;
inline constexpr std::uint8_t kFailure = 0x01;
}  // namespace status

struct Frame {
  FrameType ftype = FrameType::Beacon;
  Mac src;
  Mac dst;
  Mac bssid;
  std::uint8_t flags = 0;
  std::uint8_t channel = 1;
  std::string ssid;
  std::variant<Bytes, WepEnvelope> body;

  bool is_wep() const { return std::holds_alternative<WepEnvelope>(body); }
  const WepEnvelope& wep() const { return std::get<WepEnvelope>(body); }
  const Bytes& clear() const { return std::get<Bytes>(body); }
  bool privacy() const { return flags & flags::kPrivacy; }
  bool adhoc() const { return flags & flags::kAdHoc; }

  friend bool operator==(const Frame&, const Frame&) = default;
};

namespace detail {

inline void check_frame(const Frame& f) {
  if (!valid_frame_type(static_cast<std::uint8_t>(f.ftype)))
    throw Error(ErrorKind::InvalidFrame, "unknown frame type");
  if (f.ssid.size() > kMaxSsid) throw Error(ErrorKind::InvalidFrame, "ssid longer than 32 octets");
  if (f.flags & flags::kReserved) throw Error(ErrorKind::InvalidFrame, "reserved flag bits set");
  if (f.channel < 1 || f.channel > 14) throw Error(ErrorKind::InvalidFrame, "channel outside 1..14");
  if (f.is_wep()) {
    if (!f.privacy()) throw Error(ErrorKind::InvalidFrame, "WEP body without privacy flag");
    if (f.wep().ciphertext.size() < 4) throw Error(ErrorKind::InvalidFrame, "WEP ciphertext shorter than ICV");
    if (f.wep().ciphertext.size() > 0xFFFF) throw Error(ErrorKind::InvalidFrame, "body too long");
  } else if (f.clear().size() > 0xFFFF) {
    throw Error(ErrorKind::InvalidFrame, "body too long");
  }
}

class Reader {
 public:
  explicit Reader(ByteView b) : b_(b) {}

  std::uint8_t u8() {
    need(1);
    return b_[pos_++];
  }
  ByteView take(std::size_t n) {
    need(n);
    ByteView out = b_.subspan(pos_, n);
    pos_ += n;
    return out;
  }
  Mac mac() {
    Mac m;
    auto raw = take(6);
    std::copy(raw.begin(), raw.end(), m.octets.begin());
    return m;
  }
  bool done() const { return pos_ == b_.size(); }

 private:
  void need(std::size_t n) const {
    if (b_.size() - pos_ < n) throw Error(ErrorKind::Truncated, "frame shorter than declared lengths");
  }
  ByteView b_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// ftype | src | dst | bssid | flags | channel | ssid_len | ssid | body_tag |
/// [iv | key_id] | body_len (big-endian u16) | body
inline Bytes encode_frame(const Frame& f) {
  detail::check_frame(f);
  Bytes out;
  out.reserve(32 + f.ssid.size() + (f.is_wep() ? f.wep().ciphertext.size() : f.clear().size()));
  out.push_back(static_cast<std::uint8_t>(f.ftype));
  for (const Mac* m : {&f.src, &f.dst, &f.bssid}) out.insert(out.end(), m->octets.begin(), m->octets.end());
  out.push_back(f.flags);
  out.push_back(f.channel);
  out.push_back(static_cast<std::uint8_t>(f.ssid.size()));
  out.insert(out.end(), f.ssid.begin(), f.ssid.end());
  const Bytes* payload;
  if (f.is_wep()) {
    const auto& env = f.wep();
    out.push_back(1);
    out.insert(out.end(), env.iv.begin(), env.iv.end());
    out.push_back(env.key_id);
    payload = &env.ciphertext;
  } else {
    out.push_back(0);
    payload = &f.clear();
  }
  out.push_back(static_cast<std::uint8_t>(payload->size() >> 8));
  out.push_back(static_cast<std::uint8_t>(payload->size() & 0xFF));
  out.insert(out.end(), payload->begin(), payload->end());
  return out;
}

inline Frame decode_frame(ByteView b) {
  detail::Reader r(b);
  Frame f;
  std::uint8_t code = r.u8();
  if (!valid_frame_type(code)) throw Error(ErrorKind::InvalidFrame, "unknown frame type code");
  f.ftype = static_cast<FrameType>(code);
  f.src = r.mac();
  f.dst = r.mac();
  f.bssid = r.mac();
  f.flags = r.u8();
  if (f.flags & flags::kReserved) throw Error(ErrorKind::InvalidFrame, "reserved flag bits set");
  f.channel = r.u8();
  if (f.channel < 1 || f.channel > 14) throw Error(ErrorKind::InvalidFrame, "channel outside 1..14");
  std::uint8_t ssid_len = r.u8();
  if (ssid_len > kMaxSsid) throw Error(ErrorKind::InvalidFrame, "ssid longer than 32 octets");
  f.ssid = to_string(r.take(ssid_len));
  std::uint8_t tag = r.u8();
  if (tag > 1) throw Error(ErrorKind::InvalidFrame, "unknown body tag");
  WepEnvelope env;
  if (tag == 1) {
    auto iv = r.take(3);
    std::copy(iv.begin(), iv.end(), env.iv.begin());
    env.key_id = r.u8();
  }
  std::size_t len = std::size_t{r.u8()} << 8;
  len |= r.u8();
  auto body = r.take(len);
  if (!r.done()) throw Error(ErrorKind::InvalidFrame, "trailing bytes after frame body");
  if (tag == 1) {
    if (!(f.flags & flags::kPrivacy)) throw Error(ErrorKind::InvalidFrame, "WEP body without privacy flag");
    if (body.size() < 4) throw Error(ErrorKind::InvalidFrame, "WEP ciphertext shorter than ICV");
    env.ciphertext.assign(body.begin(), body.end());
    f.body = std::move(env);
  } else {
    f.body = Bytes(body.begin(), body.end());
  }
  return f;
}

inline std::string encode_frame_hex(const Frame& f) { return to_hex(encode_frame(f)); }

inline Frame decode_frame_hex(std::string_view hex) {
  Bytes raw;
  try {
    raw = from_hex(hex);
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidFrame, e.detail());
  }
  return decode_frame(raw);
}

}  // namespace wavelab
