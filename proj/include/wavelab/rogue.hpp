#pragma once

#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "wavelab/simnet.hpp"
#include "wavelab/wepcrypt.hpp"

namespace wavelab::sim {

enum class UpstreamAuth { Open, Forge };

struct UpstreamConfig {
  Mac mac;
  UpstreamAuth auth = UpstreamAuth::Forge;
  friend bool operator==(const UpstreamConfig&, const UpstreamConfig&) = default;
};

/// Overwrites payload bytes at a fixed offset.
struct Rewrite {
  std::size_t offset = 0;
  Bytes value;

  bool applies_to(const Bytes& p) const { return offset + value.size() <= p.size(); }
  Bytes apply(Bytes p) const {
    if (applies_to(p)) std::copy(value.begin(), value.end(), p.begin() + static_cast<std::ptrdiff_t>(offset));
    return p;
  }
  friend bool operator==(const Rewrite&, const Rewrite&) = default;
};

struct Intercept {
  double t = 0.0;
  Mac src;
  Mac dst;
  Bytes payload;    // as received from the client
  Bytes forwarded;  // after the rewrite rule
  bool rewritten = false;
};

/// A second base station announcing a victim's SSID. Clients that pick it
/// are served by an embedded access point; their payloads are recorded,
/// optionally rewritten, and pushed upstream to the real network through a
/// client-side association that uses open authentication or a keystream
/// lifted from an observed shared-key handshake.
class RogueAccessPoint : public Node {
 public:
  RogueAccessPoint(ApConfig twin, UpstreamConfig upstream, std::optional<Rewrite> rewrite)
      : front_(std::move(twin)), upstream_(upstream), rewrite_(std::move(rewrite)) {
    front_.set_uplink([this](NodeContext& ctx, const Mac& src, const Mac& dst, const Bytes& payload) {
      intercept(ctx, src, dst, payload);
    });
  }

  const ApConfig& config() const { return front_.config(); }
  const AccessPoint& front() const { return front_; }
  const std::vector<Intercept>& intercepts() const { return intercepts_; }
  std::optional<Mac> target() const { return target_; }
  bool upstream_associated() const { return phase_ == Phase::Associated; }
  bool upstream_failed() const { return auth_failures_ > 0 && phase_ != Phase::Associated; }
  std::size_t forwarded() const { return forwarded_; }
  std::size_t dropped() const { return dropped_; }
  const std::optional<Keystream>& lifted_keystream() const { return keystream_; }

  void start(NodeContext& ctx) override {
    front_.start(ctx);
    ctx.schedule_at(ctx.now() + kRetry, kConnectTag);
  }

  void on_timer(NodeContext& ctx, int tag) override {
    if (tag != kConnectTag) {
      front_.on_timer(ctx, tag);
      return;
    }
    if (phase_ == Phase::Associated) return;
    if (phase_ == Phase::Idle && target_ && (upstream_.auth == UpstreamAuth::Open || keystream_)) {
      phase_ = Phase::Authenticating;
      ctx.transmit(upstream_frame(FrameType::AuthRequest), 0.0);
    } else if (phase_ != Phase::Idle) {
      phase_ = Phase::Idle;  // exchange timed out; retry next tick
    }
    ctx.schedule_at(ctx.now() + kRetry, kConnectTag);
  }

  void on_frame(NodeContext& ctx, const Frame& f, double rssi) override {
    front_.on_frame(ctx, f, rssi);
    if (f.bssid == front_.config().bssid) return;
    observe(f, rssi);
    if (!target_ || f.src != *target_ || f.dst != upstream_.mac) return;
    switch (f.ftype) {
      case FrameType::AuthChallenge:
        if (phase_ == Phase::Authenticating) answer_challenge(ctx, f);
        break;
      case FrameType::AuthResult:
        if (phase_ == Phase::Authenticating) {
          if (ok(f)) {
            phase_ = Phase::Associating;
            Frame a = upstream_frame(FrameType::AssocRequest);
            a.ssid = front_.config().ssid;
            ctx.transmit(std::move(a));
          } else {
            ++auth_failures_;
            phase_ = Phase::Idle;
          }
        }
        break;
      case FrameType::AssocResponse:
        if (phase_ == Phase::Associating) {
          if (ok(f)) {
            phase_ = Phase::Associated;
            flush(ctx);
          } else {
            ++auth_failures_;
            phase_ = Phase::Idle;
          }
        }
        break;
      default:
        break;
    }
  }

 private:
  enum class Phase { Idle, Authenticating, Associating, Associated };
  static constexpr int kConnectTag = 100;
  static constexpr double kRetry = 0.1;

  struct Pending {
    Mac dst;
    Bytes payload;
  };

  static bool ok(const Frame& f) { return !f.is_wep() && !f.clear().empty() && f.clear()[0] == status::kSuccess; }

  void observe(const Frame& f, double rssi) {
    const auto& ssid = front_.config().ssid;
    if ((f.ftype == FrameType::Beacon || f.ftype == FrameType::ProbeResponse) && f.ssid == ssid &&
        f.src == f.bssid) {
      if (!target_rssi_ || rssi > *target_rssi_) {
        target_ = f.bssid;
        target_rssi_ = rssi;
        target_privacy_ = f.privacy();
      }
    }
    if (f.ftype == FrameType::AuthChallenge && !f.is_wep() && f.src == f.bssid) challenges_[f.dst] = f.clear();
    if (f.ftype == FrameType::AuthResponse && f.is_wep() && !keystream_ && target_ && f.bssid == *target_) {
      auto it = challenges_.find(f.src);
      if (it != challenges_.end()) {
        Bytes ks = xor_bytes(with_icv(it->second), f.wep().ciphertext);
        keystream_ = Keystream{f.wep().iv, std::move(ks)};
        key_id_ = f.wep().key_id;
      }
    }
  }

  Frame upstream_frame(FrameType t) const {
    Frame f;
    f.ftype = t;
    f.src = upstream_.mac;
    f.dst = *target_;
    f.bssid = *target_;
    f.body = Bytes{};
    return f;
  }

  void answer_challenge(NodeContext& ctx, const Frame& f) {
    if (!keystream_ || f.is_wep() || f.clear().size() + 4 > keystream_->bytes.size()) {
      ++auth_failures_;
      phase_ = Phase::Idle;
      return;
    }
    Frame r = upstream_frame(FrameType::AuthResponse);
    r.flags = flags::kPrivacy;
    r.body = seal_with_keystream(keystream_->iv, key_id_, keystream_->bytes, f.clear());
    ctx.transmit(std::move(r));
  }

  void intercept(NodeContext& ctx, const Mac& src, const Mac& dst, const Bytes& payload) {
    Intercept rec{ctx.now(), src, dst, payload, payload, false};
    if (rewrite_ && rewrite_->applies_to(payload)) {
      rec.forwarded = rewrite_->apply(payload);
      rec.rewritten = true;
    }
    queue_.push_back(Pending{dst, rec.forwarded});
    intercepts_.push_back(std::move(rec));
    if (phase_ == Phase::Associated) flush(ctx);
  }

  void flush(NodeContext& ctx) {
    while (!queue_.empty()) {
      Pending p = std::move(queue_.front());
      queue_.pop_front();
      Frame d = upstream_frame(FrameType::Data);
      d.dst = p.dst;
      if (target_privacy_) {
        if (!keystream_ || p.payload.size() + 4 > keystream_->bytes.size()) {
          ++dropped_;
          continue;
        }
        d.flags = flags::kPrivacy;
        d.body = seal_with_keystream(keystream_->iv, key_id_, keystream_->bytes, p.payload);
      } else {
        d.body = p.payload;
      }
      ++forwarded_;
      ctx.transmit(std::move(d));
    }
  }

  AccessPoint front_;
  UpstreamConfig upstream_;
  std::optional<Rewrite> rewrite_;
  std::optional<Mac> target_;
  std::optional<double> target_rssi_;
  bool target_privacy_ = false;
  std::map<Mac, Bytes> challenges_;
  std::optional<Keystream> keystream_;
  std::uint8_t key_id_ = 0;
  Phase phase_ = Phase::Idle;
  std::size_t auth_failures_ = 0;
  std::deque<Pending> queue_;
  std::vector<Intercept> intercepts_;
  std::size_t forwarded_ = 0;
  std::size_t dropped_ = 0;
};

}  // namespace wavelab::sim
