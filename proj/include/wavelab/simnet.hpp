#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wavelab/capture.hpp"
#include "wavelab/error.hpp"
#include "wavelab/frames.hpp"
#include "wavelab/rng.hpp"
#include "wavelab/wepcrypt.hpp"

namespace wavelab::sim {

// ---------------------------------------------------------------------------
// Radio model

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline double distance(Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Power at the receiver, falling with the square of the distance. Distances
/// under one metre are clamped to the one-metre reference.
inline double received_power(double tx_mw, double gain, double d) {
  double r = std::max(d, 1.0);
  return tx_mw * gain / (r * r);
}

struct Radio {
  Vec2 position;
  Vec2 velocity;  // m/s, for mobile scanners
  double tx_power_mw = 50.0;
  double antenna_gain = 1.0;  // linear
  double sensitivity_mw = 1e-4;

  Vec2 at(double t) const { return {position.x + velocity.x * t, position.y + velocity.y * t}; }

  friend bool operator==(const Radio&, const Radio&) = default;
};

inline void validate_radio(const Radio& r) {
  if (!(r.tx_power_mw > 0.0)) throw Error(ErrorKind::ConfigError, "tx_power_mw must be positive");
  if (!(r.antenna_gain >= 1.0)) throw Error(ErrorKind::ConfigError, "antenna_gain must be >= 1");
  if (!(r.sensitivity_mw > 0.0)) throw Error(ErrorKind::ConfigError, "sensitivity_mw must be positive");
}

/// Processing delay between receiving a frame and transmitting the reply.
inline constexpr double kTurnaround = 1e-3;

using NodeId = std::size_t;

class Simulator;

class NodeContext {
 public:
  NodeContext(Simulator& sim, NodeId id) : sim_(sim), id_(id) {}

  double now() const;
  NodeId id() const { return id_; }
  void transmit(Frame f, double delay = kTurnaround);
  void schedule_at(double t, int tag);
  Rng& rng();

 private:
  Simulator& sim_;
  NodeId id_;
};

class Node {
 public:
  virtual ~Node() = default;
  virtual void start(NodeContext&) {}
  virtual void on_frame(NodeContext&, const Frame&, double /*rssi_mw*/) {}
  virtual void on_timer(NodeContext&, int /*tag*/) {}
};

// ---------------------------------------------------------------------------
// Event-driven medium

class Simulator {
 public:
  explicit Simulator(std::uint64_t seed = 0) : seed_(seed) {}

  Simulator(const Simulator&) = delete;
  Simulator& operator=(const Simulator&) = delete;

  NodeId add(std::unique_ptr<Node> node, const Radio& radio, bool record = false) {
    validate_radio(radio);
    NodeId id = nodes_.size();
    nodes_.push_back(Entry{std::move(node), radio, record, Rng(Rng::mix(seed_, id))});
    push(Event{now_, id, 0, EventKind::Start, {}, 0});
    return id;
  }

  template <typename T>
  T& get(NodeId id) {
    return dynamic_cast<T&>(*nodes_.at(id).node);
  }

  template <typename T>
  T* try_get(NodeId id) {
    return dynamic_cast<T*>(nodes_.at(id).node.get());
  }

  const Radio& radio(NodeId id) const { return nodes_.at(id).radio; }
  std::size_t node_count() const { return nodes_.size(); }

  void transmit_at(NodeId from, Frame f, double t) { push(Event{t, from, 0, EventKind::Transmit, std::move(f), 0}); }

  void timer_at(NodeId node, double t, int tag) { push(Event{t, node, 0, EventKind::Timer, {}, tag}); }

  /// Processes every event strictly before t_end, then advances the clock.
  void run_until(double t_end) {
    while (!queue_.empty() && queue_.top().time < t_end) {
      Event ev = queue_.top();
      queue_.pop();
      now_ = ev.time;
      dispatch(ev);
    }
    if (t_end > now_) now_ = t_end;
  }

  double now() const { return now_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t transmissions() const { return transmissions_; }

  const Capture& capture() const { return capture_; }
  void set_recording(NodeId id, bool on) { nodes_.at(id).record = on; }

  /// Geographic anchor for converting node positions into lat/lon stamps.
  void set_origin(double lat, double lon) {
    origin_lat_ = lat;
    origin_lon_ = lon;
  }

  Rng& node_rng(NodeId id) { return nodes_.at(id).rng; }

 private:
  enum class EventKind { Start, Timer, Transmit };

  struct Event {
    double time;
    NodeId node;
    std::uint64_t seq;
    EventKind kind;
    Frame frame;
    int tag;
  };

  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.time != b.time) return a.time > b.time;
      if (a.node != b.node) return a.node > b.node;
      return a.seq > b.seq;
    }
  };

  struct Entry {
    std::unique_ptr<Node> node;
    Radio radio;
    bool record;
    Rng rng;
  };

  void push(Event ev) {
    ev.seq = next_seq_++;
    queue_.push(std::move(ev));
  }

  void dispatch(const Event& ev) {
    NodeContext ctx(*this, ev.node);
    switch (ev.kind) {
      case EventKind::Start:
        nodes_[ev.node].node->start(ctx);
        break;
      case EventKind::Timer:
        nodes_[ev.node].node->on_timer(ctx, ev.tag);
        break;
      case EventKind::Transmit:
        deliver(ev);
        break;
    }
  }

  void deliver(const Event& ev) {
    ++transmissions_;
    const Radio& tx = nodes_[ev.node].radio;
    Vec2 from = tx.at(ev.time);
    for (NodeId rx = 0; rx < nodes_.size(); ++rx) {
      if (rx == ev.node) continue;
      Entry& e = nodes_[rx];
      Vec2 to = e.radio.at(ev.time);
      double p = received_power(tx.tx_power_mw, e.radio.antenna_gain, distance(from, to));
      if (p < e.radio.sensitivity_mw) continue;
      if (e.record) {
        constexpr double kMetersPerDegree = 111320.0;
        double lat = origin_lat_ + to.y / kMetersPerDegree;
        double lon = origin_lon_ + to.x / (kMetersPerDegree * std::cos(origin_lat_ * 3.14159265358979323846 / 180.0));
        capture_.push_back(CaptureRecord{ev.time, lat, lon, p, ev.frame});
      }
      NodeContext ctx(*this, rx);
      e.node->on_frame(ctx, ev.frame, p);
    }
  }

  std::uint64_t seed_;
  std::vector<Entry> nodes_;
  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  std::uint64_t next_seq_ = 0;
  double now_ = 0.0;
  std::size_t transmissions_ = 0;
  Capture capture_;
  double origin_lat_ = 50.7339;
  double origin_lon_ = 7.0997;
};

inline double NodeContext::now() const { return sim_.now(); }
inline void NodeContext::transmit(Frame f, double delay) { sim_.transmit_at(id_, std::move(f), sim_.now() + delay); }
inline void NodeContext::schedule_at(double t, int tag) { sim_.timer_at(id_, t, tag); }
inline Rng& NodeContext::rng() { return sim_.node_rng(id_); }

// ---------------------------------------------------------------------------
// Access point

enum class AuthMode { Open, SharedKey };

struct WepPrivacy {
  WepKey key;
  IvPolicy iv_policy = IvSequential{};
  friend bool operator==(const WepPrivacy&, const WepPrivacy&) = default;
};

inline constexpr std::size_t kChallengeLength = 128;

struct ApConfig {
  Mac bssid;
  std::string ssid;
  std::uint8_t channel = 6;
  double beacon_rate_hz = 10.0;
  bool hidden = false;
  AuthMode auth_mode = AuthMode::Open;
  std::optional<std::vector<Mac>> mac_acl;
  std::optional<WepPrivacy> privacy;
  bool relay = false;
  bool adhoc = false;  // only sets the beacon flag; no IBSS behaviour

  friend bool operator==(const ApConfig&, const ApConfig&) = default;
};

inline void validate_ap(const ApConfig& c) {
  if (c.ssid.size() > kMaxSsid) throw Error(ErrorKind::ConfigError, "ssid longer than 32 octets");
  if (c.channel < 1 || c.channel > 14) throw Error(ErrorKind::ConfigError, "channel outside 1..14");
  if (!(c.beacon_rate_hz > 0.0)) throw Error(ErrorKind::ConfigError, "beacon_rate_hz must be positive");
  if (c.auth_mode == AuthMode::SharedKey && !c.privacy)
    throw Error(ErrorKind::ConfigError, "shared-key authentication requires a WEP key");
}

/// A payload the AP handed onward (over the air or to an uplink hook).
struct Relayed {
  double t = 0.0;
  Mac src;
  Mac dst;
  Bytes payload;
  std::optional<Iv> iv;  // IV used when resealed
};

class AccessPoint : public Node {
 public:
  using UplinkHook = std::function<void(NodeContext&, const Mac& src, const Mac& dst, const Bytes& payload)>;

  explicit AccessPoint(ApConfig config)
      : config_(std::move(config)), ivs_(config_.privacy ? config_.privacy->iv_policy : IvPolicy{IvSequential{}}) {
    validate_ap(config_);
  }

  const ApConfig& config() const { return config_; }
  const std::vector<Relayed>& relayed() const { return relayed_; }
  const std::set<Mac>& associated() const { return associated_; }
  bool is_associated(const Mac& m) const { return associated_.count(m) != 0; }
  std::size_t rejected_data() const { return rejected_data_; }

  /// Delivered payloads are handed to this hook instead of being relayed.
  void set_uplink(UplinkHook hook) { uplink_ = std::move(hook); }

  /// A payload arriving from the wired side, destined for dst on the air.
  void from_wired(NodeContext& ctx, const Mac& dst, const Bytes& payload) {
    if (config_.relay) relay_out(ctx, config_.bssid, dst, payload);
  }

  void start(NodeContext& ctx) override {
    started_ = ctx.now();
    ctx.schedule_at(started_, kBeaconTag);
  }

  void on_timer(NodeContext& ctx, int tag) override {
    if (tag != kBeaconTag) return;
    ctx.transmit(announce(FrameType::Beacon, Mac::broadcast(), !config_.hidden), 0.0);
    ++beacons_;
    ctx.schedule_at(started_ + static_cast<double>(beacons_) / config_.beacon_rate_hz, kBeaconTag);
  }

  void on_frame(NodeContext& ctx, const Frame& f, double) override {
    if (f.src == config_.bssid) return;
    switch (f.ftype) {
      case FrameType::ProbeRequest: {
        bool broadcast_probe = f.ssid.empty();
        if ((broadcast_probe && !config_.hidden) || f.ssid == config_.ssid)
          ctx.transmit(announce(FrameType::ProbeResponse, f.src, true));
        break;
      }
      case FrameType::AuthRequest:
        if (addressed(f)) on_auth_request(ctx, f);
        break;
      case FrameType::AuthResponse:
        if (addressed(f)) on_auth_response(ctx, f);
        break;
      case FrameType::AssocRequest:
        if (addressed(f)) on_assoc_request(ctx, f);
        break;
      case FrameType::Data:
        if (f.bssid == config_.bssid) on_data(ctx, f);
        break;
      case FrameType::Deauth:
        if (addressed(f)) {
          authenticated_.erase(f.src);
          associated_.erase(f.src);
        }
        break;
      default:
        break;
    }
  }

 private:
  static constexpr int kBeaconTag = 1;

  bool addressed(const Frame& f) const { return f.dst == config_.bssid && f.bssid == config_.bssid; }

  bool acl_allows(const Mac& m) const {
    if (!config_.mac_acl) return true;
    for (const auto& a : *config_.mac_acl)
      if (a == m) return true;
    return false;
  }

  std::uint8_t base_flags() const {
    std::uint8_t fl = 0;
    if (config_.privacy) fl |= flags::kPrivacy;
    if (config_.adhoc) fl |= flags::kAdHoc;
    return fl;
  }

  Frame management(FrameType t, const Mac& dst) const {
    Frame f;
    f.ftype = t;
    f.src = config_.bssid;
    f.dst = dst;
    f.bssid = config_.bssid;
    f.channel = config_.channel;
    f.body = Bytes{};
    return f;
  }

  Frame announce(FrameType t, const Mac& dst, bool with_ssid) const {
    Frame f = management(t, dst);
    f.flags = base_flags();
    if (with_ssid) f.ssid = config_.ssid;
    return f;
  }

  Frame result(FrameType t, const Mac& dst, bool ok) const {
    Frame f = management(t, dst);
    f.body = Bytes{ok ? status::kSuccess : status::kFailure};
    return f;
  }

  void on_auth_request(NodeContext& ctx, const Frame& f) {
    if (!acl_allows(f.src)) {
      ctx.transmit(result(FrameType::AuthResult, f.src, false));
      return;
    }
    if (config_.auth_mode == AuthMode::Open) {
      authenticated_.insert(f.src);
      ctx.transmit(result(FrameType::AuthResult, f.src, true));
      return;
    }
    Bytes challenge = ctx.rng().bytes(kChallengeLength);
    pending_[f.src] = challenge;
    Frame c = management(FrameType::AuthChallenge, f.src);
    c.body = std::move(challenge);
    ctx.transmit(std::move(c));
  }

  void on_auth_response(NodeContext& ctx, const Frame& f) {
    auto it = pending_.find(f.src);
    if (it == pending_.end()) return;
    Bytes expected = std::move(it->second);
    pending_.erase(it);
    bool ok = false;
    if (f.is_wep() && config_.privacy) {
      try {
        ok = wep_open(config_.privacy->key, f.wep()) == expected;
      } catch (const Error&) {
        ok = false;
      }
    }
    if (ok) authenticated_.insert(f.src);
    ctx.transmit(result(FrameType::AuthResult, f.src, ok));
  }

  void on_assoc_request(NodeContext& ctx, const Frame& f) {
    bool ok = authenticated_.count(f.src) && acl_allows(f.src) && f.ssid == config_.ssid;
    Frame r = result(FrameType::AssocResponse, f.src, ok);
    if (ok) {
      associated_.insert(f.src);
      r.ssid = config_.ssid;
    }
    ctx.transmit(std::move(r));
  }

  void on_data(NodeContext& ctx, const Frame& f) {
    if (!associated_.count(f.src)) return;
    Bytes payload;
    if (config_.privacy) {
      if (!f.is_wep()) {
        ++rejected_data_;
        return;
      }
      try {
        payload = wep_open(config_.privacy->key, f.wep());
      } catch (const Error&) {
        ++rejected_data_;
        return;
      }
    } else {
      if (f.is_wep()) {
        ++rejected_data_;
        return;
      }
      payload = f.clear();
    }
    if (uplink_) {
      relayed_.push_back(Relayed{ctx.now(), f.src, f.dst, payload, std::nullopt});
      uplink_(ctx, f.src, f.dst, payload);
    } else if (config_.relay) {
      relay_out(ctx, f.src, f.dst, payload);
    }
  }

  void relay_out(NodeContext& ctx, const Mac& origin, const Mac& dst, const Bytes& payload) {
    Frame out = management(FrameType::Data, dst);
    std::optional<Iv> iv;
    if (config_.privacy) {
      out.flags = flags::kPrivacy;
      iv = ivs_.next();
      out.body = wep_seal(config_.privacy->key, *iv, payload);
    } else {
      out.body = payload;
    }
    relayed_.push_back(Relayed{ctx.now(), origin, dst, payload, iv});
    ctx.transmit(std::move(out));
  }

  ApConfig config_;
  IvGenerator ivs_;
  std::set<Mac> authenticated_;
  std::set<Mac> associated_;
  std::map<Mac, Bytes> pending_;
  std::vector<Relayed> relayed_;
  std::size_t rejected_data_ = 0;
  std::uint64_t beacons_ = 0;
  double started_ = 0.0;
  UplinkHook uplink_;
};

// ---------------------------------------------------------------------------
// Station

struct TrafficItem {
  Mac dst;
  Bytes payload;
  friend bool operator==(const TrafficItem&, const TrafficItem&) = default;
};

struct StationConfig {
  Mac mac;
  std::string ssid;
  std::optional<WepPrivacy> wep;
  bool wep_fallback = false;
  double start_time = 0.0;
  double scan_time = 0.25;
  double data_interval = 0.05;
  int max_scans = 20;
  std::vector<TrafficItem> traffic;

  friend bool operator==(const StationConfig&, const StationConfig&) = default;
};

enum class Phase { Idle, Probing, Authenticating, Associating, Associated, AuthFailed };

struct Received {
  double t = 0.0;
  Mac src;
  Bytes payload;
  bool was_wep = false;
};

struct Sent {
  double t = 0.0;
  Mac dst;
  Bytes payload;
  bool sealed = false;
};

class Station : public Node {
 public:
  explicit Station(StationConfig config)
      : config_(std::move(config)),
        mac_(config_.mac),
        ivs_(config_.wep ? config_.wep->iv_policy : IvPolicy{IvSequential{}}) {}

  const StationConfig& config() const { return config_; }
  Phase phase() const { return phase_; }
  std::optional<Mac> associated_bssid() const {
    if (phase_ == Phase::Associated) return chosen_;
    return std::nullopt;
  }
  std::optional<Mac> chosen_bssid() const { return chosen_; }
  const Mac& mac() const { return mac_; }
  void set_mac(const Mac& m) { mac_ = m; }
  const std::vector<Received>& inbox() const { return inbox_; }
  const std::vector<Sent>& sent() const { return sent_; }
  std::size_t auth_failures() const { return auth_failures_; }

  void start(NodeContext& ctx) override { ctx.schedule_at(std::max(ctx.now(), config_.start_time), kScanTag); }

  void on_timer(NodeContext& ctx, int tag) override {
    switch (tag) {
      case kScanTag: begin_scan(ctx); break;
      case kScanEndTag: end_scan(ctx); break;
      case kTimeoutTag:
        if (phase_ == Phase::Authenticating || phase_ == Phase::Associating) {
          if (attempt_ == timeout_attempt_) begin_scan(ctx);
        }
        break;
      case kDataTag: send_next(ctx); break;
      default: break;
    }
  }

  void on_frame(NodeContext& ctx, const Frame& f, double rssi) override {
    switch (f.ftype) {
      case FrameType::Beacon:
      case FrameType::ProbeResponse:
        if (phase_ == Phase::Probing && !f.ssid.empty() && f.ssid == config_.ssid && !f.adhoc()) {
          auto& c = candidates_[f.bssid];
          c.rssi = std::max(c.rssi, rssi);
          c.privacy = f.privacy();
        }
        break;
      case FrameType::AuthChallenge:
        if (mine(f) && phase_ == Phase::Authenticating) answer_challenge(ctx, f);
        break;
      case FrameType::AuthResult:
        if (mine(f) && phase_ == Phase::Authenticating) {
          if (!f.is_wep() && !f.clear().empty() && f.clear()[0] == status::kSuccess) {
            phase_ = Phase::Associating;
            Frame a = to_ap(FrameType::AssocRequest);
            a.ssid = config_.ssid;
            ctx.transmit(std::move(a));
          } else {
            fail();
          }
        }
        break;
      case FrameType::AssocResponse:
        if (mine(f) && phase_ == Phase::Associating) {
          if (!f.is_wep() && !f.clear().empty() && f.clear()[0] == status::kSuccess) {
            phase_ = Phase::Associated;
            ctx.schedule_at(ctx.now() + config_.data_interval, kDataTag);
          } else {
            fail();
          }
        }
        break;
      case FrameType::Data:
        if (phase_ == Phase::Associated && f.dst == mac_ && f.src == *chosen_) receive_data(ctx, f);
        break;
      default:
        break;
    }
  }

 private:
  static constexpr int kScanTag = 1;
  static constexpr int kScanEndTag = 2;
  static constexpr int kTimeoutTag = 3;
  static constexpr int kDataTag = 4;
  static constexpr double kExchangeTimeout = 0.5;

  struct Candidate {
    double rssi = 0.0;
    bool privacy = false;
  };

  bool mine(const Frame& f) const { return chosen_ && f.dst == mac_ && f.bssid == *chosen_ && f.src == *chosen_; }

  Frame to_ap(FrameType t) const {
    Frame f;
    f.ftype = t;
    f.src = mac_;
    f.dst = *chosen_;
    f.bssid = *chosen_;
    f.body = Bytes{};
    return f;
  }

  void fail() {
    phase_ = Phase::AuthFailed;
    ++auth_failures_;
  }

  void begin_scan(NodeContext& ctx) {
    if (scans_ >= config_.max_scans) {
      phase_ = Phase::Idle;
      return;
    }
    ++scans_;
    phase_ = Phase::Probing;
    candidates_.clear();
    Frame probe;
    probe.ftype = FrameType::ProbeRequest;
    probe.src = mac_;
    probe.dst = Mac::broadcast();
    probe.bssid = Mac::broadcast();
    probe.ssid = config_.ssid;
    probe.body = Bytes{};
    ctx.transmit(std::move(probe), 0.0);
    ctx.schedule_at(ctx.now() + config_.scan_time, kScanEndTag);
  }

  void end_scan(NodeContext& ctx) {
    if (phase_ != Phase::Probing) return;
    if (candidates_.empty()) {
      begin_scan(ctx);
      return;
    }
    auto best = candidates_.begin();
    for (auto it = candidates_.begin(); it != candidates_.end(); ++it)
      if (it->second.rssi > best->second.rssi) best = it;
    chosen_ = best->first;
    chosen_privacy_ = best->second.privacy;
    phase_ = Phase::Authenticating;
    timeout_attempt_ = ++attempt_;
    ctx.transmit(to_ap(FrameType::AuthRequest), 0.0);
    ctx.schedule_at(ctx.now() + kExchangeTimeout, kTimeoutTag);
  }

  void answer_challenge(NodeContext& ctx, const Frame& f) {
    if (!config_.wep || f.is_wep()) {
      fail();
      return;
    }
    Frame r = to_ap(FrameType::AuthResponse);
    r.flags = flags::kPrivacy;
    r.body = wep_seal(config_.wep->key, ivs_.next(), f.clear());
    ctx.transmit(std::move(r));
  }

  bool seals() const { return config_.wep && (chosen_privacy_ || !config_.wep_fallback); }

  void send_next(NodeContext& ctx) {
    if (phase_ != Phase::Associated || next_item_ >= config_.traffic.size()) return;
    const auto& item = config_.traffic[next_item_++];
    Frame d = to_ap(FrameType::Data);
    d.dst = item.dst;
    bool sealed = seals();
    if (sealed) {
      d.flags = flags::kPrivacy;
      d.body = wep_seal(config_.wep->key, ivs_.next(), item.payload);
    } else {
      d.body = item.payload;
    }
    sent_.push_back(Sent{ctx.now(), item.dst, item.payload, sealed});
    ctx.transmit(std::move(d), 0.0);
    if (next_item_ < config_.traffic.size()) ctx.schedule_at(ctx.now() + config_.data_interval, kDataTag);
  }

  void receive_data(NodeContext& ctx, const Frame& f) {
    if (f.is_wep()) {
      if (!config_.wep) return;
      try {
        inbox_.push_back(Received{ctx.now(), f.src, wep_open(config_.wep->key, f.wep()), true});
      } catch (const Error&) {
      }
    } else {
      inbox_.push_back(Received{ctx.now(), f.src, f.clear(), false});
    }
  }

  StationConfig config_;
  Mac mac_;
  IvGenerator ivs_;
  Phase phase_ = Phase::Idle;
  std::map<Mac, Candidate> candidates_;
  std::optional<Mac> chosen_;
  bool chosen_privacy_ = false;
  int scans_ = 0;
  std::uint64_t attempt_ = 0;
  std::uint64_t timeout_attempt_ = 0;
  std::size_t next_item_ = 0;
  std::size_t auth_failures_ = 0;
  std::vector<Received> inbox_;
  std::vector<Sent> sent_;
};

// ---------------------------------------------------------------------------
// Passive receivers

/// Records nothing itself; the simulator's capture holds what it heard.
class Monitor : public Node {};

/// Attacker radio: hears everything in range, keeps a reception buffer the
/// oracle drains, and transmits only what the oracle injects.
class AttackerNode : public Node {
 public:
  explicit AttackerNode(Mac mac) : mac_(mac) {}

  const Mac& mac() const { return mac_; }
  void set_mac(const Mac& m) { mac_ = m; }

  void on_frame(NodeContext& ctx, const Frame& f, double rssi) override {
    heard_.push_back(Heard{ctx.now(), rssi, f});
  }

  struct Heard {
    double t;
    double rssi_mw;
    Frame frame;
  };

  std::vector<Heard> take_heard() { return std::exchange(heard_, {}); }

 private:
  Mac mac_;
  std::vector<Heard> heard_;
};

}  // namespace wavelab::sim
