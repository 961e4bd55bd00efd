#pragma once

#include <optional>
#include <vector>

#include "wavelab/simnet.hpp"

namespace wavelab {

/// Live handle on a running simulation, acting through the attacker radio.
/// Injected frames are transmitted at the current simulated time; the medium
/// is then advanced by a listening window and whatever the attacker heard is
/// returned. Past capture records are never touched.
class Oracle {
 public:
  static constexpr double kWindow = 5e-3;

  struct Injection {
    double t = 0.0;
    bool wired = false;  // entered through an AP's distribution side
    Frame frame;         // for wired injections: the payload as a clear Data frame
  };

  Oracle(sim::Simulator& sim, sim::NodeId attacker) : sim_(sim), attacker_(attacker) {
    sim_.get<sim::AttackerNode>(attacker_);
  }

  const Mac& mac() const { return node().mac(); }
  void set_mac(const Mac& m) { node().set_mac(m); }
  double now() const { return sim_.now(); }

  /// Drops whatever the attacker heard before now.
  void clear_heard() { node().take_heard(); }

  std::vector<Frame> listen(double window = kWindow) {
    node().take_heard();
    sim_.run_until(sim_.now() + window);
    return drain();
  }

  std::vector<Frame> exchange(Frame f, double window = kWindow) {
    node().take_heard();
    injections_.push_back(Injection{sim_.now(), false, f});
    sim_.transmit_at(attacker_, std::move(f), sim_.now());
    sim_.run_until(sim_.now() + window);
    return drain();
  }

  /// Sends payload towards dst through the wired side of the AP owning bssid.
  std::vector<Frame> wired(const Mac& bssid, const Mac& dst, const Bytes& payload, double window = kWindow) {
    node().take_heard();
    Frame record;
    record.ftype = FrameType::Data;
    record.src = mac();
    record.dst = dst;
    record.bssid = bssid;
    record.body = payload;
    injections_.push_back(Injection{sim_.now(), true, std::move(record)});
    for (sim::NodeId id = 0; id < sim_.node_count(); ++id) {
      if (auto* ap = sim_.try_get<sim::AccessPoint>(id); ap && ap->config().bssid == bssid) {
        sim::NodeContext ctx(sim_, id);
        ap->from_wired(ctx, dst, payload);
        break;
      }
    }
    sim_.run_until(sim_.now() + window);
    return drain();
  }

  const std::vector<Injection>& injections() const { return injections_; }

  const Capture& capture() const { return sim_.capture(); }
  void set_recording(bool on) { sim_.set_recording(attacker_, on); }

  sim::Simulator& simulator() { return sim_; }

 private:
  sim::AttackerNode& node() const { return sim_.get<sim::AttackerNode>(attacker_); }

  std::vector<Frame> drain() {
    std::vector<Frame> out;
    for (auto& h : node().take_heard()) out.push_back(std::move(h.frame));
    return out;
  }

  sim::Simulator& sim_;
  sim::NodeId attacker_;
  std::vector<Injection> injections_;
};

}  // namespace wavelab
