#pragma once

#include <optional>
#include <vector>

#include "wavelab/rogue.hpp"
#include "wavelab/scenario.hpp"

namespace wavelab::attacks {

struct ClientOutcome {
  Mac mac;
  std::optional<Mac> associated_to;
  bool on_twin = false;
  bool wep_fallback = false;
  std::size_t sent_clear = 0;
  std::size_t sent_sealed = 0;
};

struct SinkDelivery {
  Mac sink;
  double t = 0.0;
  Bytes payload;
  bool was_wep = false;
};

struct TwinReport {
  Mac twin_bssid;
  std::optional<Mac> upstream_target;
  bool upstream_associated = false;
  std::vector<ClientOutcome> clients;
  std::vector<sim::Intercept> intercepts;
  std::vector<SinkDelivery> deliveries;
  std::size_t forwarded = 0;
  std::size_t dropped = 0;
};

/// Runs a scenario containing a rogue twin for `duration` (the scenario's
/// own duration when unset) and reports who it captured and what reached the
/// stations behind the real access point.
inline TwinReport evil_twin_run(const sim::Scenario& scenario, std::optional<double> duration = std::nullopt) {
  if (!scenario.twin) throw Error(ErrorKind::ConfigError, "scenario has no twin access point");
  sim::Built b = sim::build(scenario);
  b.sim->run_until(duration.value_or(scenario.duration));

  TwinReport rep;
  auto& twin = b.rogue();
  rep.twin_bssid = twin.config().bssid;
  rep.upstream_target = twin.target();
  rep.upstream_associated = twin.upstream_associated();
  rep.intercepts = twin.intercepts();
  rep.forwarded = twin.forwarded();
  rep.dropped = twin.dropped();
  for (std::size_t i = 0; i < b.stations.size(); ++i) {
    auto& st = b.station(i);
    ClientOutcome c;
    c.mac = st.mac();
    c.associated_to = st.associated_bssid();
    c.on_twin = c.associated_to && *c.associated_to == rep.twin_bssid;
    c.wep_fallback = st.config().wep_fallback;
    for (const auto& s : st.sent()) (s.sealed ? c.sent_sealed : c.sent_clear)++;
    rep.clients.push_back(c);
    for (const auto& r : st.inbox()) rep.deliveries.push_back(SinkDelivery{st.mac(), r.t, r.payload, r.was_wep});
  }

  bool any_on_twin = false;
  for (const auto& c : rep.clients) any_on_twin = any_on_twin || c.on_twin;
  if (!any_on_twin) throw Error(ErrorKind::NotStronger, "no client preferred the twin");
  if (!rep.intercepts.empty() && !rep.upstream_associated)
    throw Error(ErrorKind::UpstreamAuthFailed, "twin could not join the real network");
  return rep;
}

}  // namespace wavelab::attacks
