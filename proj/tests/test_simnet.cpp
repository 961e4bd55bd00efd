#include <gtest/gtest.h>

#include "wavelab/capture.hpp"
#include "wavelab/oracle.hpp"
#include "wavelab/scenario.hpp"

using namespace wavelab;
using namespace wavelab::sim;

namespace {

const Mac kAp = Mac::parse("00:40:96:00:00:01");
const Mac kAp2 = Mac::parse("00:40:96:00:00:02");
const Mac kSta = Mac::parse("00:02:2d:00:00:07");
const Mac kOther = Mac::parse("00:02:2d:00:00:08");
const Mac kAttacker = Mac::parse("02:00:00:00:be:ef");

Radio at(double x, double y = 0.0, double tx = 50.0) {
  Radio r;
  r.position = {x, y};
  r.tx_power_mw = tx;
  return r;
}

ApSpec ap(Mac bssid, std::string ssid, double x = 0.0) {
  ApSpec a;
  a.config.bssid = bssid;
  a.config.ssid = std::move(ssid);
  a.radio = at(x);
  return a;
}

StationSpec station(Mac mac, std::string ssid, double x = 5.0) {
  StationSpec s;
  s.config.mac = mac;
  s.config.ssid = std::move(ssid);
  s.radio = at(x);
  return s;
}

std::size_t count(const Capture& c, FrameType t) {
  std::size_t n = 0;
  for (const auto& r : c) n += r.frame.ftype == t;
  return n;
}

bool frame_mentions(const Frame& f, const std::string& ssid) {
  if (f.ssid == ssid) return true;
  std::string enc = to_string(encode_frame(f));
  return enc.find(ssid) != std::string::npos;
}

Scenario shared_key_scenario(std::uint64_t seed, std::optional<WepKey> station_key) {
  Scenario s;
  s.seed = seed;
  s.duration = 2.0;
  auto a = ap(kAp, "buero");
  a.config.auth_mode = AuthMode::SharedKey;
  a.config.privacy = WepPrivacy{keygen_vendor("bonn"), IvSequential{}};
  s.aps.push_back(a);
  auto st = station(kSta, "buero");
  if (station_key) st.config.wep = WepPrivacy{*station_key, IvRandom{seed}};
  s.stations.push_back(st);
  s.monitors.push_back({at(2.0)});
  return s;
}

}  // namespace

TEST(RadioModel, ReceivedPowerExamples) {
  EXPECT_DOUBLE_EQ(received_power(100.0, 1.0, 1.0), 100.0);
  EXPECT_DOUBLE_EQ(received_power(100.0, 1.0, 10.0), 1.0);
  EXPECT_DOUBLE_EQ(received_power(100.0, 1.0, 0.0), 100.0);  // clamped
  // Gain 5 stretches the radius for a fixed threshold by sqrt(5).
  double threshold = received_power(50.0, 1.0, 100.0);
  EXPECT_NEAR(received_power(50.0, 5.0, 100.0 * std::sqrt(5.0)), threshold, 1e-12);
  EXPECT_NEAR(std::sqrt(5.0), 2.24, 0.005);
}

TEST(RadioModel, PowerNonincreasingInDistance) {
  Rng rng(11);
  for (int i = 0; i < 5000; ++i) {
    double tx = 0.01 + rng.uniform01() * 500.0, g = 1.0 + rng.uniform01() * 20.0;
    double d1 = 1.0 + rng.uniform01() * 5000.0, d2 = d1 + rng.uniform01() * 5000.0;
    ASSERT_GE(received_power(tx, g, d1), received_power(tx, g, d2));
  }
}

TEST(RunScenario, EmptyScenarioGivesEmptyCapture) {
  Scenario s;
  s.duration = 10.0;
  EXPECT_TRUE(run_scenario(s).empty());
}

TEST(RunScenario, TwentyBeaconsInTwoSeconds) {
  Scenario s;
  s.duration = 2.0;
  s.aps.push_back(ap(kAp, "net"));
  s.monitors.push_back({at(10.0)});
  Capture c = run_scenario(s);
  EXPECT_EQ(count(c, FrameType::Beacon), 20u);
  EXPECT_EQ(c.size(), 20u);
}

TEST(RunScenario, OutOfRangeMonitorHearsNothing) {
  Scenario s;
  s.duration = 1.0;
  s.aps.push_back(ap(kAp, "net"));
  Radio far = at(1000.0);
  far.sensitivity_mw = 1e-3;  // 50 mW / 1000^2 = 5e-5 < 1e-3
  s.monitors.push_back({far});
  EXPECT_TRUE(run_scenario(s).empty());
}

TEST(RunScenario, DeterministicAndTimeOrdered) {
  Scenario s = shared_key_scenario(99, keygen_vendor("bonn"));
  s.stations[0].config.traffic.push_back({kOther, to_bytes("hello")});
  std::string a = capture_to_string(run_scenario(s));
  std::string b = capture_to_string(run_scenario(s));
  EXPECT_EQ(a, b);
  Capture c = run_scenario(s);
  for (std::size_t i = 1; i < c.size(); ++i) ASSERT_LE(c[i - 1].t, c[i].t);
  s.seed = 100;
  EXPECT_NE(capture_to_string(run_scenario(s)), a);  // challenge differs
}

TEST(RunScenario, ConfigErrors) {
  auto kind_of = [](const Scenario& s) {
    try {
      run_scenario(s);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Usage;
  };
  Scenario s;
  s.duration = 0.0;
  EXPECT_EQ(kind_of(s), ErrorKind::ConfigError);
  s.duration = 1.0;
  s.aps.push_back(ap(kAp, "one"));
  s.aps.push_back(ap(kAp, "two"));
  EXPECT_EQ(kind_of(s), ErrorKind::ConfigError);
  s.aps.pop_back();
  s.aps[0].radio.tx_power_mw = 0.0;
  EXPECT_EQ(kind_of(s), ErrorKind::ConfigError);
  s.aps[0].radio.tx_power_mw = -1.0;
  EXPECT_EQ(kind_of(s), ErrorKind::ConfigError);
  s.aps[0] = ap(kAp, "one");
  s.aps[0].config.auth_mode = AuthMode::SharedKey;  // no key
  EXPECT_EQ(kind_of(s), ErrorKind::ConfigError);
}

TEST(AccessPoint, HiddenProbeRules) {
  Scenario s;
  s.duration = 0.05;
  auto a = ap(kAp, "intern");
  a.config.hidden = true;
  s.aps.push_back(a);
  s.attacker = AttackerSpec{kAttacker, at(3.0)};
  Built b = build(s);
  b.sim->run_until(s.duration);
  Oracle o(*b.sim, *b.attacker);

  Frame probe;
  probe.ftype = FrameType::ProbeRequest;
  probe.src = kAttacker;
  probe.dst = probe.bssid = Mac::broadcast();
  probe.body = Bytes{};
  for (const auto& f : o.exchange(probe)) EXPECT_NE(f.ftype, FrameType::ProbeResponse);

  probe.ssid = "intern";
  bool answered = false;
  for (const auto& f : o.exchange(probe)) answered = answered || f.ftype == FrameType::ProbeResponse;
  EXPECT_TRUE(answered);

  for (const auto& r : b.sim->capture()) {
    if (r.frame.ftype == FrameType::Beacon) {
      EXPECT_TRUE(r.frame.ssid.empty());
    }
  }
}

TEST(AccessPoint, MacAclAdmitsOnlyListed) {
  Scenario s;
  s.duration = 0.05;
  auto a = ap(kAp, "net");
  a.config.mac_acl = std::vector<Mac>{kSta};
  s.aps.push_back(a);
  s.attacker = AttackerSpec{kOther, at(3.0)};
  Built b = build(s);
  b.sim->run_until(s.duration);
  Oracle o(*b.sim, *b.attacker);

  auto auth_result = [&](const Mac& src) -> std::optional<bool> {
    o.set_mac(src);
    Frame req;
    req.ftype = FrameType::AuthRequest;
    req.src = src;
    req.dst = req.bssid = kAp;
    req.body = Bytes{};
    for (const auto& f : o.exchange(req))
      if (f.ftype == FrameType::AuthResult && f.dst == src) return f.clear().at(0) == status::kSuccess;
    return std::nullopt;
  };
  EXPECT_EQ(auth_result(kOther), std::optional<bool>(false));
  EXPECT_EQ(auth_result(kSta), std::optional<bool>(true));
}

TEST(Station, PrefersStrongerAp) {
  Scenario s;
  s.duration = 1.0;
  auto weak = ap(kAp, "net", 0.0);
  weak.radio.tx_power_mw = 100.0;   // 1 mW at 10 m
  auto strong = ap(kAp2, "net", 20.0);
  strong.radio.tx_power_mw = 400.0;  // 4 mW at 10 m
  s.aps = {weak, strong};
  s.stations.push_back(station(kSta, "net", 10.0));
  EXPECT_DOUBLE_EQ(received_power(100.0, 1.0, 10.0), 1.0);
  EXPECT_DOUBLE_EQ(received_power(400.0, 1.0, 10.0), 4.0);
  Built b = build(s);
  b.sim->run_until(s.duration);
  EXPECT_EQ(b.station(0).associated_bssid(), std::optional<Mac>(kAp2));
}

TEST(Station, WepFallbackSendsClear) {
  Scenario s;
  s.duration = 1.5;
  auto a = ap(kAp, "net");
  a.config.relay = true;
  s.aps.push_back(a);
  auto st = station(kSta, "net");
  st.config.wep = WepPrivacy{WepKey::from_hex("0102030405"), IvSequential{}};
  st.config.wep_fallback = true;
  st.config.traffic.push_back({kOther, to_bytes("plain")});
  s.stations.push_back(st);
  s.monitors.push_back({at(1.0)});
  Built b = build(s);
  b.sim->run_until(s.duration);
  ASSERT_EQ(b.station(0).phase(), Phase::Associated);
  ASSERT_FALSE(b.station(0).sent().empty());
  for (const auto& sent : b.station(0).sent()) EXPECT_FALSE(sent.sealed);
  bool seen_clear = false;
  for (const auto& r : b.sim->capture())
    if (r.frame.ftype == FrameType::Data && r.frame.src == kSta) {
      EXPECT_FALSE(r.frame.is_wep());
      seen_clear = true;
    }
  EXPECT_TRUE(seen_clear);

  // Without fallback the same station keeps sealing.
  s.stations[0].config.wep_fallback = false;
  Built b2 = build(s);
  b2.sim->run_until(s.duration);
  for (const auto& sent : b2.station(0).sent()) EXPECT_TRUE(sent.sealed);
}

TEST(Station, SharedKeyHappyPath) {
  Scenario s = shared_key_scenario(5, keygen_vendor("bonn"));
  Built b = build(s);
  b.sim->run_until(s.duration);
  EXPECT_EQ(b.station(0).phase(), Phase::Associated);
  EXPECT_TRUE(b.ap(0).is_associated(kSta));
  EXPECT_GE(count(b.sim->capture(), FrameType::AuthChallenge), 1u);
}

TEST(Station, WrongSharedKeyFails) {
  Scenario s = shared_key_scenario(5, WepKey::from_hex("0000000000"));
  Built b = build(s);
  b.sim->run_until(s.duration);
  EXPECT_NE(b.station(0).phase(), Phase::Associated);
  EXPECT_GE(b.station(0).auth_failures(), 1u);
  EXPECT_FALSE(b.ap(0).is_associated(kSta));
}

TEST(Property, SharedKeyRejectsRandomResponses) {
  Scenario s = shared_key_scenario(3, std::nullopt);
  s.stations.clear();
  s.duration = 0.01;
  s.attacker = AttackerSpec{kAttacker, at(3.0)};
  Built b = build(s);
  b.sim->run_until(s.duration);
  Oracle o(*b.sim, *b.attacker);
  Rng rng(12);
  std::size_t challenges = 0, accepted = 0;
  for (int i = 0; i < 1000; ++i) {
    Frame req;
    req.ftype = FrameType::AuthRequest;
    req.src = kAttacker;
    req.dst = req.bssid = kAp;
    req.body = Bytes{};
    bool got_challenge = false;
    for (const auto& f : o.exchange(req)) got_challenge = got_challenge || f.ftype == FrameType::AuthChallenge;
    challenges += got_challenge;
    Frame resp = req;
    resp.ftype = FrameType::AuthResponse;
    resp.flags = flags::kPrivacy;
    resp.body = WepEnvelope{{rng.byte(), rng.byte(), rng.byte()}, 0, rng.bytes(kChallengeLength + 4)};
    for (const auto& f : o.exchange(resp))
      if (f.ftype == FrameType::AuthResult && f.dst == kAttacker && f.clear().at(0) == status::kSuccess) ++accepted;
  }
  EXPECT_EQ(challenges, 1000u);
  EXPECT_EQ(accepted, 0u);
  EXPECT_FALSE(b.ap(0).is_associated(kAttacker));
}

TEST(Property, HiddenSsidContainment) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Scenario s;
    s.seed = seed;
    s.duration = 1.5;
    auto a = ap(kAp, "geheim");
    a.config.hidden = true;
    s.aps.push_back(a);
    s.monitors.push_back({at(2.0)});
    // A client for another network probes broadcast and never learns the name.
    s.stations.push_back(station(kOther, "", 4.0));
    Capture quiet = run_scenario(s);
    ASSERT_FALSE(quiet.empty());
    for (const auto& r : quiet) ASSERT_FALSE(frame_mentions(r.frame, "geheim")) << seed;

    s.stations.push_back(station(kSta, "geheim", 6.0));
    s.stations.back().config.start_time = 0.1 * static_cast<double>(seed % 5);
    Capture loud = run_scenario(s);
    bool named = false;
    for (const auto& r : loud)
      if ((r.frame.ftype == FrameType::AssocRequest || r.frame.ftype == FrameType::AssocResponse) &&
          r.frame.ssid == "geheim")
        named = true;
    EXPECT_TRUE(named) << seed;
  }
}

TEST(Property, AclSoundness) {
  Rng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    Scenario s;
    s.seed = static_cast<std::uint64_t>(trial);
    s.duration = 1.0;
    auto a = ap(kAp, "net");
    std::vector<Mac> allowed;
    for (int k = 0; k < 3; ++k) allowed.push_back(Mac::from_parts({0x00, 0x02, 0x2d}, rng.below(64)));
    a.config.mac_acl = allowed;
    s.aps.push_back(a);
    for (int k = 0; k < 6; ++k)
      s.stations.push_back(station(Mac::from_parts({0x00, 0x02, 0x2d}, rng.below(64)), "net", 3.0 + k));
    Built b = build(s);
    b.sim->run_until(s.duration);
    for (std::size_t i = 0; i < s.stations.size(); ++i) {
      bool listed = std::find(allowed.begin(), allowed.end(), b.station(i).mac()) != allowed.end();
      if (!listed) {
        EXPECT_NE(b.station(i).phase(), Phase::Associated);
        EXPECT_FALSE(b.ap(0).is_associated(b.station(i).mac()));
      } else {
        EXPECT_EQ(b.station(i).phase(), Phase::Associated);
      }
    }
  }
}

TEST(Relay, ApResealsWithItsOwnIvs) {
  Scenario s = shared_key_scenario(4, keygen_vendor("bonn"));
  s.aps[0].config.relay = true;
  s.aps[0].config.privacy->iv_policy = IvFixed{{0x00, 0xbe, 0xef}};
  s.stations[0].config.traffic.push_back({kOther, to_bytes("payload one")});
  Built b = build(s);
  b.sim->run_until(s.duration);
  ASSERT_FALSE(b.ap(0).relayed().empty());
  const Relayed& r = b.ap(0).relayed().front();
  EXPECT_EQ(r.payload, to_bytes("payload one"));
  EXPECT_EQ(r.iv, std::optional<Iv>(Iv{0x00, 0xbe, 0xef}));
  bool seen = false;
  for (const auto& rec : b.sim->capture())
    if (rec.frame.ftype == FrameType::Data && rec.frame.src == kAp && rec.frame.dst == kOther) {
      EXPECT_EQ(wep_open(keygen_vendor("bonn"), rec.frame.wep()), to_bytes("payload one"));
      seen = true;
    }
  EXPECT_TRUE(seen);
}
