// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "wavelab/attacks/bitflip.hpp"
#include "wavelab/attacks/brute_force.hpp"
#include "wavelab/attacks/evil_twin.hpp"
#include "wavelab/attacks/fms.hpp"
#include "wavelab/attacks/hidden_ssid.hpp"
#include "wavelab/attacks/inductive.hpp"
#include "wavelab/attacks/keystream_dictionary.hpp"
#include "wavelab/attacks/replay.hpp"
#include "wavelab/attacks/shared_key.hpp"
#include "wavelab/shipped.hpp"

using namespace wavelab;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v, int prec = 2) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(prec);
  os << v;
  return os.str();
}

/// Runs a shell command and returns its stdout; sets `status` to the exit code.
std::string shell(const std::string& cmd, int& status) {
  std::string out;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (!p) {
    status = -1;
    return out;
  }
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
  int rc = ::pclose(p);
  status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return out;
}

const std::string kCli = WAVELAB_CLI;

struct Running {
  sim::Scenario scenario;
  sim::Built built;
  explicit Running(sim::Scenario s) : scenario(std::move(s)), built(sim::build(scenario)) {
    built.sim->run_until(scenario.duration);
  }
  const Capture& capture() const { return built.sim->capture(); }
  Oracle oracle() { return Oracle(*built.sim, *built.attacker); }
  Mac bssid() const { return scenario.aps.at(0).config.bssid; }
  WepKey key() const { return scenario.aps.at(0).config.privacy->key; }
};

// ---------------------------------------------------------------------------

Verdict survey_reproduction() {
  auto t0 = Clock::now();
  int st1 = 0;
  std::string cmd = kCli + " --seed 1 survey synth --profile bonn-cologne-2001 | " + kCli +
                    " --json survey analyze /dev/stdin";
  std::string out = shell(cmd, st1);
  double secs = seconds_since(t0);
  if (st1 != 0) return {false, "pipeline exit " + std::to_string(st1)};
  auto j = nlohmann::json::parse(out);
  std::ostringstream d;
  d << "total " << j["total_networks"] << ", ad-hoc " << j["adhoc"]["count"] << ", WEP " << j["wep"]["count"]
    << ", hidden " << j["hidden"]["count"] << ", default " << j["default_ssid"]["count"] << ", hidden same vendor "
    << j["hidden_same_vendor"]["count"] << "; percent " << j["adhoc"]["percent"] << "/" << j["wep"]["percent"] << "/"
    << j["hidden"]["percent"] << "/" << j["default_ssid"]["percent"] << "/"
    << j["hidden_same_vendor"]["percent_of_hidden"] << "; " << fmt(secs) << " s";
  bool ok = j["total_networks"] == 283 && j["adhoc"]["count"] == 11 && j["wep"]["count"] == 78 &&
            j["hidden"]["count"] == 59 && j["default_ssid"]["count"] == 84 && j["hidden_same_vendor"]["count"] == 58 &&
            j["adhoc"]["percent"] == 4 && j["wep"]["percent"] == 28 && j["hidden"]["percent"] == 21 &&
            j["default_ssid"]["percent"] == 30 && j["hidden_same_vendor"]["percent_of_hidden"] == 98 && secs < 5.0;
  return {ok, d.str()};
}

Verdict detection_demo() {
  auto t0 = Clock::now();
  int st = 0;
  std::string out = shell(kCli + " --json detect-demo --scenario bonn-preliminary --gains 1,5 --sweep", st);
  double secs = seconds_since(t0);
  if (st != 0) return {false, "exit " + std::to_string(st)};
  auto rows = nlohmann::json::parse(out)["rows"];
  bool ok = rows.size() == 12 && rows[0]["gain"] == 1.0 && rows[0]["detected"] == 2 && rows[0]["known"] == 6 &&
            rows[1]["gain"] == 5.0 && rows[1]["detected"] == 4;
  std::ostringstream d;
  d << "gain 1: " << rows[0]["detected"] << "/6, gain 5: " << rows[1]["detected"] << "/6; sweep 1..10:";
  for (std::size_t i = 2; i < rows.size(); ++i) {
    d << " " << rows[i]["detected"];
    if (i > 2 && rows[i]["detected"].get<int>() < rows[i - 1]["detected"].get<int>()) ok = false;
  }
  d << "; " << fmt(secs) << " s";
  return {ok && secs < 5.0, d.str()};
}

Verdict wep_core() {
  bool kat = to_hex(xor_bytes(rc4_keystream(to_bytes("Key"), 9), to_bytes("Plaintext"))) == "bbf316e8d940af0ad3" &&
             crc32(to_bytes("123456789")) == 0xCBF43926u &&
             oracle::crc32(to_bytes("123456789")) == 0xCBF43926u &&
             to_hex(crc32_icv(to_bytes("123456789"))) == "2639f4cb";
  Rng rng(2024);
  std::size_t failures = 0;
  for (int i = 0; i < 10000; ++i) {
    WepKey key(rng.bytes(rng.below(2) ? 5 : 13));
    Iv iv{rng.byte(), rng.byte(), rng.byte()};
    Bytes p = rng.bytes(1 + rng.below(300));
    WepEnvelope env = wep_seal(key, iv, p);
    bool ok = env.ciphertext == oracle::wep(Bytes(iv.begin(), iv.end()), key.secret(), p);
    try {
      ok = ok && wep_open(key, env) == p;
    } catch (const Error&) {
      ok = false;
    }
    failures += !ok;
  }
  return {kat && failures == 0,
          std::string("known answers ") + (kat ? "match" : "differ") + "; 10000 round trips, " +
              std::to_string(failures) + " failures"};
}

Verdict shared_key_forgery() {
  std::size_t success = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    sim::Scenario s = shipped::scenario("shared-key");
    s.seed = seed;
    Running r(s);
    Oracle o = r.oracle();
    auto f = attacks::forge_shared_key_auth(r.capture(), o, r.bssid());
    success += f.authenticated && f.associated && r.built.ap(0).is_associated(o.mac());
  }

  // Keyless: no handshake in the capture, responses sealed under guessed keystream.
  std::size_t false_assoc = 0, attempts = 0, unanswered = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    sim::Scenario s = shipped::scenario("shared-key");
    s.seed = seed;
    s.stations.clear();
    Running r(s);
    Oracle o = r.oracle();
    Mac bssid = r.bssid();
    try {
      attacks::forge_shared_key_auth(r.capture(), o, bssid);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InsufficientCapture) ++false_assoc;
    }
    Rng rng(seed * 7919);
    for (int i = 0; i < 100; ++i) {
      ++attempts;
      Frame req;
      req.ftype = FrameType::AuthRequest;
      req.src = o.mac();
      req.dst = req.bssid = bssid;
      req.body = Bytes{};
      std::optional<Bytes> challenge;
      for (const auto& f : o.exchange(req))
        if (f.ftype == FrameType::AuthChallenge && f.dst == o.mac()) challenge = f.clear();
      if (!challenge) {
        ++unanswered;
        continue;
      }
      Frame resp = req;
      resp.ftype = FrameType::AuthResponse;
      resp.flags = flags::kPrivacy;
      Iv iv{rng.byte(), rng.byte(), rng.byte()};
      resp.body = seal_with_keystream(iv, 0, rng.bytes(challenge->size() + 4), *challenge);
      o.exchange(resp);
      Frame assoc = req;
      assoc.ftype = FrameType::AssocRequest;
      assoc.ssid = r.scenario.aps[0].config.ssid;
      o.exchange(assoc);
      if (r.built.ap(0).is_associated(o.mac())) ++false_assoc;
    }
  }
  return {success == 100 && false_assoc == 0 && unanswered == 0,
          std::to_string(success) + "/100 forged with a handshake; " + std::to_string(false_assoc) + "/" +
              std::to_string(attempts) + " keyless attempts associated, " + std::to_string(unanswered) + " unanswered"};
}

Verdict bitflip() {
  Rng rng(555);
  std::size_t ok = 0;
  for (int i = 0; i < 1000; ++i) {
    WepKey key(rng.bytes(rng.below(2) ? 5 : 13));
    Bytes p = rng.bytes(1 + rng.below(200));
    WepEnvelope env = wep_seal(key, {rng.byte(), rng.byte(), rng.byte()}, p);
    std::size_t at = rng.below(p.size());
    Bytes delta = rng.bytes(1 + rng.below(p.size() - at));
    Bytes expected = p;
    for (std::size_t k = 0; k < delta.size(); ++k) expected[at + k] ^= delta[k];
    try {
      ok += wep_open(key, attacks::bitflip_forge(env, delta, at)) == expected;
    } catch (const Error&) {
    }
  }
  return {ok == 1000, std::to_string(ok) + "/1000 forgeries accepted with plaintext = original xor delta"};
}

Verdict inductive() {
  auto t0 = Clock::now();
  std::size_t max_per_byte = 0, total = 0, bytes = 0, correct = 0, seed_len_ok = 0;
  for (std::uint64_t run = 1; run <= 10; ++run) {
    sim::Scenario s = shipped::scenario("shared-key");
    s.seed = run;
    Running r(s);
    Oracle o = r.oracle();
    auto f = attacks::forge_shared_key_auth(r.capture(), o, r.bssid());
    if (!f.associated) continue;
    seed_len_ok += f.keystream.bytes.size() == 132;
    o.set_recording(false);
    attacks::InductiveOptions opts;
    opts.key_id = f.key_id;
    opts.order_seed = run;
    auto res = attacks::inductive_extend(o, f.keystream, r.bssid(), 1500, opts);
    for (auto n : res.injections_per_byte) max_per_byte = std::max<std::size_t>(max_per_byte, n);
    total += res.injections;
    bytes += res.injections_per_byte.size();
    correct += res.keystream.bytes == rc4_keystream(r.key().seed_for(res.keystream.iv), 1500);
  }
  double secs = seconds_since(t0);
  double mean = bytes ? static_cast<double>(total) / static_cast<double>(bytes) : 0.0;
  bool ok = seed_len_ok == 10 && correct == 10 && bytes == 10 * (1500 - 132) && max_per_byte <= 256 && mean <= 160.0 &&
            secs < 60.0;
  return {ok, "10 runs 132 -> 1500 octets, " + std::to_string(correct) + "/10 match RC4; max " +
                  std::to_string(max_per_byte) + " and mean " + fmt(mean) + " injections per octet; " + fmt(secs) +
                  " s"};
}

Verdict fms() {
  std::size_t recovered = 0, frames_max = 0, weak_min = 1u << 30;
  double slowest = 0.0;
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    Rng rng(9000 + trial);
    WepKey key(rng.bytes(5));
    Capture c = attacks::weak_iv_traffic(key, 256, 2000, trial);
    frames_max = std::max(frames_max, c.size());
    auto t0 = Clock::now();
    try {
      auto res = attacks::fms_recover_key(c);
      recovered += res.key == key;
      for (auto n : res.weak_ivs) weak_min = std::min(weak_min, n);
    } catch (const Error&) {
    }
    slowest = std::max(slowest, seconds_since(t0));
  }
  bool ok = recovered >= 18 && frames_max <= 20000 && weak_min >= 60 && slowest < 120.0;
  return {ok, std::to_string(recovered) + "/20 keys recovered; " + std::to_string(weak_min) +
                  " weak IVs per position, " + std::to_string(frames_max) + " frames per trial; slowest " +
                  fmt(slowest, 3) + " s"};
}

Verdict brute_force() {
  // Planted: a three-character passphrase lies inside the 2^21 space.
  WepKey planted = keygen_vendor("lan");
  WepEnvelope sample = wep_seal(planted, {0x11, 0x22, 0x33}, to_bytes("aaaa0300000008004500"));
  attacks::BruteForceOptions restricted{21, {wep_seal(planted, {0x11, 0x22, 0x34}, to_bytes("confirm"))}};
  bool found = false;
  try {
    found = attacks::brute_force_key(sample, restricted).key == planted;
  } catch (const Error&) {
  }

  // Timed sweeps over a key outside the generator image.
  Rng rng(28);
  WepKey outside(rng.bytes(13));
  WepEnvelope miss = wep_seal(outside, {1, 2, 3}, to_bytes("aaaa030000000800"));
  std::vector<WepEnvelope> confirm = {wep_seal(outside, {1, 2, 4}, to_bytes("second frame")),
                                      wep_seal(outside, {1, 2, 5}, to_bytes("third frame"))};
  auto sweep = [&](unsigned bits) {
    auto t0 = Clock::now();
    bool not_found = false;
    try {
      attacks::brute_force_key(miss, {bits, confirm});
    } catch (const Error& e) {
      not_found = e.kind() == ErrorKind::NotFound;
    }
    return std::make_pair(not_found, seconds_since(t0));
  };
  auto [miss21, t21] = sweep(21);
  auto [miss28, t28] = sweep(28);
  std::cerr << "brute force: full 2^28 sweep took " << fmt(t28, 1) << " s\n";
  bool ok = found && miss21 && miss28 && t21 < 10.0 && t28 < 600.0;
  return {ok, std::string("planted key ") + (found ? "recovered" : "missed") + " in 2^21 sweep; 2^21 sweep " +
                  fmt(t21) + " s; full 2^28 sweep " + fmt(t28, 1) + " s" +
                  (miss28 ? "" : " (stopped early)")};
}

Verdict replay() {
  std::size_t exact = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    sim::Scenario s = shipped::scenario("fixed-iv");
    s.seed = seed;
    Rng rng(seed);
    std::string text(10 + rng.below(90), ' ');
    for (auto& c : text) c = static_cast<char>(0x20 + rng.below(95));
    s.stations[0].config.traffic = {{s.stations[1].config.mac, to_bytes(text)}};
    s.stations[0].config.wep->iv_policy = IvRandom{seed};
    Running r(s);
    Oracle o = r.oracle();
    const Frame* first = nullptr;
    for (const auto& rec : r.capture())
      if (rec.frame.ftype == FrameType::Data && rec.frame.is_wep() && rec.frame.src == r.bssid()) {
        first = &rec.frame;
        break;
      }
    if (!first) continue;
    try {
      exact += attacks::replay_decrypt(o, r.bssid(), first->wep()).plaintext == to_bytes(text);
    } catch (const Error&) {
    }
  }
  return {exact == 100, std::to_string(exact) + "/100 runs returned the exact plaintext from one injection"};
}

Verdict evil_twin() {
  sim::Scenario s = shipped::scenario("evil-twin");
  attacks::TwinReport rep = attacks::evil_twin_run(s);
  std::size_t fallback = 0, on_twin = 0;
  for (const auto& c : rep.clients)
    if (c.wep_fallback) {
      ++fallback;
      on_twin += c.on_twin;
    }
  std::size_t plaintexts = 0;
  for (const auto& i : rep.intercepts) plaintexts += !i.payload.empty();
  // Every intercepted payload must arrive at its sink exactly as rewritten.
  const auto& rule = *s.twin->rewrite;
  std::size_t verbatim = 0;
  for (const auto& i : rep.intercepts) {
    Bytes want = rule.apply(i.payload);
    for (const auto& d : rep.deliveries)
      if (d.sink == i.dst && d.payload == want && want != i.payload) {
        ++verbatim;
        break;
      }
  }
  bool ok = fallback > 0 && on_twin == fallback && plaintexts >= 1 && verbatim == rep.intercepts.size();
  return {ok, std::to_string(on_twin) + "/" + std::to_string(fallback) + " fallback clients on the twin; " +
                  std::to_string(plaintexts) + " plaintexts intercepted; " + std::to_string(verbatim) +
                  " rewrites delivered verbatim"};
}

Verdict hidden_ssid() {
  std::size_t ok = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Rng rng(seed);
    std::string name = "net-" + std::to_string(rng.below(100000));
    sim::Scenario s = shipped::scenario("hidden-ssid");
    s.seed = seed;
    s.aps[0].config.ssid = name;
    for (auto& st : s.stations) st.config.ssid = name;
    Mac bssid = s.aps[0].config.bssid;

    sim::Scenario quiet = s;
    quiet.stations.clear();
    bool not_found = false;
    try {
      attacks::reveal_hidden_ssid(sim::run_scenario(quiet), bssid);
    } catch (const Error& e) {
      not_found = e.kind() == ErrorKind::NotFound;
    }
    bool revealed = false;
    try {
      revealed = attacks::reveal_hidden_ssid(sim::run_scenario(s), bssid) == name;
    } catch (const Error&) {
    }
    ok += not_found && revealed;
  }
  return {ok == 50, std::to_string(ok) + "/50 seeds: NotFound without a client, exact SSID with one"};
}

Verdict determinism() {
  const std::vector<std::string> invocations = {
      "--seed 5 survey synth",
      "--seed 5 sim run shared-key",
      "--seed 5 sim weak-ivs --passphrase abc --filler 100",
      "--seed 5 --json detect-demo --sweep",
      "--seed 5 attack forge-auth",
      "--seed 5 attack spoof-mac",
      "--seed 5 attack replay",
      "--seed 5 attack evil-twin",
      "--seed 5 attack hidden-ssid --scenario hidden-ssid",
      "--seed 5 attack inductive --target-len 200",
      "--seed 5 attack dictionary --scenario fixed-iv",
  };
  std::size_t same = 0;
  for (const auto& args : invocations) {
    int s1 = 0, s2 = 0;
    std::string a = shell(kCli + " " + args + " 2>/dev/null", s1);
    std::string b = shell(kCli + " " + args + " 2>/dev/null", s2);
    same += s1 == 0 && s2 == 0 && !a.empty() && a == b;
  }
  // Piped survey and --out files as well.
  int st = 0;
  std::string tmp = "/tmp/wavelab-accept-" + std::to_string(::getpid());
  shell(kCli + " --seed 8 --out " + tmp + ".a sim run hidden-ssid && " + kCli + " --seed 8 --out " + tmp +
            ".b sim run hidden-ssid && cmp -s " + tmp + ".a " + tmp + ".b && test -s " + tmp + ".a",
        st);
  shell("rm -f " + tmp + ".a " + tmp + ".b", st = 0);
  bool files_same = st == 0;
  std::size_t total = invocations.size();
  return {same == total && files_same, std::to_string(same) + "/" + std::to_string(total) +
                                           " invocations byte-identical on repeat; --out files " +
                                           (files_same ? "identical" : "differ")};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Verdict()> check;
  };
  const std::vector<Criterion> criteria = {
      {"1 survey reproduction", survey_reproduction},
      {"2 detection demo", detection_demo},
      {"3 WEP core", wep_core},
      {"4 shared-key forgery", shared_key_forgery},
      {"5 bit-flip", bitflip},
      {"6 inductive extension", inductive},
      {"7 FMS recovery", fms},
      {"8 brute force", brute_force},
      {"9 replay", replay},
      {"10 evil twin", evil_twin},
      {"11 hidden SSID", hidden_ssid},
      {"12 determinism", determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (v.pass ? "PASS" : "FAIL") << "  " << c.name << ": " << v.detail << std::endl;
    failed += !v.pass;
  }
  return failed == 0 ? 0 : 1;
}
