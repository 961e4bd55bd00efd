#pragma once

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wavelab/attacks/bitflip.hpp"
#include "wavelab/attacks/brute_force.hpp"
#include "wavelab/attacks/evil_twin.hpp"
#include "wavelab/attacks/fms.hpp"
#include "wavelab/attacks/hidden_ssid.hpp"
#include "wavelab/attacks/inductive.hpp"
#include "wavelab/attacks/keystream_dictionary.hpp"
#include "wavelab/attacks/mac_spoof.hpp"
#include "wavelab/attacks/replay.hpp"
#include "wavelab/attacks/shared_key.hpp"
#include "wavelab/capture.hpp"
#include "wavelab/detect.hpp"
#include "wavelab/shipped.hpp"
#include "wavelab/survey.hpp"

namespace wavelab::cli {

using ojson = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

inline int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Usage:
    case ErrorKind::ParseError:
      return kExitUsage;
    default:
      return kExitDomain;
  }
}

inline std::string error_json(std::string_view kind, std::string_view detail) {
  ojson j;
  j["kind"] = kind;
  j["detail"] = detail;
  return j.dump();
}

struct Globals {
  std::optional<std::uint64_t> seed;
  std::string out;
  bool strict = false;
  bool json = false;
};

/// Everything one invocation needs: flags, streams, and the report sink.
class Run {
 public:
  Run(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  Globals g;

  std::ostream& err() { return err_; }

  /// Action run after parsing when `cmd` was the selected subcommand.
  void on(CLI::App* cmd, std::function<void()> action) { actions_.emplace_back(cmd, std::move(action)); }

  bool run_selected() {
    for (auto& [cmd, action] : actions_)
      if (cmd->parsed()) {
        action();
        return true;
      }
    return false;
  }

  void emit(const std::string& text) {
    if (g.out.empty()) {
      out_ << text;
      return;
    }
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw Error(ErrorKind::IoError, "cannot write " + g.out);
    f << text;
  }

  void emit_json(const ojson& j) { emit(j.dump(2) + "\n"); }

  Capture load_capture(const std::string& path) {
    std::vector<IngestWarning> warnings;
    Capture c = ingest(path, g.strict, &warnings);
    for (const auto& w : warnings) err_ << "warning: line " << w.line << ": " << w.detail << "\n";
    return c;
  }

  void timing(const std::string& what, std::chrono::steady_clock::time_point start) {
    auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    err_ << what << ": " << ms << " ms\n";
  }

 private:
  std::ostream& out_;
  std::ostream& err_;
  std::vector<std::pair<CLI::App*, std::function<void()>>> actions_;
};

namespace detail {

inline std::uint64_t seed_or(const Globals& g, std::uint64_t fallback) { return g.seed.value_or(fallback); }

inline std::string printable(const Bytes& b) {
  for (auto c : b)
    if (c < 0x20 || c > 0x7E) return {};
  return to_string(b);
}

inline WepKey key_arg(const std::string& hex, const std::string& passphrase) {
  if (!hex.empty() && !passphrase.empty()) throw Error(ErrorKind::Usage, "give --key or --passphrase, not both");
  if (!hex.empty()) {
    try {
      return WepKey::from_hex(hex);
    } catch (const Error& e) {
      throw Error(ErrorKind::Usage, e.detail());
    }
  }
  if (!passphrase.empty()) return keygen_vendor(passphrase);
  throw Error(ErrorKind::Usage, "a key is required (--key or --passphrase)");
}

inline Mac mac_arg(const std::string& text) {
  try {
    return Mac::parse(text);
  } catch (const Error& e) {
    throw Error(ErrorKind::Usage, e.detail());
  }
}

inline Bytes hex_arg(const std::string& text) {
  try {
    return from_hex(text);
  } catch (const Error& e) {
    throw Error(ErrorKind::Usage, e.detail());
  }
}

/// A scenario that has been run to its duration; attacks continue from there.
struct Live {
  sim::Scenario scenario;
  sim::Built built;
  Capture capture;  // from --capture if given, else what the scenario recorded
};

inline Live live(Run& run, const std::string& scenario_ref, const std::string& capture_path) {
  Live l;
  l.scenario = shipped::scenario_or_file(scenario_ref);
  if (run.g.seed) l.scenario.seed = *run.g.seed;
  l.built = sim::build(l.scenario);
  l.built.sim->run_until(l.scenario.duration);
  l.capture = capture_path.empty() ? l.built.sim->capture() : run.load_capture(capture_path);
  return l;
}

inline Oracle oracle(Live& l) {
  if (!l.built.attacker) throw Error(ErrorKind::ConfigError, "scenario has no attacker node");
  return Oracle(*l.built.sim, *l.built.attacker);
}

inline Mac pick_bssid(const Live& l, const std::string& arg, bool want_shared) {
  if (!arg.empty()) return mac_arg(arg);
  for (const auto& ap : l.scenario.aps)
    if (!want_shared || ap.config.auth_mode == sim::AuthMode::SharedKey) return ap.config.bssid;
  throw Error(ErrorKind::NotFound, want_shared ? "scenario has no shared-key access point" : "scenario has no access point");
}

/// The nth WEP data frame, optionally restricted to one BSSID.
/// With from_ap, only frames the access point itself sent count.
inline const Frame& nth_wep(const Capture& c, std::size_t n, std::optional<Mac> bssid = std::nullopt,
                            bool from_ap = false) {
  std::size_t seen = 0;
  for (const auto& r : c)
    if (r.frame.ftype == FrameType::Data && r.frame.is_wep() && (!bssid || r.frame.bssid == *bssid) &&
        (!from_ap || r.frame.src == r.frame.bssid))
      if (seen++ == n) return r.frame;
  throw Error(ErrorKind::NotFound, "capture holds no WEP data frame #" + std::to_string(n));
}

inline ojson keystream_json(const Keystream& ks) {
  return ojson{{"iv", to_hex(ByteView(ks.iv.data(), ks.iv.size()))},
               {"length", ks.bytes.size()},
               {"bytes_hex", to_hex(ks.bytes)}};
}

inline std::string iv_hex(const Iv& iv) { return to_hex(ByteView(iv.data(), iv.size())); }

}  // namespace detail

// ---------------------------------------------------------------------------

inline void register_sim(CLI::App& app, Run& run) {
  auto* sim = app.add_subcommand("sim", "Run simulations and generate traffic");
  sim->require_subcommand(1);

  auto* r = sim->add_subcommand("run", "Run a scenario and write the capture as JSON Lines");
  auto scenario = std::make_shared<std::string>();
  auto duration = std::make_shared<double>(0.0);
  r->add_option("scenario,--scenario", *scenario, "shipped scenario name or JSON file")->required();
  r->add_option("--duration", *duration, "override the scenario duration (s)");
  run.on(r, [&run, scenario, duration] {
    sim::Scenario s = shipped::scenario_or_file(*scenario);
    if (run.g.seed) s.seed = *run.g.seed;
    if (*duration > 0.0) s.duration = *duration;
    run.emit(capture_to_string(sim::run_scenario(s)));
  });

  auto* w = sim->add_subcommand("weak-ivs", "WEP traffic rich in weak IVs for one key");
  auto key = std::make_shared<std::string>();
  auto pass = std::make_shared<std::string>();
  auto per = std::make_shared<std::size_t>(256);
  auto filler = std::make_shared<std::size_t>(1000);
  w->add_option("--key", *key, "10 or 26 hex digits");
  w->add_option("--passphrase", *pass, "derive the key with the vendor generator");
  w->add_option("--per-position", *per, "weak IVs per key octet")->check(CLI::Range(1, 256));
  w->add_option("--filler", *filler, "additional frames under random IVs");
  run.on(w, [&run, key, pass, per, filler] {
    WepKey k = detail::key_arg(*key, *pass);
    run.emit(capture_to_string(attacks::weak_iv_traffic(k, *per, *filler, detail::seed_or(run.g, 1))));
  });
}

inline void register_attacks(CLI::App& app, Run& run) {
  auto* atk = app.add_subcommand("attack", "Attacks against captures and live scenarios");
  atk->require_subcommand(1);

  struct Common {
    std::string capture;
    std::string scenario;
    std::string bssid;
    std::size_t budget = 0;
  };
  auto add_common = [](CLI::App* c, Common& o, bool scenario_default_needed) {
    c->add_option("--capture", o.capture, "JSON Lines capture");
    auto* s = c->add_option("--scenario", o.scenario, "shipped scenario name or JSON file");
    if (scenario_default_needed) s->capture_default_str();
    c->add_option("--bssid", o.bssid, "target access point");
    c->add_option("--budget", o.budget, "attempt budget");
  };

  // hidden-ssid
  {
    auto o = std::make_shared<Common>();
    auto* c = atk->add_subcommand("hidden-ssid", "Recover hidden network names from a capture");
    add_common(c, *o, false);
    run.on(c, [&run, o] {
      Capture cap;
      if (!o->capture.empty())
        cap = run.load_capture(o->capture);
      else if (!o->scenario.empty())
        cap = detail::live(run, o->scenario, "").capture;
      else
        throw Error(ErrorKind::Usage, "--capture or --scenario is required");
      ojson rep;
      rep["attack"] = "hidden-ssid";
      ojson nets = ojson::array();
      std::vector<Mac> targets = o->bssid.empty() ? attacks::hidden_bssids(cap) : std::vector<Mac>{detail::mac_arg(o->bssid)};
      std::size_t revealed = 0;
      std::string last_error = "capture shows no hidden network";
      for (const auto& b : targets) {
        try {
          nets.push_back({{"bssid", b.str()}, {"ssid", attacks::reveal_hidden_ssid(cap, b)}});
          ++revealed;
        } catch (const Error& e) {
          nets.push_back({{"bssid", b.str()}, {"ssid", nullptr}});
          last_error = e.detail();
        }
      }
      if (revealed == 0) throw Error(ErrorKind::NotFound, last_error);
      rep["networks"] = nets;
      run.emit_json(rep);
    });
  }

  // forge-auth
  {
    auto o = std::make_shared<Common>();
    o->scenario = "shared-key";
    auto* c = atk->add_subcommand("forge-auth", "Shared-key authentication without the key");
    add_common(c, *o, true);
    run.on(c, [&run, o] {
      auto l = detail::live(run, o->scenario, o->capture);
      Mac bssid = detail::pick_bssid(l, o->bssid, true);
      auto oracle = detail::oracle(l);
      auto r = attacks::forge_shared_key_auth(l.capture, oracle, bssid);
      ojson rep;
      rep["attack"] = "forge-auth";
      rep["bssid"] = bssid.str();
      rep["mac"] = r.mac.str();
      rep["authenticated"] = r.authenticated;
      rep["associated"] = r.associated;
      rep["keystream"] = detail::keystream_json(r.keystream);
      rep["injections"] = r.injections;
      run.emit_json(rep);
      if (!r.authenticated) throw Error(ErrorKind::VerificationFailed, "access point rejected the forged response");
    });
  }

  // spoof-mac
  {
    auto o = std::make_shared<Common>();
    o->scenario = "mac-acl";
    o->budget = 1u << 16;
    auto mode = std::make_shared<std::string>("auto");
    auto oui = std::make_shared<std::string>("00:02:2d");
    auto start = std::make_shared<std::uint32_t>(0);
    auto* c = atk->add_subcommand("spoof-mac", "Find an address the MAC allow-list admits");
    add_common(c, *o, true);
    c->add_option("--mode", *mode, "observe, search, or auto")->check(CLI::IsMember({"auto", "observe", "search"}));
    c->add_option("--oui", *oui, "vendor prefix searched in search mode");
    c->add_option("--start", *start, "first device suffix in search mode");
    run.on(c, [&run, o, mode, oui, start] {
      auto l = detail::live(run, o->scenario, o->capture);
      Mac bssid = detail::pick_bssid(l, o->bssid, false);
      auto oracle = detail::oracle(l);
      std::optional<attacks::SpoofResult> r;
      std::string used = *mode;
      if (*mode != "search") {
        try {
          r = attacks::spoof_mac_observed(l.capture, oracle, bssid);
          used = "observe";
        } catch (const Error&) {
          if (*mode == "observe") throw;
        }
      }
      if (!r) {
        survey::Oui prefix;
        try {
          prefix = parse_oui(*oui);
        } catch (const Error& e) {
          throw Error(ErrorKind::Usage, e.detail());
        }
        r = attacks::spoof_mac_search(oracle, bssid, prefix, *start, o->budget);
        used = "search";
      }
      ojson rep;
      rep["attack"] = "spoof-mac";
      rep["bssid"] = bssid.str();
      rep["mode"] = used;
      rep["mac"] = r->mac.str();
      rep["probes"] = r->probes;
      run.emit_json(rep);
    });
  }

  // fms
  {
    auto o = std::make_shared<Common>();
    auto opts = std::make_shared<attacks::FmsOptions>();
    auto* c = atk->add_subcommand("fms", "Recover the WEP key from weak-IV traffic");
    add_common(c, *o, false);
    c->add_option("--key-bytes", opts->key_bytes, "key length in octets")->check(CLI::IsMember({5, 13}));
    c->add_option("--depth", opts->depth, "candidates tried per key octet")->check(CLI::Range(1, 256));
    run.on(c, [&run, o, opts] {
      if (o->capture.empty()) throw Error(ErrorKind::Usage, "--capture is required");
      Capture cap = run.load_capture(o->capture);
      auto start = std::chrono::steady_clock::now();
      auto r = attacks::fms_recover_key(cap, *opts);
      run.timing("fms", start);
      ojson rep;
      rep["attack"] = "fms";
      rep["key"] = r.key.hex();
      rep["samples"] = r.samples;
      rep["weak_ivs_per_position"] = r.weak_ivs;
      rep["votes_for_chosen"] = r.key_votes;
      rep["votes_total"] = r.total_votes;
      rep["keys_tried"] = r.keys_tried;
      run.emit_json(rep);
    });
  }

  // dictionary
  {
    auto o = std::make_shared<Common>();
    auto known = std::make_shared<std::string>("aa");
    auto* c = atk->add_subcommand("dictionary", "Keystream table from known plaintext; decrypt what it covers");
    add_common(c, *o, false);
    c->add_option("--known-hex", *known, "plaintext prefix every data payload starts with");
    run.on(c, [&run, o, known] {
      Capture cap;
      if (!o->capture.empty())
        cap = run.load_capture(o->capture);
      else if (!o->scenario.empty())
        cap = detail::live(run, o->scenario, "").capture;
      else
        throw Error(ErrorKind::Usage, "--capture or --scenario is required");
      auto table = attacks::build_keystream_dictionary(cap, attacks::known_prefix_rule(detail::hex_arg(*known)));
      ojson rep;
      rep["attack"] = "dictionary";
      rep["entries"] = table.size();
      rep["coverage"] = table.coverage();
      ojson decrypted = ojson::array();
      std::size_t index = 0, failed = 0;
      for (const auto& r : cap) {
        if (r.frame.ftype != FrameType::Data || !r.frame.is_wep()) continue;
        try {
          Bytes p = attacks::dictionary_decrypt(table, r.frame.wep());
          decrypted.push_back({{"index", index}, {"iv", detail::iv_hex(r.frame.wep().iv)}, {"plaintext_hex", to_hex(p)}});
        } catch (const Error&) {
          ++failed;
        }
        ++index;
      }
      rep["decrypted"] = decrypted;
      rep["undecrypted"] = failed;
      run.emit_json(rep);
    });
  }

  // bitflip
  {
    auto o = std::make_shared<Common>();
    auto index = std::make_shared<std::size_t>(0);
    auto delta = std::make_shared<std::string>();
    auto at = std::make_shared<std::size_t>(0);
    auto key = std::make_shared<std::string>();
    auto* c = atk->add_subcommand("bitflip", "Modify a sealed frame and patch its ICV");
    add_common(c, *o, false);
    c->add_option("--index", *index, "which WEP data frame of the capture");
    c->add_option("--delta", *delta, "hex octets XORed into the payload")->required();
    c->add_option("--at", *at, "payload offset of the delta");
    c->add_option("--key", *key, "check the forgery against this key (hex)");
    run.on(c, [&run, o, index, delta, at, key] {
      if (o->capture.empty()) throw Error(ErrorKind::Usage, "--capture is required");
      Capture cap = run.load_capture(o->capture);
      Frame f = detail::nth_wep(cap, *index);
      WepEnvelope forged = attacks::bitflip_forge(f.wep(), detail::hex_arg(*delta), *at);
      ojson rep;
      rep["attack"] = "bitflip";
      rep["original_hex"] = encode_frame_hex(f);
      f.body = forged;
      rep["forged_hex"] = encode_frame_hex(f);
      if (!key->empty()) rep["opened_hex"] = to_hex(wep_open(detail::key_arg(*key, ""), forged));
      run.emit_json(rep);
    });
  }

  // inductive
  {
    auto o = std::make_shared<Common>();
    o->scenario = "shared-key";
    auto target = std::make_shared<std::size_t>(1500);
    auto* c = atk->add_subcommand("inductive", "Extend a keystream octet by octet through the access point");
    add_common(c, *o, true);
    c->add_option("--target-len", *target, "keystream length to reach")->check(CLI::Range(5, 4096));
    run.on(c, [&run, o, target] {
      auto l = detail::live(run, o->scenario, o->capture);
      Mac bssid = detail::pick_bssid(l, o->bssid, true);
      auto oracle = detail::oracle(l);
      auto start = std::chrono::steady_clock::now();
      auto forged = attacks::forge_shared_key_auth(l.capture, oracle, bssid);
      if (!forged.associated) throw Error(ErrorKind::UpstreamAuthFailed, "could not join the network to inject");
      oracle.set_recording(false);
      attacks::InductiveOptions opts;
      opts.key_id = forged.key_id;
      opts.order_seed = detail::seed_or(run.g, 0);
      auto r = attacks::inductive_extend(oracle, forged.keystream, bssid, *target, opts);
      run.timing("inductive", start);
      ojson rep;
      rep["attack"] = "inductive";
      rep["bssid"] = bssid.str();
      rep["seed_length"] = forged.keystream.bytes.size();
      rep["keystream"] = detail::keystream_json(r.keystream);
      rep["injections"] = r.injections;
      std::size_t mx = 0;
      for (auto n : r.injections_per_byte) mx = std::max<std::size_t>(mx, n);
      rep["max_injections_per_byte"] = mx;
      rep["mean_injections_per_byte"] =
          r.injections_per_byte.empty() ? 0.0
                                        : static_cast<double>(r.injections) / static_cast<double>(r.injections_per_byte.size());
      run.emit_json(rep);
    });
  }

  // brute-force
  {
    auto o = std::make_shared<Common>();
    auto bits = std::make_shared<unsigned>(28);
    auto* c = atk->add_subcommand("brute-force", "Sweep the vendor generator's seed space");
    add_common(c, *o, false);
    c->add_option("--seed-bits", *bits, "seed bits swept, 7 per passphrase character")->check(CLI::Range(1, 28));
    run.on(c, [&run, o, bits] {
      if (o->capture.empty()) throw Error(ErrorKind::Usage, "--capture is required");
      Capture cap = run.load_capture(o->capture);
      WepEnvelope sample;
      auto opts = attacks::options_for_capture(cap, sample, *bits);
      auto start = std::chrono::steady_clock::now();
      auto r = attacks::brute_force_key(sample, opts);
      run.timing("brute-force", start);
      ojson rep;
      rep["attack"] = "brute-force";
      rep["key"] = r.key.hex();
      std::ostringstream seed;
      seed << std::hex << r.seed;
      rep["seed"] = seed.str();
      rep["passphrase"] = r.passphrase;
      rep["candidates"] = r.candidates;
      run.emit_json(rep);
    });
  }

  // replay
  {
    auto o = std::make_shared<Common>();
    o->scenario = "fixed-iv";
    o->budget = 1;
    auto index = std::make_shared<std::size_t>(0);
    auto* c = atk->add_subcommand("replay", "Have the access point decrypt a frame by re-encrypting it");
    add_common(c, *o, true);
    auto any_sender = std::make_shared<bool>(false);
    c->add_option("--index", *index, "which WEP data frame of the target network");
    c->add_flag("--any-sender", *any_sender, "also count frames sealed by stations");
    run.on(c, [&run, o, index, any_sender] {
      auto l = detail::live(run, o->scenario, o->capture);
      Mac bssid = detail::pick_bssid(l, o->bssid, false);
      auto oracle = detail::oracle(l);
      // Frames the AP relayed were sealed under its own IV source.
      const Frame& f = detail::nth_wep(l.capture, *index, bssid, !*any_sender);
      auto r = attacks::replay_decrypt(oracle, bssid, f.wep(), o->budget);
      ojson rep;
      rep["attack"] = "replay";
      rep["bssid"] = bssid.str();
      rep["iv"] = detail::iv_hex(f.wep().iv);
      rep["plaintext_hex"] = to_hex(r.plaintext);
      if (auto text = detail::printable(r.plaintext); !text.empty()) rep["plaintext_text"] = text;
      rep["injections"] = r.injections;
      run.emit_json(rep);
    });
  }

  // evil-twin
  {
    auto o = std::make_shared<Common>();
    o->scenario = "evil-twin";
    auto duration = std::make_shared<double>(0.0);
    auto* c = atk->add_subcommand("evil-twin", "Run a rogue twin access point scenario");
    add_common(c, *o, true);
    c->add_option("--duration", *duration, "override the scenario duration (s)");
    run.on(c, [&run, o, duration] {
      sim::Scenario s = shipped::scenario_or_file(o->scenario);
      if (run.g.seed) s.seed = *run.g.seed;
      auto r = attacks::evil_twin_run(s, *duration > 0.0 ? std::optional<double>(*duration) : std::nullopt);
      ojson rep;
      rep["attack"] = "evil-twin";
      rep["twin"] = r.twin_bssid.str();
      rep["upstream_target"] = r.upstream_target ? ojson(r.upstream_target->str()) : ojson(nullptr);
      rep["upstream_associated"] = r.upstream_associated;
      ojson clients = ojson::array();
      for (const auto& c : r.clients)
        clients.push_back({{"mac", c.mac.str()},
                           {"associated_to", c.associated_to ? ojson(c.associated_to->str()) : ojson(nullptr)},
                           {"on_twin", c.on_twin},
                           {"wep_fallback", c.wep_fallback},
                           {"sent_clear", c.sent_clear},
                           {"sent_sealed", c.sent_sealed}});
      rep["clients"] = clients;
      ojson icp = ojson::array();
      for (const auto& i : r.intercepts) {
        ojson e{{"t", i.t}, {"src", i.src.str()}, {"dst", i.dst.str()}, {"payload_hex", to_hex(i.payload)}};
        if (auto text = detail::printable(i.payload); !text.empty()) e["payload_text"] = text;
        e["rewritten"] = i.rewritten;
        if (i.rewritten) e["forwarded_hex"] = to_hex(i.forwarded);
        icp.push_back(e);
      }
      rep["intercepts"] = icp;
      ojson del = ojson::array();
      for (const auto& d : r.deliveries) {
        ojson e{{"t", d.t}, {"sink", d.sink.str()}, {"payload_hex", to_hex(d.payload)}, {"was_wep", d.was_wep}};
        if (auto text = detail::printable(d.payload); !text.empty()) e["payload_text"] = text;
        del.push_back(e);
      }
      rep["deliveries"] = del;
      rep["forwarded"] = r.forwarded;
      rep["dropped"] = r.dropped;
      run.emit_json(rep);
    });
  }
}

inline void register_survey(CLI::App& app, Run& run) {
  auto* sv = app.add_subcommand("survey", "Wardriving capture statistics");
  sv->require_subcommand(1);

  auto* a = sv->add_subcommand("analyze", "Classify networks in a capture and report statistics");
  auto path = std::make_shared<std::string>();
  auto defaults = std::make_shared<std::string>();
  auto match_vendor = std::make_shared<bool>(false);
  auto base = std::make_shared<std::size_t>(0);
  auto rate = std::make_shared<double>(2.0 / 3.0);
  a->add_option("capture", *path, "JSON Lines capture")->required();
  a->add_option("--defaults", *defaults, "factory-SSID table (prefix ssid per line)");
  a->add_flag("--match-vendor", *match_vendor, "factory names count only under their own vendor prefix");
  a->add_option("--estimate-base", *base, "networks detected in the estimated area; enables the estimate line");
  a->add_option("--detection-rate", *rate, "share of existing networks the tour detects");
  run.on(a, [&run, path, defaults, match_vendor, base, rate] {
    auto table = defaults->empty() ? survey::DefaultSsidTable::shipped() : survey::DefaultSsidTable::load(*defaults);
    auto report = survey::aggregate(survey::classify(run.load_capture(*path)), table, *match_vendor);
    std::optional<double> estimate;
    if (*base > 0) estimate = survey::estimate_total(*base, *rate);
    if (run.g.json) {
      ojson j = survey::report_json(report);
      if (estimate) j["estimate"] = {{"detected", *base}, {"detection_rate", *rate}, {"estimated_total", *estimate}};
      run.emit_json(j);
    } else {
      std::string text = survey::report_table(report);
      if (estimate) {
        std::ostringstream os;
        os << "estimated total           " << *estimate << " (" << *base << " detected at rate " << *rate << ")\n";
        text += os.str();
      }
      run.emit(text);
    }
  });

  auto* s = sv->add_subcommand("synth", "Synthesize a capture reproducing a survey profile");
  auto profile = std::make_shared<std::string>("bonn-cologne-2001");
  s->add_option("--profile", *profile, "shipped profile name or JSON file")->capture_default_str();
  run.on(s, [&run, profile] {
    run.emit(capture_to_string(survey::synthesize_corpus(shipped::profile_or_file(*profile), detail::seed_or(run.g, 1))));
  });
}

inline void register_detect(CLI::App& app, Run& run) {
  auto* d = app.add_subcommand("detect-demo", "Networks a moving scanner detects, per antenna gain");
  auto scenario = std::make_shared<std::string>("bonn-preliminary");
  auto gains = std::make_shared<std::vector<double>>(std::vector<double>{1.0, 5.0});
  auto sweep = std::make_shared<bool>(false);
  d->add_option("--scenario", *scenario, "shipped scenario name or JSON file")->capture_default_str();
  d->add_option("--gains", *gains, "linear antenna gains")->delimiter(',');
  d->add_flag("--sweep", *sweep, "also sweep gains 1..10");
  run.on(d, [&run, scenario, gains, sweep] {
    sim::Scenario s = shipped::scenario_or_file(*scenario);
    if (run.g.seed) s.seed = *run.g.seed;
    std::vector<double> gs = *gains;
    if (*sweep)
      for (int g = 1; g <= 10; ++g) gs.push_back(g);
    for (double g : gs)
      if (!(g >= 1.0)) throw Error(ErrorKind::Usage, "antenna gain must be at least 1");
    auto rows = detect::sweep(s, gs);
    if (run.g.json) {
      ojson j;
      j["scenario"] = s.name;
      ojson arr = ojson::array();
      for (const auto& r : rows) {
        ojson nets = ojson::array();
        for (const auto& m : r.networks) nets.push_back(m.str());
        arr.push_back({{"gain", r.gain}, {"detected", r.detected}, {"known", r.known}, {"networks", nets}});
      }
      j["rows"] = arr;
      run.emit_json(j);
    } else {
      std::ostringstream os;
      os << "gain    detected\n";
      for (const auto& r : rows) {
        std::ostringstream g;
        g << r.gain;
        os << g.str() << std::string(g.str().size() < 8 ? 8 - g.str().size() : 1, ' ') << r.detected << " of " << r.known
           << "\n";
      }
      run.emit(os.str());
    }
  });
}

/// argv without the program name. Returns the process exit code.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"WEP/802.11b simulator, attack toolkit, and wardriving survey analyzer", "wavelab"};
  app.require_subcommand(1);
  app.fallthrough();
  Run run(out, err);

  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed (falls back to WAVELAB_SEED)")->envname("WAVELAB_SEED");
  app.add_option("--out", run.g.out, "write the report here instead of stdout");
  app.add_flag("--strict", run.g.strict, "abort on the first malformed capture line");
  app.add_flag("--json", run.g.json, "machine-readable output");

  register_sim(app, run);
  register_attacks(app, run);
  register_survey(app, run);
  register_detect(app, run);
  for (auto* sub : app.get_subcommands([](CLI::App*) { return true; })) {
    sub->fallthrough();
    for (auto* inner : sub->get_subcommands([](CLI::App*) { return true; })) inner->fallthrough();
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (seed_opt->count() > 0) run.g.seed = seed;
    run.run_selected();
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << error_json("Usage", e.what()) << "\n" << app.help();
    return kExitUsage;
  } catch (const Error& e) {
    err << error_json(kind_name(e.kind()), e.detail()) << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << error_json("Internal", e.what()) << "\n";
    return kExitDomain;
  }
  return kExitOk;
}

inline int run_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return dispatch(args, std::cout, std::cerr);
}

}  // namespace wavelab::cli
