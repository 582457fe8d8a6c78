// Copyright 2026 The bwlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line laboratory for the blind-delegation pipeline: compile circuits
// into computation-independent instruction streams, emulate delegated runs,
// pool colluder views, and measure blindness empirically and exactly.
//
// Exit codes: 0 success, 2 invalid input or refused request, 3 a measured
// property violation (audit inconsistency).

#include <CLI11.hpp>
#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "bwlab/adversary.hpp"
#include "bwlab/brickwork.hpp"
#include "bwlab/logical_circuit.hpp"
#include "bwlab/obfuscate.hpp"
#include "bwlab/protocol.hpp"
#include "bwlab/version.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitViolation = 3;

class RefusedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json read_json(const std::string& path) { return json::parse(read_text(path)); }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << text;
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

/// The attack-side commands model what servers can pool, so client-side
/// secrets must never reach them: refuse paths that look like secret
/// artifacts and any payload that declares itself one.
void refuse_secret_material(const std::string& path, const json& payload) {
  std::string base = std::filesystem::path(path).filename().string();
  std::transform(base.begin(), base.end(), base.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (base.find("secret") != std::string::npos)
    throw RefusedError("refusing to read secret material: " + path);
  if (payload.is_object() && payload.contains("format") &&
      payload.at("format") == std::string(bwlab::kSecretFormat))
    throw RefusedError("refusing to read secret material: " + path +
                       " declares itself client-side secret data");
}

struct ParamFlags {
  int N = 8;
  int K = 4;
  int m = 16;
  int p = 2;
  int W = 0;
  uint64_t seed = 1;

  void attach(CLI::App* cmd) {
    cmd->add_option("-N,--pairs", N, "executor/forwarder pairs")->capture_default_str();
    cmd->add_option("-K,--budget", K, "colluder budget the layout is hardened against")
        ->capture_default_str();
    cmd->add_option("-m,--column-gates", m, "physical gates per row per column block")
        ->capture_default_str();
    cmd->add_option("-p,--columns", p, "column blocks")->capture_default_str();
    cmd->add_option("-W,--window", W, "gate-window width in pairs (0 derives floor(K/2))")
        ->capture_default_str();
    cmd->add_option("-s,--seed", seed, "master seed for all secret draws")->capture_default_str();
  }

  bwlab::CompileParams params() const { return {N, K, m, p, W, seed}; }
};

std::vector<bwlab::ServerId> parse_colluders(const std::string& spec) {
  std::vector<bwlab::ServerId> ids;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) ids.push_back(bwlab::server_from_name(item));
  }
  if (ids.empty()) throw std::invalid_argument("colluder list is empty");
  return ids;
}

bwlab::ViewScope parse_scope(const std::string& s) {
  if (s == "full") return bwlab::ViewScope::Full;
  if (s == "gate-windows") return bwlab::ViewScope::GateWindowsOnly;
  throw std::invalid_argument("scope must be 'full' or 'gate-windows'");
}

json shape_summary(const bwlab::Shape& s) {
  json j = bwlab::shape_to_json(s);
  j["total_rounds"] = bwlab::total_rounds(s);
  j["measuring_server"] = bwlab::server_name(bwlab::measuring_server(s));
  return j;
}

int cmd_compile(const std::string& circuit_path, const ParamFlags& flags,
                const std::string& public_path, const std::string& secret_path) {
  const bwlab::LogicalCircuit c = bwlab::circuit_from_json(read_json(circuit_path));
  bwlab::validate_circuit(c);
  const bwlab::CompiledCircuit cc = bwlab::compile(c, flags.params());
  const bwlab::ObfuscatedProgram prog = bwlab::obfuscate(cc, flags.seed);
  write_json(public_path, bwlab::public_to_json(prog.pub));
  write_json(secret_path, bwlab::secret_to_json(prog));
  json out;
  out["shape"] = shape_summary(prog.pub.shape);
  out["windows"] = prog.pub.windows.size();
  out["public"] = public_path;
  out["secret"] = secret_path;
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_run(const std::string& public_path, const std::string& secret_path, uint64_t run_seed,
            const std::string& out_path, const std::string& transcripts_path) {
  const bwlab::PublicProgram pub = bwlab::public_from_json(read_json(public_path));
  const bwlab::ObfuscatedProgram prog = bwlab::attach_secrets(pub, read_json(secret_path));
  const bwlab::RunResult rr = bwlab::run(prog, run_seed);
  const bwlab::DecodedOutput dec = bwlab::decode(prog, rr.raw_bits);
  write_json(out_path, bwlab::run_to_json(rr, dec, run_seed));
  write_text(transcripts_path, bwlab::transcripts_to_jsonl(rr));
  json out;
  out["raw_bits"] = rr.raw_bits;
  out["logical"] = dec.logical;
  out["measuring"] = bwlab::server_name(rr.measuring);
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_attack(const std::string& public_path, const std::string& run_path,
               const std::string& transcripts_path, const std::string& colluders,
               const std::string& scope_name, const std::string& out_path) {
  const json pub_json = read_json(public_path);
  refuse_secret_material(public_path, pub_json);
  const json run_json = read_json(run_path);
  refuse_secret_material(run_path, run_json);
  const std::string jsonl = read_text(transcripts_path);
  refuse_secret_material(transcripts_path, json::object());

  const bwlab::PublicProgram pub = bwlab::public_from_json(pub_json);
  const bwlab::RunResult rr = bwlab::run_from_artifacts(run_json, jsonl);
  const std::vector<bwlab::ServerId> ids = parse_colluders(colluders);
  if (static_cast<int>(ids.size()) > pub.shape.K)
    throw RefusedError("colluder set of " + std::to_string(ids.size()) +
                       " exceeds the budget K=" + std::to_string(pub.shape.K) +
                       " this program is hardened against");
  const bwlab::ViewScope scope = parse_scope(scope_name);
  const bwlab::CollusionView view = bwlab::collude(rr, ids);

  json out;
  out["format"] = "bwlab-view";
  out["version"] = std::string(bwlab::kVersion);
  json names = json::array();
  for (bwlab::ServerId id : view.servers) names.push_back(bwlab::server_name(id));
  out["colluders"] = std::move(names);
  out["scope"] = scope_name;
  out["has_measuring"] = view.has_measuring;
  out["reported_bits"] = view.reported_bits;
  out["pooled_entries"] = view.entries.size();
  out["feature"] = bwlab::view_feature(view, pub, scope);
  json positions = json::array();
  for (auto [block, wpos] : bwlab::observed_mask_positions(pub.shape, ids))
    positions.push_back({block, wpos});
  out["observed_mask_positions"] = std::move(positions);
  write_json(out_path, out);
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_game(const std::string& c0_path, const std::string& c1_path, const ParamFlags& flags,
             const std::string& colluders, int final_rounds, int rehearsals, int trials,
             uint64_t game_seed, const std::string& scope_name, const std::string& out_path) {
  const bwlab::LogicalCircuit c0 = bwlab::circuit_from_json(read_json(c0_path));
  const bwlab::LogicalCircuit c1 = bwlab::circuit_from_json(read_json(c1_path));
  bwlab::GameConfig cfg;
  cfg.params = flags.params();
  cfg.rehearsal_runs = rehearsals;
  cfg.trials = trials;
  cfg.seed = game_seed;
  cfg.scope = parse_scope(scope_name);
  const bwlab::Shape s = bwlab::shape_for(c0, cfg.params);
  std::vector<bwlab::ServerId> ids;
  if (!colluders.empty())
    ids = parse_colluders(colluders);
  else
    ids = bwlab::colluders_for_final_rounds(s, final_rounds);

  const bwlab::GameResult g = bwlab::run_distinguishing_game(c0, c1, cfg, ids);
  json out = bwlab::game_to_json(g);
  json names = json::array();
  for (bwlab::ServerId id : ids) names.push_back(bwlab::server_name(id));
  out["colluders"] = std::move(names);
  out["scope"] = scope_name;
  out["shape"] = shape_summary(s);
  if (!out_path.empty()) write_json(out_path, out);
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_audit(const std::string& c0_path, const std::string& c1_path, const ParamFlags& flags,
              int rehearsals, int trials, uint64_t game_seed, const std::string& out_path) {
  const bwlab::LogicalCircuit c0 = bwlab::circuit_from_json(read_json(c0_path));
  const bwlab::LogicalCircuit c1 = bwlab::circuit_from_json(read_json(c1_path));
  bwlab::GameConfig cfg;
  cfg.params = flags.params();
  cfg.rehearsal_runs = rehearsals;
  cfg.trials = trials;
  cfg.seed = game_seed;
  const bwlab::AuditReport rep = bwlab::audit_threshold(c0, c1, cfg);
  const json out = bwlab::audit_to_json(rep);
  if (!out_path.empty()) write_json(out_path, out);
  std::cout << out.dump(2) << "\n";
  if (!rep.consistent) {
    std::cerr << "audit violation: " << rep.summary << "\n";
    return kExitViolation;
  }
  return kExitOk;
}

int cmd_tv(const std::string& c0_path, const std::string& c1_path, const ParamFlags& flags,
           const std::string& colluders, int final_rounds, const std::string& scope_name) {
  const bwlab::LogicalCircuit c0 = bwlab::circuit_from_json(read_json(c0_path));
  const bwlab::LogicalCircuit c1 = bwlab::circuit_from_json(read_json(c1_path));
  const bwlab::CompileParams prm = flags.params();
  const bwlab::Shape s = bwlab::shape_for(c0, prm);
  std::vector<bwlab::ServerId> ids;
  if (!colluders.empty())
    ids = parse_colluders(colluders);
  else
    ids = bwlab::colluders_for_final_rounds(s, final_rounds);
  const bwlab::ExactTvResult r = bwlab::exact_view_tv(c0, c1, prm, ids, parse_scope(scope_name));
  json out;
  out["tv"] = r.tv;
  out["gate_windows_invariant"] = r.gate_windows_invariant;
  out["enumerated"] = r.enumerated;
  out["max_advantage"] = r.tv / 2.0;
  json names = json::array();
  for (bwlab::ServerId id : ids) names.push_back(bwlab::server_name(id));
  out["colluders"] = std::move(names);
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_report(const std::string& public_path, const std::string& out_path) {
  const json pub_json = read_json(public_path);
  refuse_secret_material(public_path, pub_json);
  const bwlab::PublicProgram pub = bwlab::public_from_json(pub_json);
  const bwlab::OverheadReport r = bwlab::overhead_report(pub);
  json out;
  out["shape"] = shape_summary(pub.shape);
  out["windows"] = r.windows;
  out["tracks"] = r.tracks;
  out["gate_window_real_pairs"] = r.gate_window_real_pairs;
  out["gate_window_dummy_pairs"] = r.gate_window_dummy_pairs;
  out["mask_pairs_total"] = r.mask_pairs_total;
  out["total_pairs"] = r.total_pairs;
  out["total_physical_gates"] = r.total_physical_gates;
  if (!out_path.empty()) write_json(out_path, out);
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int cmd_leak_time(int colluders, double seconds_per_round) {
  json out;
  out["colluders"] = colluders;
  out["seconds_per_round"] = seconds_per_round;
  out["exposure_seconds"] = bwlab::estimate_leak_time(colluders, seconds_per_round);
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bwlab: a desk-scale laboratory for blind delegated computation"};
  app.set_version_flag("--version", std::string(bwlab::kVersion));
  app.require_subcommand(1);

  // compile
  auto* compile_cmd =
      app.add_subcommand("compile", "compile a circuit into public/secret artifacts");
  std::string circuit_path, public_path = "public.json", secret_path = "secret.json";
  ParamFlags compile_flags;
  compile_cmd->add_option("--circuit", circuit_path, "logical circuit json")->required();
  compile_flags.attach(compile_cmd);
  compile_cmd->add_option("--public", public_path, "output: public program")
      ->capture_default_str();
  compile_cmd->add_option("--secret", secret_path, "output: client-side secrets")
      ->capture_default_str();

  // run
  auto* run_cmd = app.add_subcommand("run", "emulate one delegated execution");
  std::string run_public, run_secret, run_out = "run.json", run_transcripts = "transcripts.jsonl";
  uint64_t run_seed = 1;
  run_cmd->add_option("--public", run_public, "public program json")->required();
  run_cmd->add_option("--secret", run_secret, "client-side secret json")->required();
  run_cmd->add_option("--run-seed", run_seed, "seed for the measurement draw")
      ->capture_default_str();
  run_cmd->add_option("--out", run_out, "output: run artifact")->capture_default_str();
  run_cmd->add_option("--transcripts", run_transcripts, "output: per-server transcripts")
      ->capture_default_str();

  // attack
  auto* attack_cmd =
      app.add_subcommand("attack", "pool colluder transcripts into a distinguishing view");
  std::string atk_public, atk_run, atk_transcripts, atk_colluders, atk_out = "view.json";
  std::string atk_scope = "full";
  attack_cmd->add_option("--public", atk_public, "public program json")->required();
  attack_cmd->add_option("--run", atk_run, "run artifact json")->required();
  attack_cmd->add_option("--transcripts", atk_transcripts, "per-server transcript jsonl")
      ->required();
  attack_cmd->add_option("--colluders", atk_colluders, "comma-separated server names (e.g. A7,A8)")
      ->required();
  attack_cmd->add_option("--scope", atk_scope, "view scope: full or gate-windows")
      ->capture_default_str();
  attack_cmd->add_option("--out", atk_out, "output: pooled view")->capture_default_str();

  // game
  auto* game_cmd = app.add_subcommand("game", "play the rehearsed distinguishing game");
  std::string game_c0, game_c1, game_colluders, game_scope = "full", game_out;
  ParamFlags game_flags;
  int game_final = 2, game_rehearsals = 2000, game_trials = 10000;
  uint64_t game_seed = 1;
  game_cmd->add_option("--circuit0", game_c0, "first circuit json")->required();
  game_cmd->add_option("--circuit1", game_c1, "second circuit json")->required();
  game_flags.attach(game_cmd);
  game_cmd->add_option("--colluders", game_colluders, "explicit colluder list");
  game_cmd->add_option("--final-rounds", game_final,
                       "collude the executors of the last k rounds (when no explicit list)")
      ->capture_default_str();
  game_cmd->add_option("--rehearsals", game_rehearsals, "rehearsal runs per arm")
      ->capture_default_str();
  game_cmd->add_option("--trials", game_trials, "challenge trials")->capture_default_str();
  game_cmd->add_option("--game-seed", game_seed, "seed for the game harness")
      ->capture_default_str();
  game_cmd->add_option("--scope", game_scope, "view scope: full or gate-windows")
      ->capture_default_str();
  game_cmd->add_option("--out", game_out, "optional output json");

  // audit
  auto* audit_cmd =
      app.add_subcommand("audit", "check colluder templates against their exact bounds");
  std::string audit_c0, audit_c1, audit_out;
  ParamFlags audit_flags;
  int audit_rehearsals = 600, audit_trials = 2000;
  uint64_t audit_seed = 1;
  audit_cmd->add_option("--circuit0", audit_c0, "first circuit json")->required();
  audit_cmd->add_option("--circuit1", audit_c1, "second circuit json")->required();
  audit_flags.attach(audit_cmd);
  audit_cmd->add_option("--rehearsals", audit_rehearsals, "rehearsal runs per arm")
      ->capture_default_str();
  audit_cmd->add_option("--trials", audit_trials, "challenge trials per template")
      ->capture_default_str();
  audit_cmd->add_option("--game-seed", audit_seed, "seed for the game harness")
      ->capture_default_str();
  audit_cmd->add_option("--out", audit_out, "optional output json");

  // tv
  auto* tv_cmd = app.add_subcommand("tv", "exact view distance between two circuits");
  std::string tv_c0, tv_c1, tv_colluders, tv_scope = "full";
  ParamFlags tv_flags;
  int tv_final = 2;
  tv_cmd->add_option("--circuit0", tv_c0, "first circuit json")->required();
  tv_cmd->add_option("--circuit1", tv_c1, "second circuit json")->required();
  tv_flags.attach(tv_cmd);
  tv_cmd->add_option("--colluders", tv_colluders, "explicit colluder list");
  tv_cmd->add_option("--final-rounds", tv_final,
                     "collude the executors of the last k rounds (when no explicit list)")
      ->capture_default_str();
  tv_cmd->add_option("--scope", tv_scope, "view scope: full or gate-windows")
      ->capture_default_str();

  // report
  auto* report_cmd = app.add_subcommand("report", "overhead accounting from a public program");
  std::string report_public, report_out;
  report_cmd->add_option("--public", report_public, "public program json")->required();
  report_cmd->add_option("--out", report_out, "optional output json");

  // leak-time
  auto* leak_cmd = app.add_subcommand("leak-time", "exposure of a replayed round stream");
  int leak_k = 0;
  double leak_spr = 1.0;
  leak_cmd->add_option("-K,--colluders", leak_k, "colluder count")->required();
  leak_cmd->add_option("-t,--seconds-per-round", leak_spr, "seconds per round")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (compile_cmd->parsed())
      return cmd_compile(circuit_path, compile_flags, public_path, secret_path);
    if (run_cmd->parsed()) return cmd_run(run_public, run_secret, run_seed, run_out, run_transcripts);
    if (attack_cmd->parsed())
      return cmd_attack(atk_public, atk_run, atk_transcripts, atk_colluders, atk_scope, atk_out);
    if (game_cmd->parsed())
      return cmd_game(game_c0, game_c1, game_flags, game_colluders, game_final, game_rehearsals,
                      game_trials, game_seed, game_scope, game_out);
    if (audit_cmd->parsed())
      return cmd_audit(audit_c0, audit_c1, audit_flags, audit_rehearsals, audit_trials, audit_seed,
                       audit_out);
    if (tv_cmd->parsed()) return cmd_tv(tv_c0, tv_c1, tv_flags, tv_colluders, tv_final, tv_scope);
    if (report_cmd->parsed()) return cmd_report(report_public, report_out);
    if (leak_cmd->parsed()) return cmd_leak_time(leak_k, leak_spr);
    std::cerr << "no subcommand\n";
    return kExitInvalid;
  } catch (const RefusedError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const bwlab::CompileError& e) {
    std::cerr << "compile error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::length_error& e) {
    std::cerr << "not enumerable: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}
