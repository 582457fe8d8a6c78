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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "bwlab/adversary.hpp"
#include "bwlab/brickwork.hpp"
#include "bwlab/obfuscate.hpp"
#include "bwlab/protocol.hpp"

using namespace bwlab;

namespace {

CompileParams small_params(uint64_t seed = 7) {
  CompileParams prm;
  prm.N = 8;
  prm.K = 4;
  prm.m = 16;
  prm.p = 2;
  prm.W = 0;
  prm.seed = seed;
  return prm;
}

LogicalCircuit circ1(Gate g) {
  LogicalCircuit c;
  c.q = 1;
  c.ops = {CircuitOp::single(0, g)};
  return c;
}

ObfuscatedProgram make_prog(const LogicalCircuit& c, const CompileParams& prm) {
  return obfuscate(compile(c, prm), prm.seed);
}

ServerId a(int i) { return {Side::A, i}; }
ServerId b(int i) { return {Side::B, i}; }

}  // namespace

TEST_CASE("collusion views pool transcripts in round order") {
  const ObfuscatedProgram prog = make_prog(circ1(Gate::H), small_params());
  const RunResult rr = run(prog, 99);

  const CollusionView view = collude(rr, {b(1), a(2)});
  CHECK(view.servers == std::vector<ServerId>{a(2), b(1)});
  CHECK(!view.has_measuring);
  CHECK(view.reported_bits.empty());
  int last_round = 0;
  size_t pair_entries = 0;
  for (const ViewEntry& ve : view.entries) {
    CHECK(ve.entry.round >= last_round);
    last_round = ve.entry.round;
    if (ve.entry.kind == TranscriptEntry::Kind::Pair) {
      ++pair_entries;
      CHECK(ve.server == "A2");  // relay servers never execute pairs
    }
  }
  CHECK(pair_entries > 0);

  const CollusionView meas = collude(rr, {a(8)});
  CHECK(meas.has_measuring);
  CHECK(meas.reported_bits == rr.raw_bits);

  CHECK_THROWS_AS(collude(rr, {}), std::invalid_argument);
  CHECK_THROWS_AS(collude(rr, {a(1), a(1)}), std::invalid_argument);
  CHECK_THROWS_AS(collude(rr, {a(9)}), std::invalid_argument);
}

TEST_CASE("observed mask positions follow the executor rotation") {
  const Shape s = shape_for(circ1(Gate::I), small_params());
  using P = std::vector<std::pair<int, int>>;
  CHECK(observed_mask_positions(s, {a(8)}) == P{{3, 0}, {7, 0}});
  CHECK(observed_mask_positions(s, {a(7)}) == P{{3, 1}, {7, 1}});
  CHECK(observed_mask_positions(s, {a(7), a(8)}) == P{{3, 0}, {3, 1}, {7, 0}, {7, 1}});
  CHECK(observed_mask_positions(s, {a(1)}) == P{{0, 1}, {4, 1}});
  CHECK(observed_mask_positions(s, {b(1), b(5)}).empty());  // relays execute nothing

  CHECK(colluders_for_final_rounds(s, 1) == std::vector<ServerId>{a(8)});
  CHECK(colluders_for_final_rounds(s, 2) == std::vector<ServerId>{a(7), a(8)});
  CHECK(colluders_for_final_rounds(s, 4) == std::vector<ServerId>{a(5), a(6), a(7), a(8)});
  CHECK_THROWS_AS(colluders_for_final_rounds(s, 0), std::invalid_argument);
  CHECK_THROWS_AS(colluders_for_final_rounds(s, 9), std::invalid_argument);

  CHECK(includes_measuring(s, {a(8)}));
  CHECK(includes_measuring(s, {a(1), a(8)}));
  CHECK(!includes_measuring(s, {a(1), b(8)}));
}

TEST_CASE("mask cells carry stream, block, and written position") {
  const ObfuscatedProgram prog = make_prog(circ1(Gate::H), small_params(3));
  const RunResult rr = run(prog, 5);
  const CollusionView view = collude(rr, colluders_for_final_rounds(rr.shape, 2));
  const std::vector<MaskCell> cells = view_mask_cells(view, prog.pub);

  // 2 rows x 4 streams x (2 blocks x 2 positions).
  CHECK(cells.size() == 32u);
  std::set<std::tuple<int, int, int, int>> seen;
  for (const MaskCell& c : cells) {
    CHECK((c.row == 0 || c.row == 1));
    CHECK(c.sid >= 0);
    CHECK(c.sid < 4);
    CHECK((c.block == 3 || c.block == 7));
    CHECK((c.wpos == 0 || c.wpos == 1));
    CHECK((c.pair == PairSlot::HI || c.pair == PairSlot::HT));
    seen.insert({c.row, c.sid, c.block, c.wpos});
  }
  CHECK(seen.size() == 32u);  // no duplicates: each cell observed once
  CHECK(std::is_sorted(cells.begin(), cells.end(), [](const MaskCell& x, const MaskCell& y) {
    return std::tie(x.row, x.block, x.wpos, x.sid) < std::tie(y.row, y.block, y.wpos, y.sid);
  }));

  // Per (block, wpos): the real stream and exactly one dummy can look alike;
  // across the four streams both pair values appear.
  for (int row : {0, 1})
    for (int block : {3, 7})
      for (int wpos : {0, 1}) {
        int hi = 0;
        for (const MaskCell& c : cells)
          if (c.row == row && c.block == block && c.wpos == wpos && c.pair == PairSlot::HI) ++hi;
        CHECK(hi == 2);  // two-pair words over {HI,HT}: always two HI per column
      }
}

TEST_CASE("view features are deterministic and scope-sensitive") {
  const ObfuscatedProgram prog = make_prog(circ1(Gate::X), small_params(11));
  const RunResult rr = run(prog, 77);
  const CollusionView view = collude(rr, colluders_for_final_rounds(rr.shape, 2));

  const std::string full = view_feature(view, prog.pub, ViewScope::Full);
  CHECK(full == view_feature(view, prog.pub, ViewScope::Full));
  CHECK(full.find("r0[") == 0);
  CHECK(full.find("r1[") != std::string::npos);
  CHECK(full.find('-') == std::string::npos);  // measuring server present: bits reported

  const std::string gw = view_feature(view, prog.pub, ViewScope::GateWindowsOnly);
  CHECK(gw.size() == 17u);
  CHECK(gw[0] == 'g');

  const CollusionView blind_view = collude(rr, {a(1)});
  const std::string nf = view_feature(blind_view, prog.pub, ViewScope::Full);
  CHECK(nf.find('-') != std::string::npos);  // no reported bits
}

TEST_CASE("gate-window streams are identical for equal-shape programs") {
  const CompileParams prm = small_params(123);
  const auto ids = colluders_for_final_rounds(shape_for(circ1(Gate::I), prm), 2);
  auto gw_feature = [&](Gate g) {
    const ObfuscatedProgram prog = make_prog(circ1(g), prm);
    const RunResult rr = run(prog, 456);
    return view_feature(collude(rr, ids), prog.pub, ViewScope::GateWindowsOnly);
  };
  // Same seed, different computation: the gate-window stream is byte-equal.
  CHECK(gw_feature(Gate::I) == gw_feature(Gate::X));
  CHECK(gw_feature(Gate::I) == gw_feature(Gate::H));
}

TEST_CASE("the empirical guesser follows rehearsal majorities") {
  MLAdversary adv;
  for (int i = 0; i < 5; ++i) adv.observe(0, "alpha");
  adv.observe(1, "alpha");
  for (int i = 0; i < 3; ++i) adv.observe(1, "beta");
  RandomStream tie(1);
  CHECK(adv.guess("alpha", tie) == 0);
  CHECK(adv.guess("beta", tie) == 1);
  CHECK(adv.distinct_features(0) == 1u);
  CHECK(adv.distinct_features(1) == 2u);

  // Unseen features fall back to the tie coin: both answers occur.
  std::set<int> answers;
  for (int i = 0; i < 64; ++i) answers.insert(adv.guess("gamma", tie));
  CHECK(answers == std::set<int>{0, 1});
}

TEST_CASE("exact view distance: frozen small-shape constants") {
  const CompileParams prm = small_params(2);
  const LogicalCircuit c0 = circ1(Gate::I);
  const LogicalCircuit c1 = circ1(Gate::X);
  const Shape s = shape_for(c0, prm);

  // Measuring server alone: two half-observed blocks correlate through the
  // persistent real stream id. 4/21, exact.
  const ExactTvResult one = exact_view_tv(c0, c1, prm, colluders_for_final_rounds(s, 1));
  CHECK(one.gate_windows_invariant);
  CHECK(one.tv == doctest::Approx(4.0 / 21.0).epsilon(1e-9));

  // Final two executors: two fully observed blocks. 4/7, exact.
  const ExactTvResult two = exact_view_tv(c0, c1, prm, colluders_for_final_rounds(s, 2));
  CHECK(two.tv == doctest::Approx(4.0 / 7.0).epsilon(1e-9));
  CHECK(two.enumerated > 0);

  // Final four executors: four fully observed blocks. 34/35, exact.
  const ExactTvResult four = exact_view_tv(c0, c1, prm, colluders_for_final_rounds(s, 4));
  CHECK(four.tv == doctest::Approx(34.0 / 35.0).epsilon(1e-9));

  // Without the measuring server the mask stage is computation-independent.
  CHECK(exact_view_tv(c0, c1, prm, {a(1), a(2)}).tv == doctest::Approx(0.0));
  CHECK(exact_view_tv(c0, c1, prm, {b(1), b(2), b(3)}).tv == doctest::Approx(0.0));

  // Gate windows alone never separate the programs.
  const ExactTvResult gw =
      exact_view_tv(c0, c1, prm, colluders_for_final_rounds(s, 2), ViewScope::GateWindowsOnly);
  CHECK(gw.gate_windows_invariant);
  CHECK(gw.tv == doctest::Approx(0.0));

  // Identical circuits: distance zero even with deep coverage.
  CHECK(exact_view_tv(c0, c0, prm, colluders_for_final_rounds(s, 2)).tv == doctest::Approx(0.0));

  // All executors: the enumeration cap trips.
  std::vector<ServerId> all_a;
  for (int i = 1; i <= 8; ++i) all_a.push_back(a(i));
  CHECK_THROWS_AS(exact_view_tv(c0, c1, prm, all_a), std::length_error);

  // Shape mismatch is rejected.
  LogicalCircuit wide;
  wide.q = 3;
  CHECK_THROWS_AS(exact_view_tv(c0, wide, prm, {a(8)}), std::invalid_argument);
}

TEST_CASE("distinguishing game: calibration, bounded leak, and learning") {
  const LogicalCircuit c0 = circ1(Gate::I);
  const LogicalCircuit c1 = circ1(Gate::X);
  GameConfig cfg;
  cfg.params = small_params(0);
  cfg.rehearsal_runs = 400;
  cfg.trials = 800;
  cfg.seed = 9;
  const Shape s = shape_for(c0, cfg.params);
  const double sigma = std::sqrt(0.25 / cfg.trials);

  // Identical circuits: advantage is statistical noise.
  const GameResult calib = run_distinguishing_game(c0, c0, cfg, colluders_for_final_rounds(s, 2));
  CHECK(std::abs(calib.advantage) <= 3.0 * sigma);

  // Two-server collusion with the measuring server: the learner approaches,
  // and never beats, half the exact view distance (here 4/7).
  const GameResult leak = run_distinguishing_game(c0, c1, cfg, colluders_for_final_rounds(s, 2));
  CHECK(leak.advantage <= 2.0 / 7.0 + 3.0 * sigma);
  CHECK(leak.advantage >= 0.15);  // well above noise: the bounded leak is real
  CHECK(leak.features_0 > 0);
  CHECK(leak.features_1 > 0);

  // The measuring server alone: bounded by half of 4/21.
  const GameResult lone = run_distinguishing_game(c0, c1, cfg, {a(8)});
  CHECK(lone.advantage <= 2.0 / 21.0 + 3.0 * sigma);
  CHECK(lone.advantage >= 0.02);

  // No measuring server: blind, regardless of how many executors pool.
  const GameResult blind = run_distinguishing_game(c0, c1, cfg, {a(1), a(2), a(3)});
  CHECK(std::abs(blind.advantage) <= 3.0 * sigma);

  // Gate windows only: blind by construction.
  GameConfig gw_cfg = cfg;
  gw_cfg.scope = ViewScope::GateWindowsOnly;
  const GameResult gw = run_distinguishing_game(c0, c1, gw_cfg, colluders_for_final_rounds(s, 2));
  CHECK(std::abs(gw.advantage) <= 3.0 * sigma);

  // Mismatched shapes are rejected.
  LogicalCircuit wide;
  wide.q = 3;
  CHECK_THROWS_AS(run_distinguishing_game(c0, wide, cfg, {a(8)}), std::invalid_argument);
}

TEST_CASE("the game is deterministic in its seed") {
  const LogicalCircuit c0 = circ1(Gate::I);
  const LogicalCircuit c1 = circ1(Gate::X);
  GameConfig cfg;
  cfg.params = small_params(0);
  cfg.rehearsal_runs = 60;
  cfg.trials = 120;
  cfg.seed = 4;
  const Shape s = shape_for(c0, cfg.params);
  const GameResult g1 = run_distinguishing_game(c0, c1, cfg, colluders_for_final_rounds(s, 2));
  const GameResult g2 = run_distinguishing_game(c0, c1, cfg, colluders_for_final_rounds(s, 2));
  CHECK(g1.successes == g2.successes);
  CHECK(g1.features_0 == g2.features_0);
}

TEST_CASE("threshold audit: every template stays within its bound") {
  const LogicalCircuit c0 = circ1(Gate::I);
  const LogicalCircuit c1 = circ1(Gate::X);
  GameConfig cfg;
  cfg.params = small_params(0);
  cfg.rehearsal_runs = 150;
  cfg.trials = 400;
  cfg.seed = 11;

  const AuditReport rep = audit_threshold(c0, c1, cfg);
  CHECK(rep.consistent);
  CHECK(rep.budget == 4);
  REQUIRE(rep.cases.size() == 6u);

  auto find_case = [&](const std::string& name) -> const AuditCase& {
    for (const AuditCase& c : rep.cases)
      if (c.name == name) return c;
    throw std::runtime_error("missing audit case: " + name);
  };

  const AuditCase& final4 = find_case("final-consecutive");
  CHECK(final4.colluders == std::vector<std::string>{"A5", "A6", "A7", "A8"});
  CHECK(final4.exact_available);
  CHECK(final4.exact_tv == doctest::Approx(34.0 / 35.0).epsilon(1e-9));
  CHECK(final4.verdict.find("bounded") == 0);

  const AuditCase& lead = find_case("leading-consecutive");
  CHECK(lead.exact_available);
  CHECK(lead.exact_tv == doctest::Approx(0.0));
  CHECK(lead.verdict.find("blind") == 0);

  const AuditCase& relay = find_case("relay-only");
  CHECK(relay.exact_tv == doctest::Approx(0.0));

  const AuditCase& all = find_case("all-servers");
  CHECK(all.colluders.size() == 16u);
  CHECK(!all.exact_available);
  CHECK(all.game.advantage > 0.4);  // full collusion reads the computation

  CHECK(rep.summary.find("within") != std::string::npos);

  const nlohmann::json j = audit_to_json(rep);
  CHECK(j.at("consistent").get<bool>());
  CHECK(j.at("cases").size() == 6u);
  CHECK(j.at("cases")[0].contains("verdict"));
}
