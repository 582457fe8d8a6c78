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

#pragma once

#include <cstdint>
#include <json.hpp>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bwlab/logical_circuit.hpp"
#include "bwlab/protocol.hpp"

namespace bwlab {

/// What the pooled colluders get to look at. GateWindowsOnly drops the mask
/// stage and the reported bits; the remaining stream is provably identical in
/// distribution across equal-shape programs.
enum class ViewScope : uint8_t { Full, GateWindowsOnly };

struct ViewEntry {
  std::string server;
  TranscriptEntry entry;
};

/// Pooled knowledge of a colluding subset: their transcripts merged in round
/// order (canonical server order within a round) plus the reported bits when
/// the measuring server is in the subset.
struct CollusionView {
  std::vector<ServerId> servers;  // canonical order: A side first, index ascending
  bool has_measuring = false;
  std::string reported_bits;      // empty unless has_measuring
  std::vector<ViewEntry> entries;
};

/// Pre: ids nonempty, distinct, indices within 1..N. No budget check here;
/// enforcing the K budget is the caller's policy (the CLI refuses oversized
/// sets, the audit uses oversized sets on purpose to show the threshold).
CollusionView collude(const RunResult& rr, const std::vector<ServerId>& ids);

/// One mask-stage observation: written position wpos of block `block` on
/// stream `sid` of row `row`.
struct MaskCell {
  int row = 0;
  int sid = 0;
  int block = 0;
  int wpos = 0;
  PairSlot pair = PairSlot::HI;
};

std::vector<MaskCell> view_mask_cells(const CollusionView& view, const PublicProgram& pub);

/// (block, wpos) mask positions the given executors observe. The pattern is
/// the same for every row and stream: a round exposes all streams of all rows.
std::vector<std::pair<int, int>> observed_mask_positions(const Shape& s,
                                                         const std::vector<ServerId>& ids);

bool includes_measuring(const Shape& s, const std::vector<ServerId>& ids);

/// The executors of the final `count` rounds (count <= N), i.e. the
/// consecutive colluders with the deepest mask coverage, measuring server
/// included.
std::vector<ServerId> colluders_for_final_rounds(const Shape& s, int count);

/// Canonical distinguishing feature of a view. Gate windows are reduced to a
/// stream hash (their track lists are full shuffled enumerations, identical
/// in distribution for every program of the shape); the mask stage is
/// summarized per row by the streams that could be the real one -- every
/// observed second-position cell HI -- with their turn counts at observed
/// positions, joined with the row's reported bit.
std::string view_feature(const CollusionView& view, const PublicProgram& pub, ViewScope scope);

/// Empirical max-likelihood guesser over rehearsal feature counts. Ties and
/// unseen features fall back to a coin from the caller's stream.
class MLAdversary {
 public:
  void observe(int which, const std::string& feature);
  int guess(const std::string& feature, RandomStream& tie_rng) const;
  size_t distinct_features(int which) const;

 private:
  std::unordered_map<std::string, std::pair<long, long>> counts_;
};

struct GameConfig {
  CompileParams params;
  int rehearsal_runs = 2000;  // per arm
  int trials = 10000;
  uint64_t seed = 1;
  ViewScope scope = ViewScope::Full;
};

struct GameResult {
  int trials = 0;
  long successes = 0;
  double advantage = 0.0;  // success rate - 1/2
  double sigma = 0.0;      // binomial null deviation sqrt(1/4 / trials)
  size_t features_0 = 0;
  size_t features_1 = 0;
};

/// Rehearses the adversary on both circuits under fresh per-run secrets,
/// then plays `trials` challenge rounds. Fully deterministic in cfg.seed.
GameResult run_distinguishing_game(const LogicalCircuit& c0, const LogicalCircuit& c1,
                                   const GameConfig& cfg,
                                   const std::vector<ServerId>& colluders);

struct ExactTvResult {
  double tv = 0.0;
  bool gate_windows_invariant = false;
  long long enumerated = 0;  // weighted view outcomes visited
};

/// Exact total-variation distance between the two view distributions. Gate
/// windows are handled structurally (their published track lists are checked
/// to be permutations of the full enumeration, hence identically
/// distributed); the mask stage and reported bits are enumerated exactly.
/// Throws std::length_error when the enumeration would exceed ~1e7 states.
ExactTvResult exact_view_tv(const LogicalCircuit& c0, const LogicalCircuit& c1,
                            const CompileParams& params,
                            const std::vector<ServerId>& colluders,
                            ViewScope scope = ViewScope::Full);

struct AuditCase {
  std::string name;
  std::vector<std::string> colluders;
  GameResult game;
  bool exact_available = false;
  double exact_tv = 0.0;
  bool ok = false;
  std::string verdict;
};

struct AuditReport {
  Shape shape;
  int budget = 0;  // K
  std::vector<AuditCase> cases;
  bool consistent = false;
  std::string summary;
};

/// Plays the distinguishing game across a battery of colluder templates
/// (within budget and deliberately beyond it) and checks every outcome
/// against the exact view distance where enumerable.
AuditReport audit_threshold(const LogicalCircuit& c0, const LogicalCircuit& c1,
                            const GameConfig& cfg);

nlohmann::json game_to_json(const GameResult& g);
nlohmann::json audit_to_json(const AuditReport& r);

}  // namespace bwlab
