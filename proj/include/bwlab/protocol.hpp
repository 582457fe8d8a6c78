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
#include <string_view>
#include <vector>

#include "bwlab/obfuscate.hpp"
#include "bwlab/statevector.hpp"

namespace bwlab {

/// A-side servers execute instructions; B-side servers only relay state.
enum class Side : uint8_t { A, B };

struct ServerId {
  Side side = Side::A;
  int index = 1;  // 1..N

  bool operator==(const ServerId&) const = default;
  auto operator<=>(const ServerId&) const = default;
};

std::string server_name(ServerId id);             // "A3", "B1"
ServerId server_from_name(std::string_view name); // throws std::invalid_argument

/// Round arithmetic. Pair slots are grouped into rounds; round r is executed
/// by A_{(r mod N)+1} and relayed onward by B_{(r mod N)+1}. Each column
/// block takes m/2 rounds of content plus four coupler-unit rounds; the mask
/// stage appends two rounds per block.
int rounds_per_column(const Shape& s);
int gate_rounds(const Shape& s);
int total_rounds(const Shape& s);
ServerId executor_of_round(const Shape& s, int round);
ServerId forwarder_of_round(const Shape& s, int round);
ServerId measuring_server(const Shape& s);

/// One pair execution: window id (index into PublicProgram::windows) and the
/// execution index within the window (0 runs first and plays the written
/// tail of each track).
struct RoundSlot {
  int window = 0;
  int exec_index = 0;
};

/// Per-round execution plan derived from the public program alone.
struct Schedule {
  Shape shape;
  std::vector<std::vector<RoundSlot>> slots;  // per round, canonical order
  std::vector<std::vector<CzEvent>> cz;       // per round, after the pair slots
};

Schedule build_schedule(const PublicProgram& pub);

/// First round at which the given window has an execution slot.
int window_first_round(const Shape& s, const WindowRef& ref);

struct TranscriptEntry {
  enum class Kind : uint8_t { Pair, Cz, Forward, Measure };

  int round = 0;
  Kind kind = Kind::Pair;
  int window = -1;                 // Pair
  int track = -1;                  // Pair
  PairSlot pair = PairSlot::HI;    // Pair
  int col = -1;                    // Cz
  int upper_row = -1;              // Cz
  int phase = -1;                  // Cz
  std::string to;                  // Forward: receiving server name
  std::string bits;                // Measure: raw bits, row 0 first

  bool operator==(const TranscriptEntry&) const = default;
};

struct ServerTranscript {
  ServerId id;
  std::vector<TranscriptEntry> entries;
};

struct RunResult {
  Shape shape;
  std::string raw_bits;  // masked outcome, row 0 first
  ServerId measuring;
  std::vector<ServerTranscript> transcripts;  // A1..AN then B1..BN
};

/// Emulates one delegation: every track of every window is executed in its
/// scheduled round; the real track acts on the joint register, dummy tracks
/// on detached two-level registers. The measuring server samples all rows in
/// the final round (the run's only random draw).
RunResult run(const ObfuscatedProgram& prog, uint64_t run_seed);

struct DecodedOutput {
  std::string decoded;  // raw bits with the row masks removed, all n rows
  std::string logical;  // first q rows
};

DecodedOutput decode(const ObfuscatedProgram& prog, const std::string& raw_bits);

/// Exact distribution of decode(...).decoded over all n rows, computed by
/// evolving the real track only.
OutcomeDistribution exact_decoded_distribution(const ObfuscatedProgram& prog);

/// Wall-clock exposure of a K-collusion that replays a stolen round stream:
/// (K+1) * seconds_per_round. Throws std::invalid_argument on nonpositive
/// durations or negative K.
double estimate_leak_time(int colluders, double seconds_per_round);

nlohmann::json run_to_json(const RunResult& rr, const DecodedOutput& dec, uint64_t run_seed);
std::string transcripts_to_jsonl(const RunResult& rr);
RunResult run_from_artifacts(const nlohmann::json& run_json, const std::string& jsonl);

}  // namespace bwlab
