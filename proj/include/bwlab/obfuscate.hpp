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
#include <vector>

#include "bwlab/brickwork.hpp"
#include "bwlab/gates.hpp"

namespace bwlab {

/// Window kinds in the public instruction stream. Gate windows (content and
/// both coupler corners) carry one track per word of their full alphabet
/// enumeration; mask windows carry four persistent streams per row.
enum class WindowKind : uint8_t { GateV, GateUPre, GateUPost, Mask };

/// Identifies a window position in the layout. For GateV, `slot` is the
/// execution-order index within the column (slot 0 runs first and covers the
/// written tail of the segment). For coupler windows, `upper_row` names the
/// brick and `row` the corner row. For Mask, `slot` is the block index and
/// `col` is unused (-1).
struct WindowRef {
  WindowKind kind = WindowKind::GateV;
  int col = -1;
  int row = 0;
  int slot = 0;
  int upper_row = -1;

  bool operator==(const WindowRef&) const = default;
};

/// One published window: an ordered list of candidate tracks, all streamed to
/// the executors. Which track is real is secret. For mask windows the track
/// index is the stream id, which persists across all blocks of the row.
struct PublicWindow {
  WindowRef ref;
  Alphabet alphabet = Alphabet::V;
  int width = 0;
  std::vector<Segment> tracks;
};

/// Coupler activation between corner-unit layers; both fire for every brick
/// position, claimed or not.
struct CzEvent {
  int col = 0;
  int upper_row = 0;
  int phase = 0;  // 0 = between pre and post units, 1 = after post units

  bool operator==(const CzEvent&) const = default;
};

/// Computation-independent share of an obfuscated program: everything every
/// server (and any eavesdropper on the instruction stream) gets to see.
struct PublicProgram {
  std::string version;
  uint64_t seed = 0;  // master seed, kept for lab reproducibility
  CompileParams params;
  Shape shape;
  std::vector<PublicWindow> windows;  // canonical program order
  std::vector<CzEvent> cz;
};

/// Client-side secrets: which track is real in each window, the mask plan,
/// and the per-row real mask stream ids.
struct SecretData {
  int q = 0;
  std::vector<int> real_index;  // per window; for mask windows equals the row's stream id
  std::vector<RowMask> masks;
  std::vector<int> mask_sid;
};

struct ObfuscatedProgram {
  PublicProgram pub;
  SecretData sec;
};

/// Wraps the compiled layout in dummy tracks. Gate windows enumerate their
/// full alphabet and shuffle it; mask windows assign the three leftover
/// two-pair sequences to the dummy streams. All draw counts depend only on
/// the shape, so equal-shape programs consume the stream identically.
ObfuscatedProgram obfuscate(const CompiledCircuit& cc, uint64_t master_seed);

/// All width-`width` words over the alphabet, lexicographic in canonical
/// slot order.
std::vector<Segment> enumerate_words(Alphabet a, int width);

/// Expected number of windows for a shape (layout arithmetic only).
size_t window_count(const Shape& s);

nlohmann::json params_to_json(const CompileParams& p);
CompileParams params_from_json(const nlohmann::json& j);
nlohmann::json shape_to_json(const Shape& s);
Shape shape_from_json(const nlohmann::json& j);

nlohmann::json public_to_json(const PublicProgram& pub);
PublicProgram public_from_json(const nlohmann::json& j);
nlohmann::json secret_to_json(const ObfuscatedProgram& prog);
ObfuscatedProgram attach_secrets(const PublicProgram& pub, const nlohmann::json& secret);

/// Deterministic serialized form used for byte-identity checks.
std::string canonical_bytes(const PublicProgram& pub);

/// Slot and gate accounting, all derivable from the public program. Counts
/// are pair slots unless named otherwise.
struct OverheadReport {
  long long windows = 0;
  long long tracks = 0;
  long long gate_window_real_pairs = 0;   // one track per gate window
  long long gate_window_dummy_pairs = 0;  // every other gate-window track
  long long mask_pairs_total = 0;         // all four streams, all blocks, all rows
  long long total_pairs = 0;              // sum of width * tracks over all windows
  long long total_physical_gates = 0;     // expanded over every published track
};

OverheadReport overhead_report(const PublicProgram& pub);

}  // namespace bwlab
