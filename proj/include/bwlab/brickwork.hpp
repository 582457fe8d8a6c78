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

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "bwlab/gates.hpp"
#include "bwlab/logical_circuit.hpp"
#include "bwlab/matrix.hpp"
#include "bwlab/rng.hpp"
#include "bwlab/synth.hpp"

namespace bwlab {

/// Compilation parameters. All of these are public knobs; only `seed` feeds
/// the secret draws.
struct CompileParams {
  int N = 0;       // executor/forwarder pairs; rounds cycle through them
  int K = 0;       // colluder budget the layout is hardened against
  int m = 0;       // physical gates per row per column block (m/2 pair slots)
  int p = 0;       // column blocks
  int W = 0;       // gate-window width in pairs; 0 derives floor(K/2)
  uint64_t seed = 0;

  bool operator==(const CompileParams&) const = default;
};

/// Everything the emitted instruction stream reveals about a program. Two
/// circuits with equal shapes produce public artifacts that are identical
/// byte for byte when compiled under the same seed.
struct Shape {
  int n = 0;  // physical rows (logical rows rounded up to even)
  int p = 0;
  int m = 0;
  int W = 0;
  int N = 0;
  int K = 0;

  bool operator==(const Shape&) const = default;
};

/// Two-row coupler between consecutive column blocks. Every position exists
/// structurally; claimed positions carry a CNOT, the rest stay identity.
enum class BrickKind : uint8_t { Identity, CnotUpper, CnotLower };

struct Brick {
  int col = 0;
  int upper_row = 0;
  BrickKind kind = BrickKind::Identity;

  bool operator==(const Brick&) const = default;
};

/// Per-column, per-row content segments plus each column's brick layer.
/// Even columns pair rows (0,1),(2,3),...; odd columns pair (1,2),(3,4),...,
/// leaving the first and last rows idle.
struct Layout {
  std::vector<std::vector<Segment>> v;     // v[col][row], width m/2
  std::vector<std::vector<Brick>> bricks;  // bricks[col], ordered by upper_row
};

/// Output-mask plan for one row: N two-pair blocks over {HI, HT} whose
/// written product is X^b. Exactly c blocks are the eighth-turn [HT, HI];
/// the rest are [HI, HI]. c is uniform over {0 <= c <= N : c = 4b (mod 8)}
/// and the turning positions are a uniform c-subset.
struct RowMask {
  int b = 0;
  int c = 0;
  std::vector<uint8_t> x;  // x[i] = 1 if block i turns

  bool operator==(const RowMask&) const = default;
};

struct CompiledCircuit {
  Shape shape;
  int q = 0;  // logical rows; rows q..n-1 are idle padding
  Layout layout;
  std::vector<RowMask> masks;  // one per physical row
};

class CompileError : public std::runtime_error {
 public:
  enum class Kind {
    InvalidParams,
    SegmentOverflow,     // a gate word is wider than one column segment
    LayoutOverflow,      // the circuit does not fit in p column blocks
    NonAdjacentTwoRowOp  // CNOT/CZ rows are not neighbors
  };

  CompileError(Kind k, const std::string& msg) : std::runtime_error(msg), kind_(k) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// floor(K/2): the widest run of gate windows a K-subset of servers can
/// reassemble, hence the window width that keeps each window useless alone.
int derive_window_width(int K);

/// Throws CompileError(InvalidParams) with a reason.
void validate_params(const CompileParams& p);

/// Shape a circuit will compile to under p (validates both).
Shape shape_for(const LogicalCircuit& c, const CompileParams& p);

/// Corner-unit words of a brick in written order:
/// {pre_upper, pre_lower, post_upper, post_lower}. Applied order per brick:
/// pre units, coupler, post units, coupler.
std::array<Segment, 4> brick_units(BrickKind kind);

/// Dense 4x4 unitary of one brick; upper row is the high-order index bit.
Mat brick_unitary(BrickKind kind);

/// Mask-block content in written order: {HT, HI} if turning, {HI, HI} if not.
std::array<PairSlot, 2> mask_block(bool turning);

/// The c-classes compatible with bit b: {0 <= c <= N : c = 4b (mod 8)}.
std::vector<int> mask_turn_classes(int N, int b);

/// Lowers the circuit onto the layout and samples the mask plan. Mask draws
/// depend only on the shape and seed, never on circuit content.
CompiledCircuit compile(const LogicalCircuit& c, const CompileParams& params);

}  // namespace bwlab
