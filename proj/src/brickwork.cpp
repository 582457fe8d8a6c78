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

#include "bwlab/brickwork.hpp"

#include <algorithm>
#include <numeric>

#include "bwlab/statevector.hpp"

namespace bwlab {

namespace {

void fail(CompileError::Kind k, const std::string& msg) { throw CompileError(k, msg); }

void require(bool ok, const std::string& msg) {
  if (!ok) fail(CompileError::Kind::InvalidParams, msg);
}

/// Brick layer of one column: even columns couple (0,1),(2,3),...; odd
/// columns couple (1,2),(3,4),... with the boundary rows idle.
std::vector<Brick> column_bricks(int col, int n) {
  std::vector<Brick> out;
  const int first = (col % 2 == 0) ? 0 : 1;
  const int last = (col % 2 == 0) ? n - 2 : n - 3;  // odd layers leave the last row idle
  for (int upper = first; upper <= last; upper += 2) {
    Brick b;
    b.col = col;
    b.upper_row = upper;
    out.push_back(b);
  }
  return out;
}

/// Written-order word for one logical single-row gate.
const Segment& word_for(Gate g) { return decompose_single(g); }

struct Frontier {
  int col = 0;
  int used = 0;  // pairs already claimed in this column's segment
};

}  // namespace

int derive_window_width(int K) { return K / 2; }

void validate_params(const CompileParams& p) {
  require(p.N >= 4 && p.N <= 32, "server pair count N must be in [4, 32]");
  require(p.K >= 2 && p.K <= 2 * p.N, "colluder budget K must be in [2, 2N]");
  require(p.m >= 4 && p.m <= 4096, "column gate count m must be in [4, 4096]");
  // One pair slot of padding is a Hadamard, not an identity, so padding must
  // stay pairwise: the per-column slot count m/2 has to be even.
  require(p.m % 4 == 0, "column gate count m must be a multiple of 4");
  require(p.p >= 2 && p.p <= 4096, "column block count p must be at least 2");
  require(p.p % 2 == 0, "column block count p must be even");
  const int w = derive_window_width(p.K);
  require(p.W == 0 || p.W == w, "window width W must be 0 (derive) or floor(K/2)");
  require(w >= 1, "colluder budget K must be at least 2 for a nonzero window width");
  require(p.N > w, "server pair count N must exceed floor(K/2)");
  require((p.m / 2) % w == 0, "window width floor(K/2) must divide the slot count m/2");
}

Shape shape_for(const LogicalCircuit& c, const CompileParams& p) {
  validate_params(p);
  if (c.q < 1 || c.q > kMaxQubits)
    fail(CompileError::Kind::InvalidParams, "circuit register size out of range");
  Shape s;
  s.n = c.q + (c.q % 2);
  s.p = p.p;
  s.m = p.m;
  s.W = derive_window_width(p.K);
  s.N = p.N;
  s.K = p.K;
  return s;
}

std::array<Segment, 4> brick_units(BrickKind kind) {
  auto u = [](const char* code) { return segment_from_code(Alphabet::U, code); };
  switch (kind) {
    case BrickKind::Identity:
      return {u("HIHI"), u("HIHI"), u("HIHI"), u("HIHI")};
    case BrickKind::CnotUpper:
      // pre-upper = quarter Z-turn, pre-lower = quarter X-turn,
      // post-upper = identity, post-lower = reverse quarter X-turn.
      return {u("HIH2"), u("H2HI"), u("HIHI"), u("HbHI")};
    case BrickKind::CnotLower:
      return {u("H2HI"), u("HIH2"), u("HbHI"), u("HIHI")};
  }
  throw std::invalid_argument("unknown brick kind");
}

Mat brick_unitary(BrickKind kind) {
  const auto units = brick_units(kind);
  return circuit_unitary(2, [&](Statevector& s) {
    apply_single(s, 0, segment_unitary(units[0]));
    apply_single(s, 1, segment_unitary(units[1]));
    apply_cz(s, 0, 1);
    apply_single(s, 0, segment_unitary(units[2]));
    apply_single(s, 1, segment_unitary(units[3]));
    apply_cz(s, 0, 1);
  });
}

std::array<PairSlot, 2> mask_block(bool turning) {
  if (turning) return {PairSlot::HT, PairSlot::HI};
  return {PairSlot::HI, PairSlot::HI};
}

std::vector<int> mask_turn_classes(int N, int b) {
  std::vector<int> out;
  for (int c = 0; c <= N; ++c)
    if (c % 8 == 4 * b) out.push_back(c);
  return out;
}

CompiledCircuit compile(const LogicalCircuit& c, const CompileParams& params) {
  const Shape shape = shape_for(c, params);
  const int n = shape.n;
  const int cap = shape.m / 2;

  // Expand two-row phase couplers: CZ(a,b) = (I x H) CNOT(a,b) (I x H) with
  // the Hadamards on row b.
  std::vector<CircuitOp> ops;
  for (const CircuitOp& op : c.ops) {
    switch (op.kind) {
      case CircuitOp::Kind::Single:
        if (op.row < 0 || op.row >= c.q)
          fail(CompileError::Kind::InvalidParams, "gate row out of range");
        ops.push_back(op);
        break;
      case CircuitOp::Kind::Cnot:
      case CircuitOp::Kind::Cz: {
        if (op.a < 0 || op.a >= c.q || op.b < 0 || op.b >= c.q)
          fail(CompileError::Kind::InvalidParams, "two-row op row out of range");
        if (op.a == op.b || (op.a - op.b != 1 && op.b - op.a != 1))
          fail(CompileError::Kind::NonAdjacentTwoRowOp,
               "two-row ops must couple adjacent rows");
        if (op.kind == CircuitOp::Kind::Cz) {
          ops.push_back(CircuitOp::single(op.b, Gate::H));
          ops.push_back(CircuitOp::cnot(op.a, op.b));
          ops.push_back(CircuitOp::single(op.b, Gate::H));
        } else {
          ops.push_back(op);
        }
        break;
      }
    }
  }

  // Per (column, row) word lists in arrival order. Written segments are
  // emitted back to front later, because the executed order is the reverse
  // of the written order.
  std::vector<std::vector<std::vector<const Segment*>>> placed(
      static_cast<size_t>(shape.p),
      std::vector<std::vector<const Segment*>>(static_cast<size_t>(n)));
  std::vector<std::vector<Brick>> bricks;
  bricks.reserve(static_cast<size_t>(shape.p));
  for (int col = 0; col < shape.p; ++col) bricks.push_back(column_bricks(col, n));

  std::vector<Frontier> frontier(static_cast<size_t>(n));

  auto place_single = [&](int row, Gate g) {
    const Segment& word = word_for(g);
    const int width = static_cast<int>(word.pairs.size());
    if (width > cap)
      fail(CompileError::Kind::SegmentOverflow,
           "gate word of " + std::to_string(width) + " pairs exceeds the column capacity of " +
               std::to_string(cap));
    Frontier& f = frontier[static_cast<size_t>(row)];
    if (f.used + width > cap) {
      ++f.col;
      f.used = 0;
    }
    if (f.col >= shape.p)
      fail(CompileError::Kind::LayoutOverflow,
           "circuit needs more than " + std::to_string(shape.p) + " column blocks");
    placed[static_cast<size_t>(f.col)][static_cast<size_t>(row)].push_back(&word);
    f.used += width;
  };

  auto place_cnot = [&](int control, int target) {
    const int upper = std::min(control, target);
    const BrickKind kind = (control == upper) ? BrickKind::CnotUpper : BrickKind::CnotLower;
    Frontier& fu = frontier[static_cast<size_t>(upper)];
    Frontier& fl = frontier[static_cast<size_t>(upper + 1)];
    int col = std::max(fu.col, fl.col);
    if (col % 2 != upper % 2) ++col;  // brick positions alternate parity by column
    if (col >= shape.p)
      fail(CompileError::Kind::LayoutOverflow,
           "circuit needs more than " + std::to_string(shape.p) + " column blocks");
    Brick* slot = nullptr;
    for (Brick& b : bricks[static_cast<size_t>(col)])
      if (b.upper_row == upper) slot = &b;
    if (slot == nullptr || slot->kind != BrickKind::Identity)
      fail(CompileError::Kind::LayoutOverflow, "no free coupler position at the frontier");
    slot->kind = kind;
    fu = {col + 1, 0};
    fl = {col + 1, 0};
  };

  for (const CircuitOp& op : ops) {
    if (op.kind == CircuitOp::Kind::Single)
      place_single(op.row, op.gate);
    else
      place_cnot(op.a, op.b);
  }

  // Materialize written segments: front padding of HI pairs (pairwise
  // identity), then the words in reverse arrival order so the first-arrived
  // word sits at the written end and executes first.
  CompiledCircuit out;
  out.shape = shape;
  out.q = c.q;
  out.layout.bricks = std::move(bricks);
  out.layout.v.assign(static_cast<size_t>(shape.p),
                      std::vector<Segment>(static_cast<size_t>(n)));
  for (int col = 0; col < shape.p; ++col) {
    for (int row = 0; row < n; ++row) {
      Segment seg;
      seg.alphabet = Alphabet::V;
      seg.pairs.reserve(static_cast<size_t>(cap));
      const auto& words = placed[static_cast<size_t>(col)][static_cast<size_t>(row)];
      int used = 0;
      for (const Segment* w : words) used += static_cast<int>(w->pairs.size());
      seg.pairs.assign(static_cast<size_t>(cap - used), PairSlot::HI);
      for (auto it = words.rbegin(); it != words.rend(); ++it)
        seg.pairs.insert(seg.pairs.end(), (*it)->pairs.begin(), (*it)->pairs.end());
      out.layout.v[static_cast<size_t>(col)][static_cast<size_t>(row)] = std::move(seg);
    }
  }

  // Mask plan. Draw counts depend only on (n, N), so the compile stream stays
  // aligned across circuits of equal shape.
  RandomStream rng(derive_seed(params.seed, seed_tag::kCompile));
  out.masks.resize(static_cast<size_t>(n));
  for (int row = 0; row < n; ++row) {
    RowMask& mask = out.masks[static_cast<size_t>(row)];
    mask.b = rng.bit();
    const std::vector<int> classes = mask_turn_classes(shape.N, mask.b);
    mask.c = classes[rng.bounded(classes.size())];
    std::vector<int> order(static_cast<size_t>(shape.N));
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    mask.x.assign(static_cast<size_t>(shape.N), 0);
    for (int i = 0; i < mask.c; ++i) mask.x[static_cast<size_t>(order[static_cast<size_t>(i)])] = 1;
  }
  return out;
}

}  // namespace bwlab
