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
#include <string>
#include <string_view>
#include <vector>

#include "bwlab/matrix.hpp"

namespace bwlab {

/// Single-qubit gates understood by the logical-circuit layer.
enum class Gate : uint8_t { I, H, T, Tdg, S, Sdg, X, Z };

/// A pair slot is the primitive instruction unit every server executes: a
/// Hadamard followed (in written order) by a second gate. Slots whose second
/// gate is squared expand to three physical gates.
enum class PairSlot : uint8_t { HI, HT, HTdg, HT2, HTdg2 };

/// Instruction alphabets. V drives general single-qubit content, U drives
/// brick corner units, Mask drives the output-mask stage.
enum class Alphabet : uint8_t { V, U, Mask };

/// A run of pair slots in written order: like a matrix product read left to
/// right, the leftmost pair is applied last. Executors therefore stream a
/// segment from its back.
struct Segment {
  Alphabet alphabet = Alphabet::V;
  std::vector<PairSlot> pairs;

  bool operator==(const Segment&) const = default;
};

/// Physical gate list of one pair slot, in written order (starts with H).
std::vector<Gate> expand_pair(PairSlot p);

Mat gate_unitary(Gate g);

/// Written-order product of expand_pair(p).
Mat pair_unitary(PairSlot p);

/// Written-order product over the segment (rightmost pair applied first).
Mat segment_unitary(const Segment& s);

/// Canonical slot order of an alphabet (used for enumeration and sorting).
const std::vector<PairSlot>& alphabet_slots(Alphabet a);

bool slot_in_alphabet(PairSlot p, Alphabet a);

/// Two-byte wire codes: HI, HT, Hd, H2, Hb.
std::string_view pair_code(PairSlot p);
PairSlot pair_from_code(std::string_view code);

std::string_view gate_name(Gate g);
Gate gate_from_name(std::string_view name);

std::string_view alphabet_name(Alphabet a);
Alphabet alphabet_from_name(std::string_view name);

/// Concatenated pair codes, written order.
std::string segment_code(const Segment& s);
Segment segment_from_code(Alphabet a, std::string_view code);

}  // namespace bwlab
