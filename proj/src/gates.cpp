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

#include "bwlab/gates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bwlab {

std::vector<Gate> expand_pair(PairSlot p) {
  switch (p) {
    case PairSlot::HI: return {Gate::H};
    case PairSlot::HT: return {Gate::H, Gate::T};
    case PairSlot::HTdg: return {Gate::H, Gate::Tdg};
    case PairSlot::HT2: return {Gate::H, Gate::T, Gate::T};
    case PairSlot::HTdg2: return {Gate::H, Gate::Tdg, Gate::Tdg};
  }
  throw std::invalid_argument("unknown pair slot");
}

Mat gate_unitary(Gate g) {
  const double s = 1.0 / std::numbers::sqrt2;
  const cplx e4 = std::polar(1.0, std::numbers::pi / 4.0);   // exp(i pi/4)
  const cplx e4c = std::conj(e4);
  switch (g) {
    case Gate::I: return mat2(1, 0, 0, 1);
    case Gate::H: return mat2(s, s, s, -s);
    case Gate::T: return mat2(1, 0, 0, e4);
    case Gate::Tdg: return mat2(1, 0, 0, e4c);
    case Gate::S: return mat2(1, 0, 0, cplx(0, 1));
    case Gate::Sdg: return mat2(1, 0, 0, cplx(0, -1));
    case Gate::X: return mat2(0, 1, 1, 0);
    case Gate::Z: return mat2(1, 0, 0, -1);
  }
  throw std::invalid_argument("unknown gate");
}

Mat pair_unitary(PairSlot p) {
  Mat u = Mat::identity(2);
  for (Gate g : expand_pair(p)) u = u * gate_unitary(g);
  return u;
}

Mat segment_unitary(const Segment& s) {
  Mat u = Mat::identity(2);
  for (PairSlot p : s.pairs) u = u * pair_unitary(p);
  return u;
}

const std::vector<PairSlot>& alphabet_slots(Alphabet a) {
  static const std::vector<PairSlot> v = {PairSlot::HI, PairSlot::HT, PairSlot::HTdg};
  static const std::vector<PairSlot> u = {PairSlot::HI, PairSlot::HT2, PairSlot::HTdg2};
  static const std::vector<PairSlot> m = {PairSlot::HI, PairSlot::HT};
  switch (a) {
    case Alphabet::V: return v;
    case Alphabet::U: return u;
    case Alphabet::Mask: return m;
  }
  throw std::invalid_argument("unknown alphabet");
}

bool slot_in_alphabet(PairSlot p, Alphabet a) {
  for (PairSlot q : alphabet_slots(a))
    if (q == p) return true;
  return false;
}

std::string_view pair_code(PairSlot p) {
  switch (p) {
    case PairSlot::HI: return "HI";
    case PairSlot::HT: return "HT";
    case PairSlot::HTdg: return "Hd";
    case PairSlot::HT2: return "H2";
    case PairSlot::HTdg2: return "Hb";
  }
  throw std::invalid_argument("unknown pair slot");
}

PairSlot pair_from_code(std::string_view code) {
  if (code == "HI") return PairSlot::HI;
  if (code == "HT") return PairSlot::HT;
  if (code == "Hd") return PairSlot::HTdg;
  if (code == "H2") return PairSlot::HT2;
  if (code == "Hb") return PairSlot::HTdg2;
  throw std::invalid_argument("unknown pair code: " + std::string(code));
}

std::string_view gate_name(Gate g) {
  switch (g) {
    case Gate::I: return "I";
    case Gate::H: return "H";
    case Gate::T: return "T";
    case Gate::Tdg: return "Tdg";
    case Gate::S: return "S";
    case Gate::Sdg: return "Sdg";
    case Gate::X: return "X";
    case Gate::Z: return "Z";
  }
  throw std::invalid_argument("unknown gate");
}

Gate gate_from_name(std::string_view name) {
  if (name == "I") return Gate::I;
  if (name == "H") return Gate::H;
  if (name == "T") return Gate::T;
  if (name == "Tdg") return Gate::Tdg;
  if (name == "S") return Gate::S;
  if (name == "Sdg") return Gate::Sdg;
  if (name == "X") return Gate::X;
  if (name == "Z") return Gate::Z;
  throw std::invalid_argument("unknown gate name: " + std::string(name));
}

std::string_view alphabet_name(Alphabet a) {
  switch (a) {
    case Alphabet::V: return "V";
    case Alphabet::U: return "U";
    case Alphabet::Mask: return "Mask";
  }
  throw std::invalid_argument("unknown alphabet");
}

Alphabet alphabet_from_name(std::string_view name) {
  if (name == "V") return Alphabet::V;
  if (name == "U") return Alphabet::U;
  if (name == "Mask") return Alphabet::Mask;
  throw std::invalid_argument("unknown alphabet name: " + std::string(name));
}

std::string segment_code(const Segment& s) {
  std::string out;
  out.reserve(s.pairs.size() * 2);
  for (PairSlot p : s.pairs) out += pair_code(p);
  return out;
}

Segment segment_from_code(Alphabet a, std::string_view code) {
  if (code.size() % 2 != 0) throw std::invalid_argument("segment code length must be even");
  Segment s;
  s.alphabet = a;
  for (size_t i = 0; i < code.size(); i += 2) {
    PairSlot p = pair_from_code(code.substr(i, 2));
    if (!slot_in_alphabet(p, a))
      throw std::invalid_argument("pair code outside segment alphabet: " +
                                  std::string(code.substr(i, 2)));
    s.pairs.push_back(p);
  }
  return s;
}

}  // namespace bwlab
