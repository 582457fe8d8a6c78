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

#include "bwlab/synth.hpp"

#include <array>
#include <stdexcept>

namespace bwlab {

namespace {

Segment seg(const char* code) { return segment_from_code(Alphabet::V, code); }

const std::array<Segment, 8>& table() {
  static const std::array<Segment, 8> t = {
      seg("HIHIHIHIHIHIHIHI"),  // I
      seg("HTHTHIHTHTHIHTHT"),  // H   (up to phase exp(i pi/4))
      seg("HIHIHIHIHIHIHIHT"),  // T
      seg("HIHIHIHIHIHIHIHd"),  // Tdg
      seg("HIHIHIHIHIHTHIHT"),  // S
      seg("HIHIHIHIHIHdHIHd"),  // Sdg
      seg("HTHIHTHIHTHIHTHI"),  // X
      seg("HIHTHIHTHIHTHIHT"),  // Z
  };
  return t;
}

}  // namespace

const Segment& decompose_single(Gate g) {
  const auto idx = static_cast<size_t>(g);
  if (idx >= table().size()) throw std::invalid_argument("unknown gate");
  return table()[idx];
}

}  // namespace bwlab
