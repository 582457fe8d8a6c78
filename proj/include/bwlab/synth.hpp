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

#include "bwlab/gates.hpp"

namespace bwlab {

/// Width of every fixed single-gate decomposition. A uniform width keeps
/// segment packing and window arithmetic independent of circuit content,
/// which is what makes the emitted instruction stream shape-only.
inline constexpr int kDecomposeWidth = 8;

/// Fixed width-8 word over the general instruction alphabet whose written
/// product equals the gate up to a global phase. Entries are the
/// lexicographically first solutions (slot order HI < HT < HTdg) of an
/// exhaustive width-8 search; the unit tests re-run that search and pin
/// these exact words.
const Segment& decompose_single(Gate g);

}  // namespace bwlab
