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
#include <vector>

#include "bwlab/gates.hpp"
#include "bwlab/rng.hpp"
#include "bwlab/statevector.hpp"

namespace bwlab {

/// One logical operation: a named single-row gate, or a CNOT/CZ across two
/// adjacent rows.
struct CircuitOp {
  enum class Kind : uint8_t { Single, Cnot, Cz };

  Kind kind = Kind::Single;
  Gate gate = Gate::I;  // Single only
  int row = 0;          // Single only
  int a = 0;            // Cnot control, or lower-index Cz row
  int b = 0;            // Cnot target, or other Cz row

  static CircuitOp single(int row, Gate g);
  static CircuitOp cnot(int control, int target);
  static CircuitOp cz(int a, int b);

  bool operator==(const CircuitOp&) const = default;
};

/// A logical circuit on q rows, ops applied first to last.
struct LogicalCircuit {
  int q = 0;
  std::vector<CircuitOp> ops;

  bool operator==(const LogicalCircuit&) const = default;
};

/// Throws std::invalid_argument on out-of-range rows, non-adjacent two-row
/// ops, or an unusable register size.
void validate_circuit(const LogicalCircuit& c);

/// JSON wire format:
///   {"q": 2, "ops": [{"gate": "H", "row": 0}, {"cnot": [0, 1]}, {"cz": [0, 1]}]}
LogicalCircuit circuit_from_json(const nlohmann::json& j);
nlohmann::json circuit_to_json(const LogicalCircuit& c);

/// Applies the ops, first to last, to |0...0>.
Statevector simulate(const LogicalCircuit& c);

/// Exact measurement distribution of simulate(c).
OutcomeDistribution output_distribution(const LogicalCircuit& c);

/// Random circuit for corpus tests: uniform named single gates (including H)
/// plus adjacent CNOT/CZ when q >= 2. Emits exactly `ops` operations.
LogicalCircuit random_circuit(RandomStream& rng, int q, int ops);

}  // namespace bwlab
