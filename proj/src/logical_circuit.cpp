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

#include "bwlab/logical_circuit.hpp"

#include <cstdlib>
#include <stdexcept>

namespace bwlab {

CircuitOp CircuitOp::single(int row, Gate g) {
  CircuitOp op;
  op.kind = Kind::Single;
  op.row = row;
  op.gate = g;
  return op;
}

CircuitOp CircuitOp::cnot(int control, int target) {
  CircuitOp op;
  op.kind = Kind::Cnot;
  op.a = control;
  op.b = target;
  return op;
}

CircuitOp CircuitOp::cz(int a, int b) {
  CircuitOp op;
  op.kind = Kind::Cz;
  op.a = a;
  op.b = b;
  return op;
}

void validate_circuit(const LogicalCircuit& c) {
  if (c.q < 1 || c.q > kMaxQubits) throw std::invalid_argument("circuit register size out of range");
  for (const CircuitOp& op : c.ops) {
    switch (op.kind) {
      case CircuitOp::Kind::Single:
        if (op.row < 0 || op.row >= c.q) throw std::invalid_argument("gate row out of range");
        break;
      case CircuitOp::Kind::Cnot:
      case CircuitOp::Kind::Cz:
        if (op.a < 0 || op.a >= c.q || op.b < 0 || op.b >= c.q)
          throw std::invalid_argument("two-row op row out of range");
        if (std::abs(op.a - op.b) != 1)
          throw std::invalid_argument("two-row ops must act on adjacent rows");
        break;
    }
  }
}

LogicalCircuit circuit_from_json(const nlohmann::json& j) {
  LogicalCircuit c;
  c.q = j.at("q").get<int>();
  for (const auto& item : j.at("ops")) {
    if (item.contains("gate")) {
      c.ops.push_back(CircuitOp::single(item.at("row").get<int>(),
                                        gate_from_name(item.at("gate").get<std::string>())));
    } else if (item.contains("cnot")) {
      const auto& rows = item.at("cnot");
      if (rows.size() != 2) throw std::invalid_argument("cnot needs [control, target]");
      c.ops.push_back(CircuitOp::cnot(rows[0].get<int>(), rows[1].get<int>()));
    } else if (item.contains("cz")) {
      const auto& rows = item.at("cz");
      if (rows.size() != 2) throw std::invalid_argument("cz needs [row, row]");
      c.ops.push_back(CircuitOp::cz(rows[0].get<int>(), rows[1].get<int>()));
    } else {
      throw std::invalid_argument("circuit op must contain gate, cnot, or cz");
    }
  }
  validate_circuit(c);
  return c;
}

nlohmann::json circuit_to_json(const LogicalCircuit& c) {
  nlohmann::json ops = nlohmann::json::array();
  for (const CircuitOp& op : c.ops) {
    switch (op.kind) {
      case CircuitOp::Kind::Single:
        ops.push_back({{"gate", std::string(gate_name(op.gate))}, {"row", op.row}});
        break;
      case CircuitOp::Kind::Cnot:
        ops.push_back({{"cnot", {op.a, op.b}}});
        break;
      case CircuitOp::Kind::Cz:
        ops.push_back({{"cz", {op.a, op.b}}});
        break;
    }
  }
  return {{"q", c.q}, {"ops", ops}};
}

Statevector simulate(const LogicalCircuit& c) {
  validate_circuit(c);
  Statevector s = new_state(c.q);
  for (const CircuitOp& op : c.ops) {
    switch (op.kind) {
      case CircuitOp::Kind::Single:
        apply_single(s, op.row, gate_unitary(op.gate));
        break;
      case CircuitOp::Kind::Cnot:
        apply_cnot(s, op.a, op.b);
        break;
      case CircuitOp::Kind::Cz:
        apply_cz(s, op.a, op.b);
        break;
    }
  }
  return s;
}

OutcomeDistribution output_distribution(const LogicalCircuit& c) {
  Statevector s = simulate(c);
  return distribution(s);
}

LogicalCircuit random_circuit(RandomStream& rng, int q, int ops) {
  if (q < 1) throw std::invalid_argument("circuit register size out of range");
  LogicalCircuit c;
  c.q = q;
  static const Gate kSingles[] = {Gate::I, Gate::H, Gate::T,  Gate::Tdg,
                                  Gate::S, Gate::Sdg, Gate::X, Gate::Z};
  for (int i = 0; i < ops; ++i) {
    const bool two_row = q >= 2 && rng.bounded(10) < 3;
    if (two_row) {
      const int upper = static_cast<int>(rng.bounded(static_cast<uint64_t>(q - 1)));
      switch (rng.bounded(3)) {
        case 0: c.ops.push_back(CircuitOp::cnot(upper, upper + 1)); break;
        case 1: c.ops.push_back(CircuitOp::cnot(upper + 1, upper)); break;
        default: c.ops.push_back(CircuitOp::cz(upper, upper + 1)); break;
      }
    } else {
      const int row = static_cast<int>(rng.bounded(static_cast<uint64_t>(q)));
      c.ops.push_back(CircuitOp::single(row, kSingles[rng.bounded(8)]));
    }
  }
  return c;
}

}  // namespace bwlab
