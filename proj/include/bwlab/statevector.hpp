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

#include <functional>
#include <string>
#include <vector>

#include "bwlab/matrix.hpp"
#include "bwlab/rng.hpp"

namespace bwlab {

/// Dense amplitude-vector cap; memory is 2^q complex doubles.
inline constexpr int kMaxQubits = 14;

/// Dense unitary-reconstruction cap (dim 2^q squared entries).
inline constexpr int kMaxUnitaryQubits = 6;

/// Dense statevector over q rows. Row 0 is the most significant bit of the
/// basis index: |r0 r1 ... r_{q-1}> lives at index sum_i r_i << (q-1-i).
struct Statevector {
  int q = 0;
  std::vector<cplx> amp;
};

/// |0...0> on q rows. Throws std::invalid_argument unless 1 <= q <= kMaxQubits.
Statevector new_state(int q);

void apply_single(Statevector& s, int row, const Mat& u2);

/// Diagonal phase flip on |11> of the two rows (order-insensitive).
void apply_cz(Statevector& s, int row_a, int row_b);

/// Exact amplitude swap; no floating-point arithmetic involved.
void apply_cnot(Statevector& s, int control, int target);

double norm(const Statevector& s);

/// Exact outcome probabilities; index convention matches Statevector.
struct OutcomeDistribution {
  int q = 0;
  std::vector<double> p;
};

OutcomeDistribution distribution(const Statevector& s);

/// Marginal over the first `rows` rows (most significant index bits).
OutcomeDistribution marginal_first_rows(const OutcomeDistribution& d, int rows);

/// Total variation distance, (1/2) sum |a_i - b_i|.
double total_variation(const OutcomeDistribution& a, const OutcomeDistribution& b);

/// Samples one outcome as a '0'/'1' string, row 0 first. Consumes exactly one
/// draw from rng so callers can reason about stream positions.
std::string measure_all(const Statevector& s, RandomStream& rng);

/// Dense unitary of an operation sequence, built by applying the sequence to
/// each basis column. q must be <= kMaxUnitaryQubits.
Mat circuit_unitary(int q, const std::function<void(Statevector&)>& apply_ops);

}  // namespace bwlab
