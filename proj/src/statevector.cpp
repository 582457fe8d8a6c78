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

#include "bwlab/statevector.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace bwlab {

namespace {

void check_row(const Statevector& s, int row) {
  if (row < 0 || row >= s.q) throw std::invalid_argument("row index out of range");
}

size_t row_stride(const Statevector& s, int row) {
  return size_t{1} << (s.q - 1 - row);
}

}  // namespace

Statevector new_state(int q) {
  if (q < 1 || q > kMaxQubits) throw std::invalid_argument("register size out of range");
  Statevector s;
  s.q = q;
  s.amp.assign(size_t{1} << q, cplx{});
  s.amp[0] = 1.0;
  return s;
}

void apply_single(Statevector& s, int row, const Mat& u2) {
  check_row(s, row);
  if (u2.dim != 2) throw std::invalid_argument("single-row update needs a 2x2 matrix");
  const size_t stride = row_stride(s, row);
  const size_t n = s.amp.size();
  for (size_t base = 0; base < n; base += 2 * stride) {
    for (size_t off = 0; off < stride; ++off) {
      const size_t i0 = base + off;
      const size_t i1 = i0 + stride;
      const cplx a0 = s.amp[i0];
      const cplx a1 = s.amp[i1];
      s.amp[i0] = u2.at(0, 0) * a0 + u2.at(0, 1) * a1;
      s.amp[i1] = u2.at(1, 0) * a0 + u2.at(1, 1) * a1;
    }
  }
}

void apply_cz(Statevector& s, int row_a, int row_b) {
  check_row(s, row_a);
  check_row(s, row_b);
  if (row_a == row_b) throw std::invalid_argument("two-row update needs distinct rows");
  const size_t ma = row_stride(s, row_a);
  const size_t mb = row_stride(s, row_b);
  const size_t n = s.amp.size();
  for (size_t i = 0; i < n; ++i)
    if ((i & ma) && (i & mb)) s.amp[i] = -s.amp[i];
}

void apply_cnot(Statevector& s, int control, int target) {
  check_row(s, control);
  check_row(s, target);
  if (control == target) throw std::invalid_argument("two-row update needs distinct rows");
  const size_t mc = row_stride(s, control);
  const size_t mt = row_stride(s, target);
  const size_t n = s.amp.size();
  for (size_t i = 0; i < n; ++i)
    if ((i & mc) && !(i & mt)) std::swap(s.amp[i], s.amp[i | mt]);
}

double norm(const Statevector& s) {
  double t = 0.0;
  for (const cplx& a : s.amp) t += std::norm(a);
  return std::sqrt(t);
}

OutcomeDistribution distribution(const Statevector& s) {
  OutcomeDistribution d;
  d.q = s.q;
  d.p.resize(s.amp.size());
  for (size_t i = 0; i < s.amp.size(); ++i) d.p[i] = std::norm(s.amp[i]);
  return d;
}

OutcomeDistribution marginal_first_rows(const OutcomeDistribution& d, int rows) {
  if (rows < 1 || rows > d.q) throw std::invalid_argument("marginal row count out of range");
  OutcomeDistribution m;
  m.q = rows;
  m.p.assign(size_t{1} << rows, 0.0);
  const int drop = d.q - rows;
  for (size_t i = 0; i < d.p.size(); ++i) m.p[i >> drop] += d.p[i];
  return m;
}

double total_variation(const OutcomeDistribution& a, const OutcomeDistribution& b) {
  if (a.q != b.q) throw std::invalid_argument("distribution size mismatch");
  double t = 0.0;
  for (size_t i = 0; i < a.p.size(); ++i) t += std::abs(a.p[i] - b.p[i]);
  return 0.5 * t;
}

std::string measure_all(const Statevector& s, RandomStream& rng) {
  const double u = rng.unit_double();
  double acc = 0.0;
  size_t pick = s.amp.size() - 1;  // fall through to the last index on rounding
  for (size_t i = 0; i < s.amp.size(); ++i) {
    acc += std::norm(s.amp[i]);
    if (u < acc) {
      pick = i;
      break;
    }
  }
  std::string bits(static_cast<size_t>(s.q), '0');
  for (int r = 0; r < s.q; ++r)
    if (pick & (size_t{1} << (s.q - 1 - r))) bits[static_cast<size_t>(r)] = '1';
  return bits;
}

Mat circuit_unitary(int q, const std::function<void(Statevector&)>& apply_ops) {
  if (q < 1 || q > kMaxUnitaryQubits) throw std::invalid_argument("unitary register size out of range");
  const int dim = 1 << q;
  Mat u(dim);
  for (int col = 0; col < dim; ++col) {
    Statevector s = new_state(q);
    s.amp[0] = 0.0;
    s.amp[static_cast<size_t>(col)] = 1.0;
    apply_ops(s);
    for (int row = 0; row < dim; ++row) u.at(row, col) = s.amp[static_cast<size_t>(row)];
  }
  return u;
}

}  // namespace bwlab
