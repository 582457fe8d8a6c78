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

#include "bwlab/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bwlab {

Mat Mat::identity(int d) {
  Mat m(d);
  for (int i = 0; i < d; ++i) m.at(i, i) = 1.0;
  return m;
}

Mat Mat::operator*(const Mat& o) const {
  if (dim != o.dim) throw std::invalid_argument("matrix dimension mismatch in product");
  Mat r(dim);
  for (int i = 0; i < dim; ++i) {
    for (int k = 0; k < dim; ++k) {
      const cplx v = at(i, k);
      if (v == cplx{}) continue;
      for (int j = 0; j < dim; ++j) r.at(i, j) += v * o.at(k, j);
    }
  }
  return r;
}

Mat Mat::adjoint() const {
  Mat r(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) r.at(i, j) = std::conj(at(j, i));
  return r;
}

Mat mat2(cplx a00, cplx a01, cplx a10, cplx a11) {
  Mat m(2);
  m.at(0, 0) = a00;
  m.at(0, 1) = a01;
  m.at(1, 0) = a10;
  m.at(1, 1) = a11;
  return m;
}

Mat kron(const Mat& x, const Mat& y) {
  Mat r(x.dim * y.dim);
  for (int i = 0; i < x.dim; ++i)
    for (int j = 0; j < x.dim; ++j)
      for (int k = 0; k < y.dim; ++k)
        for (int l = 0; l < y.dim; ++l)
          r.at(i * y.dim + k, j * y.dim + l) = x.at(i, j) * y.at(k, l);
  return r;
}

double max_abs_diff(const Mat& u, const Mat& v) {
  if (u.dim != v.dim) throw std::invalid_argument("matrix dimension mismatch in comparison");
  double m = 0.0;
  for (size_t i = 0; i < u.a.size(); ++i) m = std::max(m, std::abs(u.a[i] - v.a[i]));
  return m;
}

bool is_unitary(const Mat& u, double tol) {
  return max_abs_diff(u * u.adjoint(), Mat::identity(u.dim)) <= tol;
}

bool equal_up_to_global_phase(const Mat& u, const Mat& v, double tol) {
  if (u.dim != v.dim) throw std::invalid_argument("matrix dimension mismatch in phase comparison");
  // Anchor the candidate phase at v's largest-magnitude entry.
  size_t best = 0;
  double best_mag = -1.0;
  for (size_t i = 0; i < v.a.size(); ++i) {
    double mag = std::abs(v.a[i]);
    if (mag > best_mag) {
      best_mag = mag;
      best = i;
    }
  }
  if (best_mag <= tol) return max_abs_diff(u, v) <= tol;
  const cplx phase = u.a[best] / v.a[best];
  if (std::abs(std::abs(phase) - 1.0) > tol) return false;
  double m = 0.0;
  for (size_t i = 0; i < u.a.size(); ++i) m = std::max(m, std::abs(u.a[i] - phase * v.a[i]));
  return m <= tol;
}

}  // namespace bwlab
