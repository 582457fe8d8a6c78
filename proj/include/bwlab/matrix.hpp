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

#include <complex>
#include <vector>

namespace bwlab {

using cplx = std::complex<double>;

/// Dense square complex matrix, row-major. Sized for gate algebra and for
/// small-register unitaries (dim = 2^q with q <= 6); not a general linear
/// algebra type.
struct Mat {
  int dim = 0;
  std::vector<cplx> a;

  Mat() = default;
  explicit Mat(int d) : dim(d), a(static_cast<size_t>(d) * static_cast<size_t>(d)) {}

  static Mat identity(int d);

  cplx& at(int r, int c) { return a[static_cast<size_t>(r) * dim + c]; }
  const cplx& at(int r, int c) const { return a[static_cast<size_t>(r) * dim + c]; }

  Mat operator*(const Mat& o) const;
  Mat adjoint() const;
};

/// Convenience constructor for 2x2 matrices (row-major arguments).
Mat mat2(cplx a00, cplx a01, cplx a10, cplx a11);

/// Kronecker product; row index of x is the high-order block index.
Mat kron(const Mat& x, const Mat& y);

/// Largest entrywise |u - v|. Dimension mismatch throws.
double max_abs_diff(const Mat& u, const Mat& v);

/// True when u * u^dagger is within tol of the identity (max-abs norm).
bool is_unitary(const Mat& u, double tol);

/// True when u == e^{i phi} v for some real phi, within tol in max-abs norm.
/// The phase is fixed from the largest-magnitude entry of v, so the test is
/// exact rather than an optimization.
bool equal_up_to_global_phase(const Mat& u, const Mat& v, double tol);

}  // namespace bwlab
