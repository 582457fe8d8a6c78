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

#include <doctest.h>

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "bwlab/gates.hpp"
#include "bwlab/logical_circuit.hpp"
#include "bwlab/matrix.hpp"
#include "bwlab/rng.hpp"
#include "bwlab/statevector.hpp"
#include "bwlab/synth.hpp"

using namespace bwlab;

namespace {

// ---------------------------------------------------------------------------
// A tiny self-contained 2x2 complex oracle, deliberately independent of the
// library's matrix code, used to cross-check the gate algebra from scratch.
// ---------------------------------------------------------------------------

using C = std::complex<double>;

struct M2 {
  std::array<C, 4> e;  // row-major
};

M2 mul(const M2& x, const M2& y) {
  return {{x.e[0] * y.e[0] + x.e[1] * y.e[2], x.e[0] * y.e[1] + x.e[1] * y.e[3],
           x.e[2] * y.e[0] + x.e[3] * y.e[2], x.e[2] * y.e[1] + x.e[3] * y.e[3]}};
}

bool prop_to(const M2& u, const M2& t, double tol) {
  size_t best = 0;
  double mag = -1.0;
  for (size_t i = 0; i < 4; ++i)
    if (std::abs(t.e[i]) > mag) {
      mag = std::abs(t.e[i]);
      best = i;
    }
  const C phase = u.e[best] / t.e[best];
  if (std::abs(std::abs(phase) - 1.0) > tol) return false;
  for (size_t i = 0; i < 4; ++i)
    if (std::abs(u.e[i] - phase * t.e[i]) > tol) return false;
  return true;
}

const double kS = 1.0 / std::numbers::sqrt2;
const C kE4 = std::polar(1.0, std::numbers::pi / 4.0);

const M2 kH{{kS, kS, kS, -kS}};
const M2 kT{{1, 0, 0, kE4}};
const M2 kTdg{{1, 0, 0, std::conj(kE4)}};
const M2 kI{{1, 0, 0, 1}};
const M2 kSGate{{1, 0, 0, C(0, 1)}};
const M2 kSdg{{1, 0, 0, C(0, -1)}};
const M2 kX{{0, 1, 1, 0}};
const M2 kZ{{1, 0, 0, -1}};

// Pair-slot matrices of the general alphabet, digit order HI < HT < HTdg.
const std::array<M2, 3> kDigit = {kH, mul(kH, kT), mul(kH, kTdg)};
const std::array<const char*, 3> kDigitCode = {"HI", "HT", "Hd"};

M2 word_product(const std::vector<int>& digits) {
  M2 u = kI;
  for (int d : digits) u = mul(u, kDigit[static_cast<size_t>(d)]);
  return u;
}

std::string word_code(const std::vector<int>& digits) {
  std::string s;
  for (int d : digits) s += kDigitCode[static_cast<size_t>(d)];
  return s;
}

/// Lexicographically first width-`width` word proportional to the target, or
/// empty when none exists.
std::string first_solution(const M2& target, int width, double tol = 1e-10) {
  std::vector<int> digits(static_cast<size_t>(width), 0);
  const long long count = static_cast<long long>(std::pow(3.0, width) + 0.5);
  for (long long i = 0; i < count; ++i) {
    long long rem = i;
    for (int k = width - 1; k >= 0; --k) {
      digits[static_cast<size_t>(k)] = static_cast<int>(rem % 3);
      rem /= 3;
    }
    if (prop_to(word_product(digits), target, tol)) return word_code(digits);
  }
  return {};
}

Mat to_mat(const M2& m) { return mat2(m.e[0], m.e[1], m.e[2], m.e[3]); }

}  // namespace

TEST_CASE("random streams are deterministic and well ranged") {
  RandomStream a(42);
  RandomStream b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  RandomStream c(7);
  std::map<uint64_t, int> hist;
  for (int i = 0; i < 6000; ++i) ++hist[c.bounded(6)];
  CHECK(hist.size() == 6);
  for (const auto& [v, n] : hist) {
    CHECK(v < 6);
    CHECK(n > 700);  // ~1000 expected per value
  }

  for (int i = 0; i < 50; ++i) {
    const double u = c.unit_double();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("shuffle produces a permutation and depends on the seed") {
  std::vector<int> v(20);
  for (int i = 0; i < 20; ++i) v[static_cast<size_t>(i)] = i;
  std::vector<int> w = v;
  RandomStream rng(3);
  rng.shuffle(w);
  std::vector<int> sorted = w;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == v);
  CHECK(w != v);  // 20 elements: identity is astronomically unlikely

  std::vector<int> w2 = v;
  RandomStream rng2(3);
  rng2.shuffle(w2);
  CHECK(w2 == w);
}

TEST_CASE("seed derivation separates tags") {
  const uint64_t master = 99;
  std::set<uint64_t> seeds;
  for (uint64_t tag : {seed_tag::kCompile, seed_tag::kObfuscate, seed_tag::kRun,
                       seed_tag::kChallenger, seed_tag::kRehearse, seed_tag::kTrial})
    seeds.insert(derive_seed(master, tag));
  CHECK(seeds.size() == 6);
  CHECK(derive_seed(master, 1) == derive_seed(master, 1));
  CHECK(derive_seed(master, 1) != derive_seed(master + 1, 1));
}

TEST_CASE("matrix product, adjoint, and kron behave") {
  const Mat h = gate_unitary(Gate::H);
  CHECK(is_unitary(h, 1e-12));
  CHECK(max_abs_diff(h * h, Mat::identity(2)) < 1e-12);
  CHECK(max_abs_diff(h.adjoint(), h) < 1e-12);  // H is Hermitian

  const Mat xz = kron(gate_unitary(Gate::X), gate_unitary(Gate::Z));
  CHECK(xz.dim == 4);
  CHECK(std::abs(xz.at(0, 2) - cplx(1, 0)) < 1e-12);
  CHECK(std::abs(xz.at(1, 3) - cplx(-1, 0)) < 1e-12);
  CHECK(std::abs(xz.at(0, 0)) < 1e-12);
}

TEST_CASE("global-phase comparison accepts phases and rejects content changes") {
  const Mat t = gate_unitary(Gate::T);
  Mat rotated = t;
  const cplx phase = std::polar(1.0, 1.234);
  for (cplx& v : rotated.a) v *= phase;
  CHECK(equal_up_to_global_phase(rotated, t, 1e-12));
  CHECK(!equal_up_to_global_phase(gate_unitary(Gate::S), t, 1e-9));
  CHECK(!equal_up_to_global_phase(gate_unitary(Gate::X), gate_unitary(Gate::Z), 1e-9));
}

TEST_CASE("pair slots expand to Hadamard-led gate lists with stable codes") {
  for (PairSlot p : {PairSlot::HI, PairSlot::HT, PairSlot::HTdg, PairSlot::HT2, PairSlot::HTdg2}) {
    const auto gates = expand_pair(p);
    REQUIRE(!gates.empty());
    CHECK(gates[0] == Gate::H);
    CHECK(pair_from_code(pair_code(p)) == p);
  }
  CHECK(expand_pair(PairSlot::HT2).size() == 3);
  CHECK(expand_pair(PairSlot::HI).size() == 1);

  CHECK(slot_in_alphabet(PairSlot::HT, Alphabet::V));
  CHECK(!slot_in_alphabet(PairSlot::HT2, Alphabet::V));
  CHECK(slot_in_alphabet(PairSlot::HT2, Alphabet::U));
  CHECK(!slot_in_alphabet(PairSlot::HTdg, Alphabet::Mask));
  CHECK(alphabet_slots(Alphabet::V).size() == 3);
  CHECK(alphabet_slots(Alphabet::U).size() == 3);
  CHECK(alphabet_slots(Alphabet::Mask).size() == 2);
}

TEST_CASE("written-order convention: leftmost pair applies last") {
  // [HI, H2] multiplies to H * (H T T) = T^2 = S exactly, pinning both the
  // product direction and the squared-slot expansion.
  const Segment s = segment_from_code(Alphabet::U, "HIH2");
  CHECK(max_abs_diff(segment_unitary(s), to_mat(kSGate)) < 1e-12);

  // The reversed word is H S H, an X-axis quarter turn, not S.
  const Segment r = segment_from_code(Alphabet::U, "H2HI");
  CHECK(!equal_up_to_global_phase(segment_unitary(r), to_mat(kSGate), 1e-9));
  CHECK(equal_up_to_global_phase(segment_unitary(r), to_mat(mul(mul(kH, kSGate), kH)), 1e-12));
}

TEST_CASE("segment codes round-trip and reject foreign slots") {
  const Segment s = segment_from_code(Alphabet::V, "HIHTHdHT");
  CHECK(segment_code(s) == "HIHTHdHT");
  CHECK(s.pairs.size() == 4);
  CHECK_THROWS_AS(segment_from_code(Alphabet::V, "HIH2"), std::invalid_argument);
  CHECK_THROWS_AS(segment_from_code(Alphabet::Mask, "Hd"), std::invalid_argument);
  CHECK_THROWS_AS(segment_from_code(Alphabet::V, "HIH"), std::invalid_argument);
}

TEST_CASE("statevector index convention: row 0 is the most significant bit") {
  Statevector s = new_state(2);
  apply_single(s, 0, gate_unitary(Gate::X));
  CHECK(std::abs(s.amp[2] - cplx(1, 0)) < 1e-12);  // |10>
  apply_single(s, 1, gate_unitary(Gate::X));
  CHECK(std::abs(s.amp[3] - cplx(1, 0)) < 1e-12);  // |11>

  RandomStream rng(1);
  CHECK(measure_all(s, rng) == "11");
}

TEST_CASE("cnot swaps amplitudes exactly and cz flips the joint sign") {
  Statevector s = new_state(2);
  apply_single(s, 0, gate_unitary(Gate::X));
  apply_cnot(s, 0, 1);
  CHECK(s.amp[3] == cplx(1, 0));  // exact: no arithmetic on amplitudes

  Statevector t = new_state(2);
  apply_single(t, 0, gate_unitary(Gate::H));
  apply_single(t, 1, gate_unitary(Gate::X));
  apply_cz(t, 0, 1);
  CHECK(std::abs(t.amp[1] - cplx(kS, 0)) < 1e-12);   // |01>
  CHECK(std::abs(t.amp[3] + cplx(kS, 0)) < 1e-12);   // -|11>

  // cnot with the control on the lower row.
  Statevector u = new_state(2);
  apply_single(u, 1, gate_unitary(Gate::X));
  apply_cnot(u, 1, 0);
  CHECK(u.amp[3] == cplx(1, 0));
}

TEST_CASE("distribution, marginal, and total variation") {
  Statevector s = new_state(2);
  apply_single(s, 0, gate_unitary(Gate::H));
  const OutcomeDistribution d = distribution(s);
  CHECK(d.p[0] == doctest::Approx(0.5));
  CHECK(d.p[2] == doctest::Approx(0.5));
  CHECK(d.p[1] == doctest::Approx(0.0));

  const OutcomeDistribution m = marginal_first_rows(d, 1);
  CHECK(m.p[0] == doctest::Approx(0.5));
  CHECK(m.p[1] == doctest::Approx(0.5));

  OutcomeDistribution e;
  e.q = 1;
  e.p = {1.0, 0.0};
  OutcomeDistribution f;
  f.q = 1;
  f.p = {0.0, 1.0};
  CHECK(total_variation(e, f) == doctest::Approx(1.0));
  CHECK(total_variation(e, e) == doctest::Approx(0.0));
}

TEST_CASE("measurement sampling matches the distribution") {
  Statevector s = new_state(1);
  apply_single(s, 0, gate_unitary(Gate::H));
  RandomStream rng(2024);
  int ones = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i)
    if (measure_all(s, rng) == "1") ++ones;
  const double rate = static_cast<double>(ones) / n;
  CHECK(std::abs(rate - 0.5) < 3.0 * std::sqrt(0.25 / n));
}

TEST_CASE("circuit_unitary reconstructs a known two-row matrix") {
  const Mat u = circuit_unitary(2, [](Statevector& s) { apply_cnot(s, 0, 1); });
  Mat cnot(4);
  cnot.at(0, 0) = 1;
  cnot.at(1, 1) = 1;
  cnot.at(2, 3) = 1;
  cnot.at(3, 2) = 1;
  CHECK(max_abs_diff(u, cnot) < 1e-12);
}

TEST_CASE("circuit json round-trips and validation rejects bad shapes") {
  LogicalCircuit c;
  c.q = 3;
  c.ops = {CircuitOp::single(0, Gate::H), CircuitOp::cnot(0, 1), CircuitOp::cz(1, 2),
           CircuitOp::single(2, Gate::Tdg)};
  const LogicalCircuit back = circuit_from_json(circuit_to_json(c));
  CHECK(back == c);

  LogicalCircuit bad = c;
  bad.ops.push_back(CircuitOp::cnot(0, 2));
  CHECK_THROWS_AS(validate_circuit(bad), std::invalid_argument);
  bad = c;
  bad.ops.push_back(CircuitOp::single(5, Gate::X));
  CHECK_THROWS_AS(validate_circuit(bad), std::invalid_argument);
  bad = c;
  bad.q = 0;
  CHECK_THROWS_AS(validate_circuit(bad), std::invalid_argument);
}

TEST_CASE("random circuits validate and simulate") {
  RandomStream rng(5);
  for (int i = 0; i < 25; ++i) {
    const LogicalCircuit c = random_circuit(rng, 1 + static_cast<int>(rng.bounded(4)), 10);
    CHECK_NOTHROW(validate_circuit(c));
    const Statevector s = simulate(c);
    CHECK(std::abs(norm(s) - 1.0) < 1e-9);
  }
}

TEST_CASE("library pair algebra agrees with the independent oracle") {
  RandomStream rng(17);
  for (int rep = 0; rep < 50; ++rep) {
    const int width = 1 + static_cast<int>(rng.bounded(8));
    std::vector<int> digits;
    Segment seg;
    seg.alphabet = Alphabet::V;
    for (int k = 0; k < width; ++k) {
      const int d = static_cast<int>(rng.bounded(3));
      digits.push_back(d);
      seg.pairs.push_back(alphabet_slots(Alphabet::V)[static_cast<size_t>(d)]);
    }
    CHECK(max_abs_diff(segment_unitary(seg), to_mat(word_product(digits))) < 1e-12);
  }
}

TEST_CASE("single-pair pitfalls: one HI pair is a Hadamard, two are identity") {
  const Segment one = segment_from_code(Alphabet::V, "HI");
  CHECK(equal_up_to_global_phase(segment_unitary(one), to_mat(kH), 1e-12));
  CHECK(!equal_up_to_global_phase(segment_unitary(one), Mat::identity(2), 1e-9));
  const Segment two = segment_from_code(Alphabet::V, "HIHI");
  CHECK(max_abs_diff(segment_unitary(two), Mat::identity(2)) < 1e-12);
}

TEST_CASE("eighth-turn ladder: four HTHI blocks make X, eight make identity") {
  const Segment four = segment_from_code(Alphabet::V, "HTHIHTHIHTHIHTHI");
  CHECK(max_abs_diff(segment_unitary(four), to_mat(kX)) < 1e-12);
  Segment eight = four;
  eight.pairs.insert(eight.pairs.end(), four.pairs.begin(), four.pairs.end());
  CHECK(max_abs_diff(segment_unitary(eight), Mat::identity(2)) < 1e-12);
}

TEST_CASE("minimal word widths found by exhaustive search") {
  const std::array<std::pair<const M2*, int>, 8> expect = {{
      {&kI, 2}, {&kH, 1}, {&kT, 2}, {&kTdg, 2}, {&kSGate, 4}, {&kSdg, 4}, {&kX, 8}, {&kZ, 8},
  }};
  for (const auto& [target, minw] : expect) {
    for (int w = 1; w < minw; ++w) CHECK(first_solution(*target, w).empty());
    CHECK(!first_solution(*target, minw).empty());
  }
}

TEST_CASE("fixed gate words are the first width-8 search solutions") {
  const std::array<std::pair<Gate, const M2*>, 8> targets = {{
      {Gate::I, &kI}, {Gate::H, &kH}, {Gate::T, &kT}, {Gate::Tdg, &kTdg},
      {Gate::S, &kSGate}, {Gate::Sdg, &kSdg}, {Gate::X, &kX}, {Gate::Z, &kZ},
  }};
  for (const auto& [gate, target] : targets) {
    const Segment& entry = decompose_single(gate);
    REQUIRE(entry.pairs.size() == static_cast<size_t>(kDecomposeWidth));
    CHECK(segment_code(entry) == first_solution(*target, kDecomposeWidth));
    // And the entry really is proportional to its gate.
    CHECK(equal_up_to_global_phase(segment_unitary(entry), to_mat(*target), 1e-12));
  }
}
