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

#include "bwlab/protocol.hpp"

#include <array>
#include <sstream>
#include <stdexcept>

#include "bwlab/version.hpp"

namespace bwlab {

namespace {

/// 2x2 action of one pair slot (written-order product of its gate list).
const Mat& pair_mat(PairSlot p) {
  static const std::array<Mat, 5> mats = {
      pair_unitary(PairSlot::HI), pair_unitary(PairSlot::HT), pair_unitary(PairSlot::HTdg),
      pair_unitary(PairSlot::HT2), pair_unitary(PairSlot::HTdg2)};
  return mats[static_cast<size_t>(p)];
}

void apply_to_pair_register(std::array<cplx, 2>& reg, PairSlot p) {
  const Mat& u = pair_mat(p);
  const cplx a0 = reg[0];
  const cplx a1 = reg[1];
  reg[0] = u.at(0, 0) * a0 + u.at(0, 1) * a1;
  reg[1] = u.at(1, 0) * a0 + u.at(1, 1) * a1;
}

void check_round(const Shape& s, int round) {
  if (round < 0 || round >= total_rounds(s)) throw std::invalid_argument("round out of range");
}

}  // namespace

std::string server_name(ServerId id) {
  return (id.side == Side::A ? "A" : "B") + std::to_string(id.index);
}

ServerId server_from_name(std::string_view name) {
  if (name.size() < 2 || (name[0] != 'A' && name[0] != 'B'))
    throw std::invalid_argument("server name must look like A3 or B1");
  ServerId id;
  id.side = (name[0] == 'A') ? Side::A : Side::B;
  int idx = 0;
  for (size_t i = 1; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9')
      throw std::invalid_argument("server name must look like A3 or B1");
    idx = idx * 10 + (name[i] - '0');
  }
  if (idx < 1) throw std::invalid_argument("server index starts at 1");
  id.index = idx;
  return id;
}

int rounds_per_column(const Shape& s) { return s.m / 2 + 4; }

int gate_rounds(const Shape& s) { return s.p * rounds_per_column(s); }

int total_rounds(const Shape& s) { return gate_rounds(s) + 2 * s.N; }

ServerId executor_of_round(const Shape& s, int round) {
  check_round(s, round);
  return {Side::A, round % s.N + 1};
}

ServerId forwarder_of_round(const Shape& s, int round) {
  check_round(s, round);
  return {Side::B, round % s.N + 1};
}

ServerId measuring_server(const Shape& s) { return executor_of_round(s, total_rounds(s) - 1); }

int window_first_round(const Shape& s, const WindowRef& ref) {
  const int rpc = rounds_per_column(s);
  switch (ref.kind) {
    case WindowKind::GateV: return ref.col * rpc + ref.slot * s.W;
    case WindowKind::GateUPre: return ref.col * rpc + s.m / 2;
    case WindowKind::GateUPost: return ref.col * rpc + s.m / 2 + 2;
    case WindowKind::Mask: return gate_rounds(s) + 2 * ref.slot;
  }
  throw std::invalid_argument("unknown window kind");
}

Schedule build_schedule(const PublicProgram& pub) {
  const Shape& s = pub.shape;
  Schedule sched;
  sched.shape = s;
  sched.slots.resize(static_cast<size_t>(total_rounds(s)));
  sched.cz.resize(static_cast<size_t>(total_rounds(s)));
  for (size_t w = 0; w < pub.windows.size(); ++w) {
    const int first = window_first_round(s, pub.windows[w].ref);
    for (int t = 0; t < pub.windows[w].width; ++t)
      sched.slots[static_cast<size_t>(first + t)].push_back({static_cast<int>(w), t});
  }
  const int rpc = rounds_per_column(s);
  for (const CzEvent& e : pub.cz) {
    const int round = e.col * rpc + s.m / 2 + 1 + 2 * e.phase;
    sched.cz[static_cast<size_t>(round)].push_back(e);
  }
  return sched;
}

RunResult run(const ObfuscatedProgram& prog, uint64_t run_seed) {
  const PublicProgram& pub = prog.pub;
  const Shape& s = pub.shape;
  const Schedule sched = build_schedule(pub);
  RandomStream rng(run_seed);

  Statevector state = new_state(s.n);

  // Dummy tracks evolve as detached two-level registers: gate-window dummies
  // are fresh per window, mask-stream dummies persist across the row.
  std::vector<std::vector<std::array<cplx, 2>>> gate_dummy(pub.windows.size());
  std::vector<std::array<std::array<cplx, 2>, 4>> mask_dummy(
      static_cast<size_t>(s.n), {{{1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}, {1.0, 0.0}}});

  RunResult rr;
  rr.shape = s;
  rr.measuring = measuring_server(s);
  rr.transcripts.resize(static_cast<size_t>(2 * s.N));
  for (int i = 0; i < s.N; ++i) {
    rr.transcripts[static_cast<size_t>(i)].id = {Side::A, i + 1};
    rr.transcripts[static_cast<size_t>(s.N + i)].id = {Side::B, i + 1};
  }

  const int total = total_rounds(s);
  for (int r = 0; r < total; ++r) {
    const int ai = r % s.N;
    auto& a_entries = rr.transcripts[static_cast<size_t>(ai)].entries;
    auto& b_entries = rr.transcripts[static_cast<size_t>(s.N + ai)].entries;

    for (const RoundSlot& slot : sched.slots[static_cast<size_t>(r)]) {
      const PublicWindow& w = pub.windows[static_cast<size_t>(slot.window)];
      const int written = w.width - 1 - slot.exec_index;
      const int real_track = prog.sec.real_index[static_cast<size_t>(slot.window)];
      if (w.ref.kind != WindowKind::Mask && gate_dummy[static_cast<size_t>(slot.window)].empty())
        gate_dummy[static_cast<size_t>(slot.window)].assign(w.tracks.size(), {1.0, 0.0});
      for (size_t track = 0; track < w.tracks.size(); ++track) {
        const PairSlot pair = w.tracks[track].pairs[static_cast<size_t>(written)];
        TranscriptEntry e;
        e.round = r;
        e.kind = TranscriptEntry::Kind::Pair;
        e.window = slot.window;
        e.track = static_cast<int>(track);
        e.pair = pair;
        a_entries.push_back(std::move(e));
        if (static_cast<int>(track) == real_track) {
          apply_single(state, w.ref.row, pair_mat(pair));
        } else if (w.ref.kind == WindowKind::Mask) {
          apply_to_pair_register(mask_dummy[static_cast<size_t>(w.ref.row)][track], pair);
        } else {
          apply_to_pair_register(gate_dummy[static_cast<size_t>(slot.window)][track], pair);
        }
      }
    }

    for (const CzEvent& e : sched.cz[static_cast<size_t>(r)]) {
      TranscriptEntry t;
      t.round = r;
      t.kind = TranscriptEntry::Kind::Cz;
      t.col = e.col;
      t.upper_row = e.upper_row;
      t.phase = e.phase;
      a_entries.push_back(std::move(t));
      apply_cz(state, e.upper_row, e.upper_row + 1);
    }

    if (r == total - 1) {
      TranscriptEntry t;
      t.round = r;
      t.kind = TranscriptEntry::Kind::Measure;
      t.bits = measure_all(state, rng);
      rr.raw_bits = t.bits;
      a_entries.push_back(std::move(t));
    } else {
      TranscriptEntry fa;
      fa.round = r;
      fa.kind = TranscriptEntry::Kind::Forward;
      fa.to = server_name({Side::B, ai + 1});
      a_entries.push_back(std::move(fa));
      TranscriptEntry fb;
      fb.round = r;
      fb.kind = TranscriptEntry::Kind::Forward;
      fb.to = server_name({Side::A, (r + 1) % s.N + 1});
      b_entries.push_back(std::move(fb));
    }
  }
  return rr;
}

DecodedOutput decode(const ObfuscatedProgram& prog, const std::string& raw_bits) {
  const int n = prog.pub.shape.n;
  if (static_cast<int>(raw_bits.size()) != n)
    throw std::invalid_argument("raw bit string length does not match the row count");
  DecodedOutput out;
  out.decoded.resize(static_cast<size_t>(n));
  for (int r = 0; r < n; ++r) {
    const int raw = raw_bits[static_cast<size_t>(r)] - '0';
    if (raw != 0 && raw != 1) throw std::invalid_argument("raw bits must be 0/1 characters");
    out.decoded[static_cast<size_t>(r)] =
        static_cast<char>('0' + (raw ^ prog.sec.masks[static_cast<size_t>(r)].b));
  }
  out.logical = out.decoded.substr(0, static_cast<size_t>(prog.sec.q));
  return out;
}

OutcomeDistribution exact_decoded_distribution(const ObfuscatedProgram& prog) {
  const PublicProgram& pub = prog.pub;
  const Shape& s = pub.shape;
  const Schedule sched = build_schedule(pub);
  Statevector state = new_state(s.n);
  for (int r = 0; r < total_rounds(s); ++r) {
    for (const RoundSlot& slot : sched.slots[static_cast<size_t>(r)]) {
      const PublicWindow& w = pub.windows[static_cast<size_t>(slot.window)];
      const int written = w.width - 1 - slot.exec_index;
      const int real_track = prog.sec.real_index[static_cast<size_t>(slot.window)];
      const PairSlot pair = w.tracks[static_cast<size_t>(real_track)].pairs[static_cast<size_t>(written)];
      apply_single(state, w.ref.row, pair_mat(pair));
    }
    for (const CzEvent& e : sched.cz[static_cast<size_t>(r)])
      apply_cz(state, e.upper_row, e.upper_row + 1);
  }
  const OutcomeDistribution raw = distribution(state);
  size_t bmask = 0;
  for (int r = 0; r < s.n; ++r)
    if (prog.sec.masks[static_cast<size_t>(r)].b) bmask |= size_t{1} << (s.n - 1 - r);
  OutcomeDistribution dec;
  dec.q = raw.q;
  dec.p.resize(raw.p.size());
  for (size_t i = 0; i < raw.p.size(); ++i) dec.p[i] = raw.p[i ^ bmask];
  return dec;
}

double estimate_leak_time(int colluders, double seconds_per_round) {
  if (colluders < 0) throw std::invalid_argument("colluder count must be nonnegative");
  if (!(seconds_per_round > 0.0))
    throw std::invalid_argument("seconds per round must be positive");
  return (colluders + 1) * seconds_per_round;
}

nlohmann::json run_to_json(const RunResult& rr, const DecodedOutput& dec, uint64_t run_seed) {
  nlohmann::json j;
  j["format"] = std::string(kRunFormat);
  j["version"] = std::string(kVersion);
  j["run_seed"] = run_seed;
  j["shape"] = shape_to_json(rr.shape);
  j["raw_bits"] = rr.raw_bits;
  j["measuring"] = server_name(rr.measuring);
  j["decoded"] = dec.decoded;
  j["logical"] = dec.logical;
  return j;
}

std::string transcripts_to_jsonl(const RunResult& rr) {
  std::string out;
  for (const ServerTranscript& st : rr.transcripts) {
    const std::string name = server_name(st.id);
    for (const TranscriptEntry& e : st.entries) {
      nlohmann::json j;
      j["server"] = name;
      j["round"] = e.round;
      switch (e.kind) {
        case TranscriptEntry::Kind::Pair:
          j["kind"] = "pair";
          j["window"] = e.window;
          j["track"] = e.track;
          j["pair"] = std::string(pair_code(e.pair));
          break;
        case TranscriptEntry::Kind::Cz:
          j["kind"] = "cz";
          j["col"] = e.col;
          j["upper_row"] = e.upper_row;
          j["phase"] = e.phase;
          break;
        case TranscriptEntry::Kind::Forward:
          j["kind"] = "forward";
          j["to"] = e.to;
          break;
        case TranscriptEntry::Kind::Measure:
          j["kind"] = "measure";
          j["bits"] = e.bits;
          break;
      }
      out += j.dump();
      out += '\n';
    }
  }
  return out;
}

RunResult run_from_artifacts(const nlohmann::json& run_json, const std::string& jsonl) {
  if (run_json.at("format").get<std::string>() != kRunFormat)
    throw std::invalid_argument("not a run artifact file");
  RunResult rr;
  rr.shape = shape_from_json(run_json.at("shape"));
  rr.raw_bits = run_json.at("raw_bits").get<std::string>();
  rr.measuring = server_from_name(run_json.at("measuring").get<std::string>());
  rr.transcripts.resize(static_cast<size_t>(2 * rr.shape.N));
  for (int i = 0; i < rr.shape.N; ++i) {
    rr.transcripts[static_cast<size_t>(i)].id = {Side::A, i + 1};
    rr.transcripts[static_cast<size_t>(rr.shape.N + i)].id = {Side::B, i + 1};
  }
  std::istringstream in(jsonl);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const nlohmann::json j = nlohmann::json::parse(line);
    const ServerId id = server_from_name(j.at("server").get<std::string>());
    if (id.index > rr.shape.N) throw std::invalid_argument("server index exceeds the shape");
    const size_t ti = static_cast<size_t>((id.side == Side::A ? 0 : rr.shape.N) + id.index - 1);
    TranscriptEntry e;
    e.round = j.at("round").get<int>();
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "pair") {
      e.kind = TranscriptEntry::Kind::Pair;
      e.window = j.at("window").get<int>();
      e.track = j.at("track").get<int>();
      e.pair = pair_from_code(j.at("pair").get<std::string>());
    } else if (kind == "cz") {
      e.kind = TranscriptEntry::Kind::Cz;
      e.col = j.at("col").get<int>();
      e.upper_row = j.at("upper_row").get<int>();
      e.phase = j.at("phase").get<int>();
    } else if (kind == "forward") {
      e.kind = TranscriptEntry::Kind::Forward;
      e.to = j.at("to").get<std::string>();
    } else if (kind == "measure") {
      e.kind = TranscriptEntry::Kind::Measure;
      e.bits = j.at("bits").get<std::string>();
    } else {
      throw std::invalid_argument("unknown transcript entry kind: " + kind);
    }
    rr.transcripts[ti].entries.push_back(std::move(e));
  }
  return rr;
}

}  // namespace bwlab
