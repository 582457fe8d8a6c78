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

#include "bwlab/obfuscate.hpp"

#include <algorithm>
#include <stdexcept>

#include "bwlab/version.hpp"

namespace bwlab {

namespace {

std::string_view window_kind_name(WindowKind k) {
  switch (k) {
    case WindowKind::GateV: return "V";
    case WindowKind::GateUPre: return "U_pre";
    case WindowKind::GateUPost: return "U_post";
    case WindowKind::Mask: return "mask";
  }
  throw std::invalid_argument("unknown window kind");
}

WindowKind window_kind_from_name(std::string_view name) {
  if (name == "V") return WindowKind::GateV;
  if (name == "U_pre") return WindowKind::GateUPre;
  if (name == "U_post") return WindowKind::GateUPost;
  if (name == "mask") return WindowKind::Mask;
  throw std::invalid_argument("unknown window kind: " + std::string(name));
}

/// Canonical program order of all window positions for a shape.
std::vector<WindowRef> window_refs(const Shape& s) {
  std::vector<WindowRef> refs;
  refs.reserve(window_count(s));
  const int v_slots = (s.m / 2) / s.W;
  for (int col = 0; col < s.p; ++col) {
    for (int slot = 0; slot < v_slots; ++slot)
      for (int row = 0; row < s.n; ++row)
        refs.push_back({WindowKind::GateV, col, row, slot, -1});
    const int first = (col % 2 == 0) ? 0 : 1;
    const int last = (col % 2 == 0) ? s.n - 2 : s.n - 3;
    for (int phase = 0; phase < 2; ++phase) {
      const WindowKind kind = (phase == 0) ? WindowKind::GateUPre : WindowKind::GateUPost;
      for (int upper = first; upper <= last; upper += 2) {
        refs.push_back({kind, col, upper, 0, upper});
        refs.push_back({kind, col, upper + 1, 0, upper});
      }
    }
  }
  for (int block = 0; block < s.N; ++block)
    for (int row = 0; row < s.n; ++row)
      refs.push_back({WindowKind::Mask, -1, row, block, -1});
  return refs;
}

/// Written-order real content of a window position.
Segment real_content(const CompiledCircuit& cc, const WindowRef& ref) {
  const Shape& s = cc.shape;
  switch (ref.kind) {
    case WindowKind::GateV: {
      const Segment& seg = cc.layout.v[static_cast<size_t>(ref.col)][static_cast<size_t>(ref.row)];
      const int cap = s.m / 2;
      const int lo = cap - (ref.slot + 1) * s.W;
      Segment out;
      out.alphabet = Alphabet::V;
      out.pairs.assign(seg.pairs.begin() + lo, seg.pairs.begin() + lo + s.W);
      return out;
    }
    case WindowKind::GateUPre:
    case WindowKind::GateUPost: {
      BrickKind kind = BrickKind::Identity;
      for (const Brick& b : cc.layout.bricks[static_cast<size_t>(ref.col)])
        if (b.upper_row == ref.upper_row) kind = b.kind;
      const auto units = brick_units(kind);
      const bool lower = ref.row != ref.upper_row;
      const int idx = (ref.kind == WindowKind::GateUPre ? 0 : 2) + (lower ? 1 : 0);
      return units[static_cast<size_t>(idx)];
    }
    case WindowKind::Mask: {
      const RowMask& mask = cc.masks[static_cast<size_t>(ref.row)];
      const auto block = mask_block(mask.x[static_cast<size_t>(ref.slot)] != 0);
      Segment out;
      out.alphabet = Alphabet::Mask;
      out.pairs = {block[0], block[1]};
      return out;
    }
  }
  throw std::invalid_argument("unknown window kind");
}

nlohmann::json window_to_json(const PublicWindow& w) {
  nlohmann::json j;
  j["kind"] = std::string(window_kind_name(w.ref.kind));
  j["alphabet"] = std::string(alphabet_name(w.alphabet));
  j["width"] = w.width;
  switch (w.ref.kind) {
    case WindowKind::GateV:
      j["col"] = w.ref.col;
      j["row"] = w.ref.row;
      j["slot"] = w.ref.slot;
      break;
    case WindowKind::GateUPre:
    case WindowKind::GateUPost:
      j["col"] = w.ref.col;
      j["row"] = w.ref.row;
      j["upper_row"] = w.ref.upper_row;
      break;
    case WindowKind::Mask:
      j["row"] = w.ref.row;
      j["block"] = w.ref.slot;
      break;
  }
  nlohmann::json tracks = nlohmann::json::array();
  for (const Segment& t : w.tracks) tracks.push_back(segment_code(t));
  j["tracks"] = std::move(tracks);
  return j;
}

PublicWindow window_from_json(const nlohmann::json& j) {
  PublicWindow w;
  w.ref.kind = window_kind_from_name(j.at("kind").get<std::string>());
  w.alphabet = alphabet_from_name(j.at("alphabet").get<std::string>());
  w.width = j.at("width").get<int>();
  switch (w.ref.kind) {
    case WindowKind::GateV:
      w.ref.col = j.at("col").get<int>();
      w.ref.row = j.at("row").get<int>();
      w.ref.slot = j.at("slot").get<int>();
      break;
    case WindowKind::GateUPre:
    case WindowKind::GateUPost:
      w.ref.col = j.at("col").get<int>();
      w.ref.row = j.at("row").get<int>();
      w.ref.upper_row = j.at("upper_row").get<int>();
      break;
    case WindowKind::Mask:
      w.ref.row = j.at("row").get<int>();
      w.ref.slot = j.at("block").get<int>();
      break;
  }
  for (const auto& code : j.at("tracks"))
    w.tracks.push_back(segment_from_code(w.alphabet, code.get<std::string>()));
  for (const Segment& t : w.tracks)
    if (static_cast<int>(t.pairs.size()) != w.width)
      throw std::invalid_argument("track width mismatch in window");
  return w;
}

}  // namespace

nlohmann::json params_to_json(const CompileParams& p) {
  return {{"N", p.N}, {"K", p.K}, {"m", p.m}, {"p", p.p}, {"W", p.W}, {"seed", p.seed}};
}

CompileParams params_from_json(const nlohmann::json& j) {
  CompileParams p;
  p.N = j.at("N").get<int>();
  p.K = j.at("K").get<int>();
  p.m = j.at("m").get<int>();
  p.p = j.at("p").get<int>();
  p.W = j.at("W").get<int>();
  p.seed = j.at("seed").get<uint64_t>();
  return p;
}

nlohmann::json shape_to_json(const Shape& s) {
  return {{"n", s.n}, {"p", s.p}, {"m", s.m}, {"W", s.W}, {"N", s.N}, {"K", s.K}};
}

Shape shape_from_json(const nlohmann::json& j) {
  Shape s;
  s.n = j.at("n").get<int>();
  s.p = j.at("p").get<int>();
  s.m = j.at("m").get<int>();
  s.W = j.at("W").get<int>();
  s.N = j.at("N").get<int>();
  s.K = j.at("K").get<int>();
  return s;
}

std::vector<Segment> enumerate_words(Alphabet a, int width) {
  const auto& slots = alphabet_slots(a);
  const size_t base = slots.size();
  size_t count = 1;
  for (int i = 0; i < width; ++i) count *= base;
  std::vector<Segment> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    Segment s;
    s.alphabet = a;
    s.pairs.resize(static_cast<size_t>(width));
    size_t rem = i;
    for (int k = width - 1; k >= 0; --k) {
      s.pairs[static_cast<size_t>(k)] = slots[rem % base];
      rem /= base;
    }
    out.push_back(std::move(s));
  }
  return out;
}

size_t window_count(const Shape& s) {
  const size_t v = static_cast<size_t>(s.p) * static_cast<size_t>(s.n) *
                   static_cast<size_t>((s.m / 2) / s.W);
  const size_t bricks_even = static_cast<size_t>(s.n) / 2;
  const size_t bricks_odd = static_cast<size_t>(s.n - 2) / 2;
  const size_t bricks = static_cast<size_t>(s.p) / 2 * (bricks_even + bricks_odd);
  const size_t masks = static_cast<size_t>(s.N) * static_cast<size_t>(s.n);
  return v + bricks * 4 + masks;
}

ObfuscatedProgram obfuscate(const CompiledCircuit& cc, uint64_t master_seed) {
  RandomStream rng(derive_seed(master_seed, seed_tag::kObfuscate));
  const Shape& shape = cc.shape;

  ObfuscatedProgram prog;
  prog.pub.version = std::string(kVersion);
  prog.pub.seed = master_seed;
  prog.pub.params = {shape.N, shape.K, shape.m, shape.p, shape.W, master_seed};
  prog.pub.shape = shape;
  prog.sec.q = cc.q;
  prog.sec.masks = cc.masks;
  prog.sec.mask_sid.assign(static_cast<size_t>(shape.n), -1);

  const std::vector<WindowRef> refs = window_refs(shape);
  prog.pub.windows.reserve(refs.size());
  prog.sec.real_index.reserve(refs.size());

  const std::vector<Segment> mask_words = enumerate_words(Alphabet::Mask, 2);

  for (const WindowRef& ref : refs) {
    PublicWindow w;
    w.ref = ref;
    const Segment real = real_content(cc, ref);
    if (ref.kind == WindowKind::Mask) {
      w.alphabet = Alphabet::Mask;
      w.width = 2;
      int& sid = prog.sec.mask_sid[static_cast<size_t>(ref.row)];
      if (sid < 0) sid = static_cast<int>(rng.bounded(4));
      // The three leftover two-pair sequences go to the dummy streams in a
      // fresh random assignment each block; only the real stream id persists
      // across the row.
      std::vector<Segment> leftovers;
      for (const Segment& cand : mask_words)
        if (!(cand.pairs == real.pairs)) leftovers.push_back(cand);
      rng.shuffle(leftovers);
      w.tracks.resize(4);
      w.tracks[static_cast<size_t>(sid)] = real;
      size_t next = 0;
      for (int t = 0; t < 4; ++t)
        if (t != sid) w.tracks[static_cast<size_t>(t)] = leftovers[next++];
      prog.sec.real_index.push_back(sid);
    } else {
      w.alphabet = (ref.kind == WindowKind::GateV) ? Alphabet::V : Alphabet::U;
      w.width = (ref.kind == WindowKind::GateV) ? shape.W : 2;
      w.tracks = enumerate_words(w.alphabet, w.width);
      rng.shuffle(w.tracks);
      int real_index = -1;
      for (size_t t = 0; t < w.tracks.size(); ++t)
        if (w.tracks[t] == real) real_index = static_cast<int>(t);
      if (real_index < 0) throw std::logic_error("real word missing from its enumeration");
      prog.sec.real_index.push_back(real_index);
    }
    prog.pub.windows.push_back(std::move(w));
  }

  for (int col = 0; col < shape.p; ++col)
    for (int phase = 0; phase < 2; ++phase)
      for (const Brick& b : cc.layout.bricks[static_cast<size_t>(col)])
        prog.pub.cz.push_back({col, b.upper_row, phase});

  return prog;
}

nlohmann::json public_to_json(const PublicProgram& pub) {
  nlohmann::json j;
  j["format"] = std::string(kPublicFormat);
  j["version"] = pub.version;
  j["seed"] = pub.seed;
  j["params"] = params_to_json(pub.params);
  j["shape"] = shape_to_json(pub.shape);
  nlohmann::json windows = nlohmann::json::array();
  for (const PublicWindow& w : pub.windows) windows.push_back(window_to_json(w));
  j["windows"] = std::move(windows);
  nlohmann::json cz = nlohmann::json::array();
  for (const CzEvent& e : pub.cz)
    cz.push_back({{"col", e.col}, {"upper_row", e.upper_row}, {"phase", e.phase}});
  j["cz"] = std::move(cz);
  return j;
}

PublicProgram public_from_json(const nlohmann::json& j) {
  if (j.at("format").get<std::string>() != kPublicFormat)
    throw std::invalid_argument("not a public program file");
  PublicProgram pub;
  pub.version = j.at("version").get<std::string>();
  pub.seed = j.at("seed").get<uint64_t>();
  pub.params = params_from_json(j.at("params"));
  pub.shape = shape_from_json(j.at("shape"));
  for (const auto& wj : j.at("windows")) pub.windows.push_back(window_from_json(wj));
  for (const auto& ej : j.at("cz"))
    pub.cz.push_back({ej.at("col").get<int>(), ej.at("upper_row").get<int>(),
                      ej.at("phase").get<int>()});
  if (pub.windows.size() != window_count(pub.shape))
    throw std::invalid_argument("window count does not match the declared shape");
  return pub;
}

nlohmann::json secret_to_json(const ObfuscatedProgram& prog) {
  nlohmann::json j;
  j["format"] = std::string(kSecretFormat);
  j["version"] = prog.pub.version;
  j["seed"] = prog.pub.seed;
  j["q"] = prog.sec.q;
  j["real_index"] = prog.sec.real_index;
  j["mask_sid"] = prog.sec.mask_sid;
  nlohmann::json masks = nlohmann::json::array();
  for (const RowMask& m : prog.sec.masks) {
    nlohmann::json x = nlohmann::json::array();
    for (uint8_t v : m.x) x.push_back(static_cast<int>(v));
    masks.push_back({{"b", m.b}, {"c", m.c}, {"x", std::move(x)}});
  }
  j["masks"] = std::move(masks);
  return j;
}

ObfuscatedProgram attach_secrets(const PublicProgram& pub, const nlohmann::json& secret) {
  if (secret.at("format").get<std::string>() != kSecretFormat)
    throw std::invalid_argument("not a secret data file");
  ObfuscatedProgram prog;
  prog.pub = pub;
  prog.sec.q = secret.at("q").get<int>();
  prog.sec.real_index = secret.at("real_index").get<std::vector<int>>();
  prog.sec.mask_sid = secret.at("mask_sid").get<std::vector<int>>();
  for (const auto& mj : secret.at("masks")) {
    RowMask m;
    m.b = mj.at("b").get<int>();
    m.c = mj.at("c").get<int>();
    for (const auto& v : mj.at("x")) m.x.push_back(static_cast<uint8_t>(v.get<int>()));
    prog.sec.masks.push_back(std::move(m));
  }

  const Shape& s = pub.shape;
  if (prog.sec.q < 1 || prog.sec.q > s.n)
    throw std::invalid_argument("secret register size does not fit the shape");
  if (prog.sec.real_index.size() != pub.windows.size())
    throw std::invalid_argument("secret track indices do not match the window count");
  if (prog.sec.masks.size() != static_cast<size_t>(s.n) ||
      prog.sec.mask_sid.size() != static_cast<size_t>(s.n))
    throw std::invalid_argument("secret mask plan does not match the row count");
  for (size_t i = 0; i < pub.windows.size(); ++i) {
    const PublicWindow& w = pub.windows[i];
    const int ri = prog.sec.real_index[i];
    if (ri < 0 || ri >= static_cast<int>(w.tracks.size()))
      throw std::invalid_argument("secret track index out of range");
    if (w.ref.kind == WindowKind::Mask &&
        ri != prog.sec.mask_sid[static_cast<size_t>(w.ref.row)])
      throw std::invalid_argument("mask stream id disagrees with window track index");
  }
  for (const RowMask& m : prog.sec.masks)
    if (m.x.size() != static_cast<size_t>(s.N))
      throw std::invalid_argument("mask block count does not match the shape");
  return prog;
}

std::string canonical_bytes(const PublicProgram& pub) { return public_to_json(pub).dump(); }

OverheadReport overhead_report(const PublicProgram& pub) {
  OverheadReport r;
  r.windows = static_cast<long long>(pub.windows.size());
  for (const PublicWindow& w : pub.windows) {
    const long long width = w.width;
    const long long tracks = static_cast<long long>(w.tracks.size());
    r.tracks += tracks;
    r.total_pairs += width * tracks;
    if (w.ref.kind == WindowKind::Mask) {
      r.mask_pairs_total += width * tracks;
    } else {
      r.gate_window_real_pairs += width;
      r.gate_window_dummy_pairs += width * (tracks - 1);
    }
    for (const Segment& t : w.tracks)
      for (PairSlot p : t.pairs)
        r.total_physical_gates += static_cast<long long>(expand_pair(p).size());
  }
  return r;
}

}  // namespace bwlab
