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

#include "bwlab/adversary.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "bwlab/brickwork.hpp"

namespace bwlab {

namespace {

uint64_t fnv1a(std::string_view s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

void validate_ids(const Shape& s, const std::vector<ServerId>& ids) {
  if (ids.empty()) throw std::invalid_argument("colluder set must be nonempty");
  std::set<std::pair<int, int>> seen;
  for (ServerId id : ids) {
    if (id.index < 1 || id.index > s.N)
      throw std::invalid_argument("server index exceeds the server count");
    if (!seen.insert({id.side == Side::A ? 0 : 1, id.index}).second)
      throw std::invalid_argument("colluder set has duplicates");
  }
}

long long choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

constexpr int kPerms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};

}  // namespace

CollusionView collude(const RunResult& rr, const std::vector<ServerId>& ids) {
  const Shape& s = rr.shape;
  validate_ids(s, ids);
  CollusionView view;
  view.servers = ids;
  std::sort(view.servers.begin(), view.servers.end());
  view.has_measuring =
      std::find(view.servers.begin(), view.servers.end(), rr.measuring) != view.servers.end();
  if (view.has_measuring) view.reported_bits = rr.raw_bits;

  // rr.transcripts is already in canonical global order (A1..AN, B1..BN).
  std::vector<const ServerTranscript*> sel;
  for (const ServerTranscript& st : rr.transcripts)
    for (ServerId id : view.servers)
      if (st.id == id) sel.push_back(&st);
  std::vector<size_t> cursor(sel.size(), 0);
  for (int r = 0; r < total_rounds(s); ++r) {
    for (size_t k = 0; k < sel.size(); ++k) {
      const auto& entries = sel[k]->entries;
      size_t& cur = cursor[k];
      while (cur < entries.size() && entries[cur].round == r) {
        view.entries.push_back({server_name(sel[k]->id), entries[cur]});
        ++cur;
      }
    }
  }
  return view;
}

std::vector<MaskCell> view_mask_cells(const CollusionView& view, const PublicProgram& pub) {
  const Shape& s = pub.shape;
  const int g = gate_rounds(s);
  std::vector<MaskCell> cells;
  for (const ViewEntry& ve : view.entries) {
    const TranscriptEntry& e = ve.entry;
    if (e.kind != TranscriptEntry::Kind::Pair) continue;
    const PublicWindow& w = pub.windows.at(static_cast<size_t>(e.window));
    if (w.ref.kind != WindowKind::Mask) continue;
    MaskCell c;
    c.row = w.ref.row;
    c.sid = e.track;
    c.block = w.ref.slot;
    const int exec = e.round - g - 2 * c.block;
    c.wpos = w.width - 1 - exec;
    c.pair = e.pair;
    cells.push_back(c);
  }
  std::sort(cells.begin(), cells.end(), [](const MaskCell& a, const MaskCell& b) {
    return std::tie(a.row, a.block, a.wpos, a.sid) < std::tie(b.row, b.block, b.wpos, b.sid);
  });
  return cells;
}

std::vector<std::pair<int, int>> observed_mask_positions(const Shape& s,
                                                         const std::vector<ServerId>& ids) {
  validate_ids(s, ids);
  const int g = gate_rounds(s);
  std::set<std::pair<int, int>> out;
  for (int block = 0; block < s.N; ++block) {
    for (int exec = 0; exec < 2; ++exec) {
      const ServerId ex = executor_of_round(s, g + 2 * block + exec);
      for (ServerId id : ids)
        if (id == ex) out.insert({block, 1 - exec});
    }
  }
  return {out.begin(), out.end()};
}

bool includes_measuring(const Shape& s, const std::vector<ServerId>& ids) {
  const ServerId m = measuring_server(s);
  for (ServerId id : ids)
    if (id == m) return true;
  return false;
}

std::vector<ServerId> colluders_for_final_rounds(const Shape& s, int count) {
  if (count < 1 || count > s.N)
    throw std::invalid_argument("final-round colluder count must be in [1, N]");
  std::vector<ServerId> out;
  const int total = total_rounds(s);
  for (int r = total - count; r < total; ++r) out.push_back(executor_of_round(s, r));
  return out;
}

std::string view_feature(const CollusionView& view, const PublicProgram& pub, ViewScope scope) {
  const Shape& s = pub.shape;
  if (scope == ViewScope::GateWindowsOnly) {
    std::string buf;
    for (const ViewEntry& ve : view.entries) {
      const TranscriptEntry& e = ve.entry;
      if (e.kind != TranscriptEntry::Kind::Pair) continue;
      if (pub.windows.at(static_cast<size_t>(e.window)).ref.kind == WindowKind::Mask) continue;
      buf += std::to_string(e.window);
      buf += ':';
      buf += std::to_string(e.track);
      buf += ':';
      buf += pair_code(e.pair);
      buf += ';';
    }
    return "g" + hex64(fnv1a(buf));
  }

  // Per (row, stream, block): what was seen and whether the first written
  // position turned.
  struct BlockObs {
    bool seen0 = false;
    bool seen1 = false;
    bool x0 = false;
    bool hi1 = true;
  };
  std::vector<BlockObs> obs(static_cast<size_t>(s.n) * 4 * static_cast<size_t>(s.N));
  auto at = [&](int row, int sid, int block) -> BlockObs& {
    return obs[(static_cast<size_t>(row) * 4 + static_cast<size_t>(sid)) * static_cast<size_t>(s.N) +
               static_cast<size_t>(block)];
  };
  for (const MaskCell& c : view_mask_cells(view, pub)) {
    BlockObs& bo = at(c.row, c.sid, c.block);
    if (c.wpos == 0) {
      bo.seen0 = true;
      bo.x0 = (c.pair == PairSlot::HT);
    } else {
      bo.seen1 = true;
      bo.hi1 = bo.hi1 && (c.pair == PairSlot::HI);
    }
  }

  std::string out;
  for (int row = 0; row < s.n; ++row) {
    // A stream can be the real one only if it never turns at the second
    // written position; summarize each surviving stream by its turn counts.
    std::vector<std::pair<int, int>> cands;
    for (int sid = 0; sid < 4; ++sid) {
      bool cand = true;
      int full_x = 0;
      int half_x = 0;
      for (int block = 0; block < s.N; ++block) {
        const BlockObs& bo = at(row, sid, block);
        if (bo.seen1 && !bo.hi1) {
          cand = false;
          break;
        }
        if (bo.seen0 && bo.seen1)
          full_x += bo.x0 ? 1 : 0;
        else if (bo.seen0)
          half_x += bo.x0 ? 1 : 0;
      }
      if (cand) cands.emplace_back(full_x, half_x);
    }
    std::sort(cands.begin(), cands.end());
    out += 'r';
    out += std::to_string(row);
    out += '[';
    for (const auto& c : cands) {
      out += '(';
      out += std::to_string(c.first);
      out += ',';
      out += std::to_string(c.second);
      out += ')';
    }
    out += ']';
    out += view.has_measuring ? view.reported_bits[static_cast<size_t>(row)] : '-';
    out += '|';
  }
  return out;
}

void MLAdversary::observe(int which, const std::string& feature) {
  auto& c = counts_[feature];
  if (which == 0)
    ++c.first;
  else
    ++c.second;
}

int MLAdversary::guess(const std::string& feature, RandomStream& tie_rng) const {
  const auto it = counts_.find(feature);
  if (it == counts_.end() || it->second.first == it->second.second) return tie_rng.bit();
  return it->second.first > it->second.second ? 0 : 1;
}

size_t MLAdversary::distinct_features(int which) const {
  size_t n = 0;
  for (const auto& kv : counts_)
    if ((which == 0 ? kv.second.first : kv.second.second) > 0) ++n;
  return n;
}

GameResult run_distinguishing_game(const LogicalCircuit& c0, const LogicalCircuit& c1,
                                   const GameConfig& cfg,
                                   const std::vector<ServerId>& colluders) {
  const Shape s0 = shape_for(c0, cfg.params);
  const Shape s1 = shape_for(c1, cfg.params);
  if (!(s0 == s1))
    throw std::invalid_argument("the two circuits must compile to the same shape");
  validate_ids(s0, colluders);
  if (cfg.trials < 1 || cfg.rehearsal_runs < 0)
    throw std::invalid_argument("game sizes must be positive");

  auto pipeline = [&](const LogicalCircuit& c, uint64_t seed) {
    CompileParams p = cfg.params;
    p.seed = seed;
    const CompiledCircuit cc = compile(c, p);
    const ObfuscatedProgram prog = obfuscate(cc, seed);
    const RunResult rr = run(prog, derive_seed(seed, seed_tag::kRun));
    const CollusionView view = collude(rr, colluders);
    return view_feature(view, prog.pub, cfg.scope);
  };

  MLAdversary adv;
  const uint64_t rehearse_base = derive_seed(cfg.seed, seed_tag::kRehearse);
  for (int arm = 0; arm < 2; ++arm) {
    for (int i = 0; i < cfg.rehearsal_runs; ++i) {
      const uint64_t si =
          derive_seed(rehearse_base, (static_cast<uint64_t>(arm) << 32) | static_cast<uint64_t>(i));
      adv.observe(arm, pipeline(arm ? c1 : c0, si));
    }
  }

  RandomStream challenger(derive_seed(cfg.seed, seed_tag::kChallenger));
  RandomStream tie(derive_seed(cfg.seed, seed_tag::kGuess));
  const uint64_t trial_base = derive_seed(cfg.seed, seed_tag::kTrial);
  GameResult g;
  g.trials = cfg.trials;
  for (int i = 0; i < cfg.trials; ++i) {
    const int tau = challenger.bit();
    const std::string f =
        pipeline(tau ? c1 : c0, derive_seed(trial_base, static_cast<uint64_t>(i)));
    if (adv.guess(f, tie) == tau) ++g.successes;
  }
  g.advantage = static_cast<double>(g.successes) / g.trials - 0.5;
  g.sigma = std::sqrt(0.25 / g.trials);
  g.features_0 = adv.distinct_features(0);
  g.features_1 = adv.distinct_features(1);
  return g;
}

ExactTvResult exact_view_tv(const LogicalCircuit& c0, const LogicalCircuit& c1,
                            const CompileParams& params,
                            const std::vector<ServerId>& colluders, ViewScope scope) {
  const Shape s0 = shape_for(c0, params);
  const Shape s1 = shape_for(c1, params);
  if (!(s0 == s1))
    throw std::invalid_argument("the two circuits must compile to the same shape");
  const Shape& s = s0;
  validate_ids(s, colluders);

  // Structural part: every gate window publishes a permutation of its full
  // alphabet enumeration, so the gate stream's distribution cannot depend on
  // the compiled content. Verify that on both programs.
  const CompiledCircuit cc0 = compile(c0, params);
  const CompiledCircuit cc1 = compile(c1, params);
  const ObfuscatedProgram prog0 = obfuscate(cc0, params.seed);
  const ObfuscatedProgram prog1 = obfuscate(cc1, params.seed);
  auto sorted_codes = [](const PublicWindow& w) {
    std::vector<std::string> v;
    v.reserve(w.tracks.size());
    for (const Segment& t : w.tracks) v.push_back(segment_code(t));
    std::sort(v.begin(), v.end());
    return v;
  };
  for (size_t wi = 0; wi < prog0.pub.windows.size(); ++wi) {
    const PublicWindow& w0 = prog0.pub.windows[wi];
    if (w0.ref.kind == WindowKind::Mask) continue;
    const PublicWindow& w1 = prog1.pub.windows[wi];
    std::vector<std::string> canon;
    for (const Segment& t : enumerate_words(w0.alphabet, w0.width))
      canon.push_back(segment_code(t));
    std::sort(canon.begin(), canon.end());
    if (sorted_codes(w0) != canon || sorted_codes(w1) != canon)
      throw std::logic_error("gate-window track list is not a full enumeration");
  }

  ExactTvResult res;
  res.gate_windows_invariant = true;
  if (scope == ViewScope::GateWindowsOnly) return res;
  if (!includes_measuring(s, colluders)) return res;  // cells alone carry no program dependence

  const auto positions = observed_mask_positions(s, colluders);
  std::map<int, std::pair<bool, bool>> blocks;  // block -> (sees wpos 0, sees wpos 1)
  for (auto [blk, wpos] : positions)
    (wpos == 0 ? blocks[blk].first : blocks[blk].second) = true;
  const int B = static_cast<int>(blocks.size());

  double iterations = 0.0;
  for (int b = 0; b < 2; ++b)
    for (int c : mask_turn_classes(s.N, b))
      iterations += static_cast<double>(choose(s.N, c));
  iterations *= 4.0 * std::pow(6.0, B);
  if (iterations > 1e7)
    throw std::length_error("mask view enumeration exceeds the state cap");

  // Leftover sequences by real content, in canonical lexicographic order.
  auto leftovers_for = [](bool turning) {
    const auto real = mask_block(turning);
    std::vector<std::array<PairSlot, 2>> out;
    for (const Segment& w : enumerate_words(Alphabet::Mask, 2))
      if (!(w.pairs[0] == real[0] && w.pairs[1] == real[1]))
        out.push_back({w.pairs[0], w.pairs[1]});
    return out;
  };
  const auto left_flat = leftovers_for(false);
  const auto left_turn = leftovers_for(true);
  const std::array<std::array<PairSlot, 2>, 2> contents = {mask_block(false), mask_block(true)};

  std::vector<int> blocklist;
  for (const auto& kv : blocks) blocklist.push_back(kv.first);

  // Row-level view weights: key -> P(cells = key AND mask bit = b).
  std::map<std::string, std::array<double, 2>> M;
  for (int b = 0; b < 2; ++b) {
    const std::vector<int> classes = mask_turn_classes(s.N, b);
    const double pb = 0.5;
    const double pc = 1.0 / static_cast<double>(classes.size());
    for (int c : classes) {
      const double ppos = 1.0 / static_cast<double>(choose(s.N, c));
      std::vector<int> comb(static_cast<size_t>(c));
      std::iota(comb.begin(), comb.end(), 0);
      while (true) {
        std::vector<uint8_t> turn(static_cast<size_t>(s.N), 0);
        for (int idx : comb) turn[static_cast<size_t>(idx)] = 1;
        for (int sid = 0; sid < 4; ++sid) {
          std::vector<int> radix(static_cast<size_t>(B), 0);
          while (true) {
            std::string key;
            for (size_t bi = 0; bi < blocklist.size(); ++bi) {
              const int block = blocklist[bi];
              const bool turning = turn[static_cast<size_t>(block)] != 0;
              const auto& real = contents[turning ? 1 : 0];
              const auto& left = turning ? left_turn : left_flat;
              const int* perm = kPerms[radix[bi]];
              std::array<std::array<PairSlot, 2>, 4> stream;
              int k = 0;
              for (int s2 = 0; s2 < 4; ++s2)
                stream[static_cast<size_t>(s2)] =
                    (s2 == sid) ? real : left[static_cast<size_t>(perm[k++])];
              for (int wpos = 0; wpos < 2; ++wpos) {
                const bool seen = (wpos == 0) ? blocks[block].first : blocks[block].second;
                if (!seen) continue;
                key += std::to_string(block);
                key += (wpos == 0) ? 'a' : 'b';
                for (int s2 = 0; s2 < 4; ++s2)
                  key += pair_code(stream[static_cast<size_t>(s2)][static_cast<size_t>(wpos)]);
                key += ';';
              }
            }
            M[key][static_cast<size_t>(b)] +=
                pb * pc * ppos * 0.25 * std::pow(1.0 / 6.0, B);
            ++res.enumerated;
            int bi = B - 1;
            while (bi >= 0 && radix[static_cast<size_t>(bi)] == 5) {
              radix[static_cast<size_t>(bi)] = 0;
              --bi;
            }
            if (bi < 0) break;
            ++radix[static_cast<size_t>(bi)];
          }
        }
        int i = c - 1;
        while (i >= 0 && comb[static_cast<size_t>(i)] == s.N - c + i) --i;
        if (i < 0) break;
        ++comb[static_cast<size_t>(i)];
        for (int j = i + 1; j < c; ++j)
          comb[static_cast<size_t>(j)] = comb[static_cast<size_t>(j - 1)] + 1;
      }
    }
  }

  // Joint output distributions over all n rows (idle rows stay 0).
  auto out_dist_n = [&](const LogicalCircuit& c) {
    const OutcomeDistribution d = output_distribution(c);
    std::vector<double> full(size_t{1} << s.n, 0.0);
    const int pad = s.n - c.q;
    for (size_t i = 0; i < d.p.size(); ++i) full[i << pad] += d.p[i];
    return full;
  };
  const std::vector<double> P0 = out_dist_n(c0);
  const std::vector<double> P1 = out_dist_n(c1);

  // Rows whose outcome bit is deterministic and equal in both programs
  // contribute identical independent view factors; drop them.
  std::vector<int> used;
  for (int r = 0; r < s.n; ++r) {
    double one0 = 0.0;
    double one1 = 0.0;
    for (size_t i = 0; i < P0.size(); ++i) {
      if ((i >> (s.n - 1 - r)) & 1) {
        one0 += P0[i];
        one1 += P1[i];
      }
    }
    const bool det0 = one0 < 1e-12 || one0 > 1.0 - 1e-12;
    const bool det1 = one1 < 1e-12 || one1 > 1.0 - 1e-12;
    if (!(det0 && det1 && std::abs(one0 - one1) < 1e-12)) used.push_back(r);
  }
  if (used.empty()) return res;  // outputs identical and deterministic: tv 0

  const int R = static_cast<int>(used.size());
  std::vector<double> Q0(size_t{1} << R, 0.0);
  std::vector<double> Q1(size_t{1} << R, 0.0);
  for (size_t i = 0; i < P0.size(); ++i) {
    size_t u = 0;
    for (int k = 0; k < R; ++k)
      if ((i >> (s.n - 1 - used[static_cast<size_t>(k)])) & 1) u |= size_t{1} << (R - 1 - k);
    Q0[u] += P0[i];
    Q1[u] += P1[i];
  }

  std::vector<const std::array<double, 2>*> weights;
  weights.reserve(M.size());
  for (const auto& kv : M) weights.push_back(&kv.second);
  const size_t keys = weights.size();
  const double combos = std::pow(static_cast<double>(keys) * 2.0, R);
  if (combos > 1e7) throw std::length_error("view product enumeration exceeds the state cap");

  std::vector<size_t> ki(static_cast<size_t>(R), 0);
  std::vector<int> bi(static_cast<size_t>(R), 0);
  double tvsum = 0.0;
  while (true) {
    double v0 = 0.0;
    double v1 = 0.0;
    for (size_t u = 0; u < Q0.size(); ++u) {
      if (Q0[u] == 0.0 && Q1[u] == 0.0) continue;
      double f = 1.0;
      for (int k = 0; k < R; ++k) {
        const int ur = static_cast<int>(u >> (R - 1 - k)) & 1;
        f *= (*weights[ki[static_cast<size_t>(k)]])[static_cast<size_t>(bi[static_cast<size_t>(k)] ^ ur)];
        if (f == 0.0) break;
      }
      v0 += Q0[u] * f;
      v1 += Q1[u] * f;
    }
    tvsum += std::abs(v0 - v1);
    ++res.enumerated;
    int k = R - 1;
    while (k >= 0) {
      if (bi[static_cast<size_t>(k)] == 0) {
        bi[static_cast<size_t>(k)] = 1;
        break;
      }
      bi[static_cast<size_t>(k)] = 0;
      if (++ki[static_cast<size_t>(k)] < keys) break;
      ki[static_cast<size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }
  res.tv = 0.5 * tvsum;
  return res;
}

AuditReport audit_threshold(const LogicalCircuit& c0, const LogicalCircuit& c1,
                            const GameConfig& cfg) {
  const Shape s = shape_for(c0, cfg.params);
  AuditReport rep;
  rep.shape = s;
  rep.budget = s.K;

  auto a = [](int i) { return ServerId{Side::A, i}; };
  auto b = [](int i) { return ServerId{Side::B, i}; };

  std::vector<std::pair<std::string, std::vector<ServerId>>> templates;
  templates.emplace_back("final-consecutive",
                         colluders_for_final_rounds(s, std::min(s.K, s.N)));
  {
    std::vector<ServerId> lead;
    for (int i = 1; i <= std::min(s.K, s.N); ++i) lead.push_back(a(i));
    templates.emplace_back("leading-consecutive", lead);
  }
  {
    std::vector<ServerId> relay;
    for (int i = 1; i <= std::min(s.K, s.N); ++i) relay.push_back(b(i));
    templates.emplace_back("relay-only", relay);
  }
  {
    std::vector<ServerId> alt;
    for (int i = 0; i < s.K; ++i) {
      const int idx = i / 2 + 1;
      if (idx > s.N) break;
      alt.push_back(i % 2 ? b(idx) : a(idx));
    }
    templates.emplace_back("alternating", alt);
  }
  {
    RandomStream rng(derive_seed(cfg.seed, seed_tag::kAudit));
    std::vector<ServerId> all;
    for (int i = 1; i <= s.N; ++i) all.push_back(a(i));
    for (int i = 1; i <= s.N; ++i) all.push_back(b(i));
    rng.shuffle(all);
    all.resize(static_cast<size_t>(std::min(s.K, 2 * s.N)));
    templates.emplace_back("random", all);
  }
  {
    std::vector<ServerId> all;
    for (int i = 1; i <= s.N; ++i) all.push_back(a(i));
    for (int i = 1; i <= s.N; ++i) all.push_back(b(i));
    templates.emplace_back("all-servers", all);
  }

  bool consistent = true;
  int leaks_in_budget = 0;
  for (auto& [name, ids] : templates) {
    AuditCase ac;
    ac.name = name;
    for (ServerId id : ids) ac.colluders.push_back(server_name(id));
    ac.game = run_distinguishing_game(c0, c1, cfg, ids);
    try {
      const ExactTvResult tv = exact_view_tv(c0, c1, cfg.params, ids, cfg.scope);
      ac.exact_available = true;
      ac.exact_tv = tv.tv;
    } catch (const std::length_error&) {
      ac.exact_available = false;
    }
    const double noise = 3.0 * ac.game.sigma;
    if (ac.exact_available) {
      ac.ok = ac.game.advantage <= ac.exact_tv / 2.0 + noise;
      if (ac.exact_tv <= 1e-12) {
        ac.verdict = ac.ok ? "blind: exact view distance 0, advantage within noise"
                           : "VIOLATION: advantage above an exactly zero view distance";
      } else {
        ac.verdict = ac.ok ? "bounded: advantage within half the exact view distance"
                           : "VIOLATION: advantage above half the exact view distance";
        if (static_cast<int>(ids.size()) <= s.K && ac.game.advantage > noise) ++leaks_in_budget;
      }
    } else {
      ac.ok = true;
      ac.verdict = (ac.game.advantage > noise)
                       ? "empirical leak detected (exact distance not enumerable)"
                       : "no detectable leak (exact distance not enumerable)";
      if (static_cast<int>(ids.size()) <= s.K && ac.game.advantage > noise) ++leaks_in_budget;
    }
    consistent = consistent && ac.ok;
    rep.cases.push_back(std::move(ac));
  }
  rep.consistent = consistent;
  rep.summary = consistent
                    ? "every colluder template stayed within its exact or statistical bound"
                    : "at least one colluder template exceeded its bound";
  if (leaks_in_budget > 0)
    rep.summary += "; " + std::to_string(leaks_in_budget) +
                   " in-budget template(s) showed the expected bounded mask-stage leak";
  return rep;
}

nlohmann::json game_to_json(const GameResult& g) {
  return {{"trials", g.trials},       {"successes", g.successes},
          {"advantage", g.advantage}, {"sigma", g.sigma},
          {"features_0", g.features_0}, {"features_1", g.features_1}};
}

nlohmann::json audit_to_json(const AuditReport& r) {
  nlohmann::json cases = nlohmann::json::array();
  for (const AuditCase& c : r.cases) {
    nlohmann::json j;
    j["name"] = c.name;
    j["colluders"] = c.colluders;
    j["game"] = game_to_json(c.game);
    j["exact_available"] = c.exact_available;
    if (c.exact_available) j["exact_tv"] = c.exact_tv;
    j["ok"] = c.ok;
    j["verdict"] = c.verdict;
    cases.push_back(std::move(j));
  }
  return {{"shape", shape_to_json(r.shape)},
          {"budget", r.budget},
          {"cases", std::move(cases)},
          {"consistent", r.consistent},
          {"summary", r.summary}};
}

}  // namespace bwlab
