#pragma once

// Test-only utilities: deterministic scrambling, random relabeling, and a
// brute-force structural isomorphism check kept independent of canonical
// keys so it can serve as their oracle.

#include <random>

#include "linkcalc/canonical.hpp"
#include "linkcalc/corpus.hpp"
#include "linkcalc/moves.hpp"
#include "linkcalc/pd.hpp"

namespace testutil {

using namespace linkcalc;

inline LinkDiagram random_relabel(const LinkDiagram& d, std::mt19937& rng) {
  std::set<Arc> arcs;
  for (const auto& x : d.crossings)
    for (Arc a : x.s) arcs.insert(a);
  for (Arc a : d.loops) arcs.insert(a);
  std::vector<Arc> from(arcs.begin(), arcs.end());
  std::vector<Arc> to = from;
  std::shuffle(to.begin(), to.end(), rng);
  // shift labels too, so the codomain is not the same set half the time
  if (rng() % 2 == 0)
    for (Arc& a : to) a += 100;
  std::map<Arc, Arc> perm;
  for (size_t i = 0; i < from.size(); ++i) perm[from[i]] = to[i];
  return relabel_arcs(d, perm);
}

// Apply n random crossing-adding moves (R1Add / R2Add).
inline LinkDiagram scramble(const LinkDiagram& d, std::mt19937& rng, int n, int cap) {
  LinkDiagram cur = d;
  for (int i = 0; i < n; ++i) {
    auto moves = enumerate_moves(cur, cap);
    std::vector<MoveSpec> adds;
    for (const auto& m : moves)
      if (m.kind == MoveKind::R1Add || m.kind == MoveKind::R2Add) adds.push_back(m);
    if (adds.empty()) break;
    cur = apply_move(cur, adds[rng() % adds.size()]);
  }
  return cur;
}

// Orientation-preserving isomorphism by relabeling: backtracking over
// crossing correspondences. Intended for small diagrams only.
inline bool structurally_isomorphic(const LinkDiagram& a, const LinkDiagram& b) {
  int n = a.num_crossings();
  if (n != b.num_crossings()) return false;
  if (a.loops.size() != b.loops.size()) return false;
  if (a.num_components() != b.num_components()) return false;
  std::vector<int> image(n, -1);
  std::vector<bool> used(n, false);
  std::map<Arc, Arc> arc_map;

  std::function<bool(int)> place = [&](int i) -> bool {
    if (i == n) return true;
    for (int j = 0; j < n; ++j) {
      if (used[j]) continue;
      if (a.crossings[i].over_in != b.crossings[j].over_in) continue;
      std::vector<std::pair<Arc, Arc>> added;
      bool ok = true;
      for (int t = 0; t < 4 && ok; ++t) {
        Arc x = a.crossings[i].s[t], y = b.crossings[j].s[t];
        auto it = arc_map.find(x);
        if (it == arc_map.end()) {
          for (auto& [k, v] : arc_map)
            if (v == y) ok = false;  // must stay injective
          if (ok) {
            arc_map[x] = y;
            added.push_back({x, y});
          }
        } else if (it->second != y) {
          ok = false;
        }
      }
      if (ok) {
        used[j] = true;
        image[i] = j;
        if (place(i + 1)) return true;
        used[j] = false;
        image[i] = -1;
      }
      for (auto& [x, y] : added) arc_map.erase(x);
    }
    return false;
  };
  return place(0);
}

}  // namespace testutil
