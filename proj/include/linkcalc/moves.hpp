#pragma once

// Reidemeister moves on planar diagrams: enumeration of every available move
// site and application as a value-level rewrite. Enumeration order is
// deterministic (sorted by kind, then site labels), so searches replay.

#include "pd.hpp"

namespace linkcalc {

struct StaleSiteError : std::runtime_error {
  explicit StaleSiteError(const std::string& what) : std::runtime_error(what) {}
};

enum class MoveKind { R1Remove, R2Remove, R3, R1Add, R2Add };

inline const char* move_kind_name(MoveKind k) {
  switch (k) {
    case MoveKind::R1Remove: return "R1Remove";
    case MoveKind::R2Remove: return "R2Remove";
    case MoveKind::R3: return "R3";
    case MoveKind::R1Add: return "R1Add";
    case MoveKind::R2Add: return "R2Add";
  }
  return "?";
}

struct MoveSpec {
  MoveKind kind = MoveKind::R1Remove;
  // R1Remove: c0. R2Remove: c0 < c1. R3: corners (c0,s0),(c1,s1),(c2,s2) in
  // face-walk order, slide = which side moves, over = slide the top strand.
  int c0 = -1, c1 = -1, c2 = -1;
  int s0 = -1, s1 = -1, s2 = -1;
  int slide = 0;
  bool over = false;
  // R1Add: arc x, side (0 left, 1 right), sign. R2Add: push x (from its
  // side side_x, or -1 across pieces) over/under y, approaching y on side
  // `side`; turn records the hairpin bend.
  Arc x = 0, y = 0;
  int side = 0;
  int side_x = 0;
  int sign = 0;
  int turn = 0;
  // snapshots of the crossings named by the site, for staleness detection
  std::array<Crossing, 3> snap{};
  int nsnap = 0;

  std::array<int, 15> tuple() const {
    return {static_cast<int>(kind), c0, c1, c2, s0, s1, s2, slide, over ? 1 : 0,
            x,  y,  side, side_x, sign, turn};
  }
  bool operator<(const MoveSpec& o) const { return tuple() < o.tuple(); }
  bool operator==(const MoveSpec& o) const { return tuple() == o.tuple(); }
};

namespace detail {

inline bool has_monogon(const Crossing& x) {
  for (int t = 0; t < 4; ++t)
    if (x.s[t] == x.s[(t + 1) % 4]) return true;
  return false;
}

// connected-piece index per arc (loops are their own pieces)
inline std::map<Arc, int> piece_of_arc(const LinkDiagram& d) {
  int n = d.num_crossings();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto occ = d.occurrences();
  for (auto& [a, ends] : occ)
    if (ends.size() == 2) parent[find(ends[0].crossing)] = find(ends[1].crossing);
  std::map<Arc, int> piece;
  for (auto& [a, ends] : occ) piece[a] = find(ends[0].crossing);
  int next = n;
  for (Arc a : d.loops) piece[a] = next++;
  return piece;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Enumeration.

inline std::vector<MoveSpec> enumerate_moves(const LinkDiagram& d, int max_crossings) {
  std::vector<MoveSpec> out;
  int c = d.num_crossings();
  auto fs = faces(d);

  // R1Remove: one spec per crossing carrying a monogon face.
  for (int i = 0; i < c; ++i) {
    if (detail::has_monogon(d.crossings[i])) {
      MoveSpec m;
      m.kind = MoveKind::R1Remove;
      m.c0 = i;
      m.snap[0] = d.crossings[i];
      m.nsnap = 1;
      out.push_back(m);
    }
  }

  // R2Remove: bigon faces where one side is over at both corners.
  std::set<std::pair<int, int>> seen_pairs;
  auto occ = d.occurrences();
  for (const Face& f : fs) {
    if (f.degree() != 2 || f.corners.empty()) continue;
    int ca = f.corners[0].crossing, cb = f.corners[1].crossing;
    if (ca == cb) continue;
    Arc a0 = f.sides[0].first, a1 = f.sides[1].first;
    auto parity_both = [&](Arc a) -> int {
      const auto& ends = occ.at(a);
      int p0 = ends[0].slot % 2, p1 = ends[1].slot % 2;
      return p0 == p1 ? p0 : -1;
    };
    int pa = parity_both(a0), pb = parity_both(a1);
    if ((pa == 1 && pb == 0) || (pa == 0 && pb == 1)) {
      auto key = std::minmax(ca, cb);
      if (seen_pairs.insert(key).second) {
        MoveSpec m;
        m.kind = MoveKind::R2Remove;
        m.c0 = key.first;
        m.c1 = key.second;
        m.snap[0] = d.crossings[key.first];
        m.snap[1] = d.crossings[key.second];
        m.nsnap = 2;
        out.push_back(m);
      }
    }
  }

  // R3: triangle faces with three distinct crossings; a side whose two ends
  // are both over (or both under) slides across the opposite crossing.
  for (const Face& f : fs) {
    if (f.degree() != 3) continue;
    int x0 = f.corners[0].crossing, x1 = f.corners[1].crossing, x2 = f.corners[2].crossing;
    if (x0 == x1 || x1 == x2 || x0 == x2) continue;
    for (int i = 0; i < 3; ++i) {
      // side i runs corner i -> corner i+1
      int end_a = (f.corners[i].slot + 1) % 4;
      int end_b = f.corners[(i + 1) % 3].slot;
      int pa = end_a % 2, pb = end_b % 2;
      if (pa != pb) continue;
      MoveSpec m;
      m.kind = MoveKind::R3;
      m.c0 = x0;
      m.c1 = x1;
      m.c2 = x2;
      m.s0 = f.corners[0].slot;
      m.s1 = f.corners[1].slot;
      m.s2 = f.corners[2].slot;
      m.slide = i;
      m.over = (pa == 1);
      m.snap[0] = d.crossings[x0];
      m.snap[1] = d.crossings[x1];
      m.snap[2] = d.crossings[x2];
      m.nsnap = 3;
      out.push_back(m);
    }
  }

  // R1Add: every arc, both sides, both chiralities.
  if (c + 1 <= max_crossings) {
    std::set<Arc> arcs;
    for (const auto& x : d.crossings)
      for (Arc a : x.s) arcs.insert(a);
    for (Arc a : d.loops) arcs.insert(a);
    for (Arc a : arcs)
      for (int side = 0; side < 2; ++side)
        for (int sg : {+1, -1}) {
          MoveSpec m;
          m.kind = MoveKind::R1Add;
          m.x = a;
          m.side = side;
          m.sign = sg;
          out.push_back(m);
        }
  }

  // R2Add: ordered pairs of arc-sides meeting along a face (the hairpin's
  // bend is forced by the face geometry: turn = sx != sy), plus every pair
  // of arcs in different connected pieces, where both bends are realizable
  // (any two pieces of a split diagram can be slid together on the sphere).
  if (c + 2 <= max_crossings) {
    std::set<std::tuple<Arc, int, Arc, int, int>> sites;  // x, sx, y, sy, turn
    for (const Face& f : fs) {
      // ordered pairs of boundary positions, including a side with itself
      // (a finger can leave an arc side and land elsewhere on the same side)
      for (size_t i = 0; i < f.sides.size(); ++i)
        for (size_t j = 0; j < f.sides.size(); ++j) {
          auto [x, sx] = f.sides[i];
          auto [y, sy] = f.sides[j];
          sites.insert({x, sx, y, sy, sx != sy ? 1 : 0});
        }
    }
    auto piece = detail::piece_of_arc(d);
    std::vector<Arc> arcs;
    for (auto& [a, p] : piece) arcs.push_back(a);
    for (Arc a : arcs)
      for (Arc b : arcs) {
        if (piece.at(a) == piece.at(b)) continue;
        for (int sy = 0; sy < 2; ++sy)
          for (int turn = 0; turn < 2; ++turn) sites.insert({a, -1, b, sy, turn});
      }
    for (auto& [x, sx, y, sy, turn] : sites)
      for (bool over : {false, true}) {
        MoveSpec m;
        m.kind = MoveKind::R2Add;
        m.x = x;
        m.y = y;
        m.side_x = sx;
        m.side = sy;
        m.over = over;
        m.turn = turn;
        out.push_back(m);
      }
  }

  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Application.

namespace detail {

inline void stale(const std::string& msg) { throw StaleSiteError("stale site: " + msg); }

inline void check_snapshot(const LinkDiagram& d, const MoveSpec& m) {
  const int idx[3] = {m.c0, m.c1, m.c2};
  for (int i = 0; i < m.nsnap; ++i) {
    if (idx[i] < 0 || idx[i] >= d.num_crossings()) stale("crossing index out of range");
    if (!(d.crossings[idx[i]] == m.snap[i])) stale("crossing changed since enumeration");
  }
}

inline LinkDiagram apply_r1_remove(const LinkDiagram& d, const MoveSpec& m, bool check) {
  check_snapshot(d, m);
  const Crossing& x = d.crossings[m.c0];
  if (!has_monogon(x)) stale("no monogon at crossing");
  Surgery s(d);
  s.remove_crossing(m.c0);
  s.merge_arcs(x.under_in(), x.under_out());
  s.merge_arcs(x.over_in_arc(), x.over_out_arc());
  return s.finalize(check);
}

inline LinkDiagram apply_r2_remove(const LinkDiagram& d, const MoveSpec& m, bool check) {
  check_snapshot(d, m);
  bool found = !check;
  for (const Face& f : check ? faces(d) : std::vector<Face>{}) {
    if (f.degree() != 2 || f.corners.empty()) continue;
    std::set<int> cs{f.corners[0].crossing, f.corners[1].crossing};
    if (cs != std::set<int>{m.c0, m.c1}) continue;
    auto occ = d.occurrences();
    auto parity_both = [&](Arc a) -> int {
      const auto& ends = occ.at(a);
      return ends[0].slot % 2 == ends[1].slot % 2 ? ends[0].slot % 2 : -1;
    };
    int pa = parity_both(f.sides[0].first), pb = parity_both(f.sides[1].first);
    if ((pa == 1 && pb == 0) || (pa == 0 && pb == 1)) found = true;
  }
  if (!found) stale("no coherent bigon between the crossings");
  Surgery s(d);
  for (int c : {m.c0, m.c1}) {
    const Crossing& x = d.crossings[c];
    s.remove_crossing(c);
    s.merge_arcs(x.under_in(), x.under_out());
    s.merge_arcs(x.over_in_arc(), x.over_out_arc());
  }
  return s.finalize(check);
}

// R1Add quadruple patterns, strand order a1 -> m -> a2 through the kink:
//   left  +  : (a1, a2, m, m)  over_in 3
//   left  -  : (m, a1, a2, m)  over_in 1
//   right +  : (m, m, a2, a1)  over_in 3
//   right -  : (a1, m, m, a2)  over_in 1
inline LinkDiagram apply_r1_add(const LinkDiagram& d, const MoveSpec& m, bool check) {
  auto occ = d.occurrences();
  bool is_loop = std::find(d.loops.begin(), d.loops.end(), m.x) != d.loops.end();
  if (!is_loop && !occ.count(m.x)) stale("arc does not exist");
  Surgery s(d);
  Arc a1 = m.x, a2, mid = s.fresh_arc();
  if (is_loop) {
    a2 = a1;
    s.drop_loop(a1);
  } else {
    a2 = s.fresh_arc();
    for (ArcEnd e : occ.at(m.x))
      if (d.crossings[e.crossing].is_in_slot(e.slot)) s.set_slot(e.crossing, e.slot, a2);
  }
  Crossing k;
  if (m.side == 0 && m.sign > 0) k = {{a1, a2, mid, mid}, 3};
  else if (m.side == 0) k = {{mid, a1, a2, mid}, 1};
  else if (m.sign > 0) k = {{mid, mid, a2, a1}, 3};
  else k = {{a1, mid, mid, a2}, 1};
  s.add_crossing(k);
  return s.finalize(check);
}

// R2Add: push a finger of x across y from y's `side`. Pieces: x1 -> c1 ->
// xm -> c2 -> x2 along x, y1 -> ym -> y2 along y. With x == y the pushed
// segment is taken upstream of the target segment (x2 and y1 coincide).
inline LinkDiagram apply_r2_add(const LinkDiagram& d, const MoveSpec& m, bool check) {
  auto occ = d.occurrences();
  auto piece = piece_of_arc(d);
  if (!piece.count(m.x) || !piece.count(m.y)) stale("arc does not exist");
  if (piece.at(m.x) == piece.at(m.y)) {
    // the sides (x, sx) and (y, sy) must bound a common face, and the bend
    // is the one that face forces
    if (m.side_x < 0 || m.turn != (m.side_x != m.side ? 1 : 0))
      stale("bend does not match the face geometry");
    bool ok = !check;
    if (check) {
    for (const Face& f : faces(d)) {
      bool has_y = false, has_x = false;
      for (size_t i = 0; i < f.sides.size(); ++i) {
        if (f.sides[i] == std::make_pair(m.y, m.side)) has_y = true;
        if (f.sides[i] == std::make_pair(m.x, m.side_x)) has_x = true;
      }
      if (has_y && has_x) ok = true;
    }
    }
    if (!ok) stale("arc sides do not share a face");
  }

  Surgery s(d);
  bool x_loop = std::find(d.loops.begin(), d.loops.end(), m.x) != d.loops.end();
  bool y_loop = std::find(d.loops.begin(), d.loops.end(), m.y) != d.loops.end();
  Arc x1, xm, x2, y1, ym, y2;
  xm = s.fresh_arc();
  ym = s.fresh_arc();
  auto reattach_head = [&](Arc old_arc, Arc new_arc) {
    for (ArcEnd e : occ.at(old_arc))
      if (d.crossings[e.crossing].is_in_slot(e.slot)) s.set_slot(e.crossing, e.slot, new_arc);
  };
  if (m.x == m.y) {
    // strand order: x1 -> c1 -> xm -> c2 -> (x2 == y1) -> ym -> y2
    x1 = m.x;
    x2 = y1 = s.fresh_arc();
    y2 = s.fresh_arc();
    if (x_loop) {
      y2 = x1;  // closes back onto the original arc
      s.drop_loop(m.x);
    } else {
      reattach_head(m.x, y2);
    }
  } else {
    x1 = m.x;
    if (x_loop) {
      x2 = x1;
      s.drop_loop(m.x);
    } else {
      x2 = s.fresh_arc();
      reattach_head(m.x, x2);
    }
    y1 = m.y;
    if (y_loop) {
      y2 = y1;
      s.drop_loop(m.y);
    } else {
      y2 = s.fresh_arc();
      reattach_head(m.y, y2);
    }
  }

  Crossing c1, c2;
  if (m.over) {
    if (m.side == 0 && m.turn == 0) { c1 = {{ym, xm, y2, x1}, 3}; c2 = {{y1, xm, ym, x2}, 1}; }
    else if (m.side == 0)           { c1 = {{y1, xm, ym, x1}, 3}; c2 = {{ym, xm, y2, x2}, 1}; }
    else if (m.turn == 0)           { c1 = {{ym, x1, y2, xm}, 1}; c2 = {{y1, x2, ym, xm}, 3}; }
    else                            { c1 = {{y1, x1, ym, xm}, 1}; c2 = {{ym, x2, y2, xm}, 3}; }
  } else {
    if (m.side == 0 && m.turn == 0) { c1 = {{x1, ym, xm, y2}, 1}; c2 = {{xm, ym, x2, y1}, 3}; }
    else if (m.side == 0)           { c1 = {{x1, y1, xm, ym}, 1}; c2 = {{xm, y2, x2, ym}, 3}; }
    else if (m.turn == 0)           { c1 = {{x1, y2, xm, ym}, 3}; c2 = {{xm, y1, x2, ym}, 1}; }
    else                            { c1 = {{x1, ym, xm, y1}, 3}; c2 = {{xm, ym, x2, y2}, 1}; }
  }
  s.add_crossing(c1);
  s.add_crossing(c2);
  return s.finalize(check);
}

// R3: slide one strand of a triangle face across the opposite crossing.
inline LinkDiagram apply_r3(const LinkDiagram& d, const MoveSpec& m, bool check) {
  check_snapshot(d, m);
  const int X[3] = {m.c0, m.c1, m.c2};
  const int S[3] = {m.s0, m.s1, m.s2};
  if (X[0] == X[1] || X[1] == X[2] || X[0] == X[2]) stale("degenerate triangle");
  // verify the face walk: side i connects (X[i], S[i]+1) to (X[i+1], S[i+1])
  Arc side[3];
  for (int i = 0; i < 3; ++i) {
    Arc a = d.crossings[X[i]].s[(S[i] + 1) % 4];
    Arc b = d.crossings[X[(i + 1) % 3]].s[S[(i + 1) % 3]];
    if (a != b) stale("triangle face no longer present");
    side[i] = a;
  }
  int j = m.slide;
  int ea = (S[j] + 1) % 4;                 // sliding side's slot at X[j]
  int eb = S[(j + 1) % 3];                 // and at X[j+1]
  if ((ea % 2) != (eb % 2)) stale("sliding side not uniform");
  if ((ea % 2 == 1) != m.over) stale("sliding side parity changed");

  int x1 = X[j], x2 = X[(j + 1) % 3], x3 = X[(j + 2) % 3];
  Arc t = side[j];
  Arc p = side[(j + 2) % 3];  // side into corner X[j]
  Arc q = side[(j + 1) % 3];  // side out of corner X[j+1]

  auto other_slot = [](int slot) { return (slot + 2) % 4; };
  Arc t_ext1 = d.crossings[x1].s[other_slot(ea)];
  Arc p_ext1 = d.crossings[x1].s[other_slot(S[j])];
  Arc t_ext2 = d.crossings[x2].s[other_slot(eb)];
  Arc q_ext2 = d.crossings[x2].s[other_slot((eb + 1) % 4)];
  int p_slot3 = (S[(j + 2) % 3] + 1) % 4;  // p's slot at x3
  int q_slot3 = S[(j + 2) % 3];            // q's slot at x3
  Arc p_far = d.crossings[x3].s[(p_slot3 + 2) % 4];
  Arc q_far = d.crossings[x3].s[(q_slot3 + 2) % 4];

  Surgery s(d);
  s.remove_crossing(x1);
  s.remove_crossing(x2);
  s.merge_arcs(p, p_ext1);
  s.merge_arcs(q, q_ext2);
  Arc p_mid = s.fresh_arc();
  Arc q_mid = s.fresh_arc();
  s.set_slot(x3, (p_slot3 + 2) % 4, p_mid);
  s.set_slot(x3, (q_slot3 + 2) % 4, q_mid);

  auto head_at = [&](Arc a, int c) {
    // does arc a point into crossing c (before the rewrite)?
    auto occ = d.occurrences();
    for (ArcEnd e : occ.at(a))
      if (e.crossing == c && d.crossings[c].is_in_slot(e.slot)) return true;
    return false;
  };
  bool t_fwd = !head_at(t, x1);        // T flows ext1 -> t -> ext2
  bool p_toward_x3 = head_at(p, x3);   // P flows through x1 toward x3
  bool q_toward_x3 = head_at(q, x3);

  // New crossings: Y2 = T x Q-far (first along T from ext1), Y1 = T x P-far.
  auto build = [&](int sign_src, Arc s_in, Arc s_out, Arc t_in, Arc t_out) {
    // strand S is on the same level as the old P/Q (under when sliding the
    // top strand), T keeps its level; signs are preserved by the slide.
    Crossing y;
    int sgn = d.crossings[sign_src].sign();
    if (m.over) {
      y.s[0] = s_in;
      y.s[2] = s_out;
      y.over_in = sgn > 0 ? 3 : 1;
      y.s[y.over_in] = t_in;
      y.s[y.over_in ^ 2] = t_out;
    } else {
      y.s[0] = t_in;
      y.s[2] = t_out;
      y.over_in = sgn > 0 ? 3 : 1;
      y.s[y.over_in] = s_in;
      y.s[y.over_in ^ 2] = s_out;
    }
    return y;
  };
  Arc y1_p_in = p_toward_x3 ? p_mid : p_far;
  Arc y1_p_out = p_toward_x3 ? p_far : p_mid;
  Arc y2_q_in = q_toward_x3 ? q_mid : q_far;
  Arc y2_q_out = q_toward_x3 ? q_far : q_mid;
  Arc y1_t_in = t_fwd ? t : t_ext2;
  Arc y1_t_out = t_fwd ? t_ext2 : t;
  Arc y2_t_in = t_fwd ? t_ext1 : t;
  Arc y2_t_out = t_fwd ? t : t_ext1;
  s.add_crossing(build(x1, y1_p_in, y1_p_out, y1_t_in, y1_t_out));
  s.add_crossing(build(x2, y2_q_in, y2_q_out, y2_t_in, y2_t_out));
  return s.finalize(check);
}

}  // namespace detail

// `check` re-validates the site and the planarity of the result; searches
// applying freshly enumerated moves may skip it.
inline LinkDiagram apply_move(const LinkDiagram& d, const MoveSpec& m, bool check = true) {
  switch (m.kind) {
    case MoveKind::R1Remove: return detail::apply_r1_remove(d, m, check);
    case MoveKind::R2Remove: return detail::apply_r2_remove(d, m, check);
    case MoveKind::R3: return detail::apply_r3(d, m, check);
    case MoveKind::R1Add: return detail::apply_r1_add(d, m, check);
    case MoveKind::R2Add: return detail::apply_r2_add(d, m, check);
  }
  throw std::logic_error("unreachable");
}

inline LinkDiagram replay_certificate(const LinkDiagram& d, const std::vector<MoveSpec>& cert) {
  LinkDiagram cur = d;
  for (size_t i = 0; i < cert.size(); ++i) {
    try {
      cur = apply_move(cur, cert[i]);
    } catch (const StaleSiteError& e) {
      throw StaleSiteError("certificate step " + std::to_string(i) + ": " + e.what());
    }
  }
  return cur;
}

}  // namespace linkcalc
