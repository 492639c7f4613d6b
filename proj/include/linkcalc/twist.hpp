#pragma once

// 1/q surgery on an unknotted component as a diagram rewrite. The component
// must be in bundled form: a self-crossing-free circle K whose crossings
// split into a contiguous block where K passes over and a contiguous block
// where it passes under, with the two crossings of each passing strand
// joined by a single arc (the chord through K's disk) and all chords on a
// common side. Twisting replaces the m parallel chords by q full twists,
// the braid (s1 ... s(m-1))^(m q), and optionally deletes K.

#include <optional>

#include "moves.hpp"
#include "pd.hpp"

namespace linkcalc {

struct BundleStrand {
  int over_crossing = -1;   // K passes over the strand here
  int under_crossing = -1;  // K passes under the strand here
  Arc chord = 0;            // the single arc between the two, inside K's disk
  bool ascending = false;   // chord flows from the over- to the under-block
};

struct TwistSite {
  int component = -1;
  int side = 0;  // which side of K the chords are on (0 left, 1 right)
  std::vector<BundleStrand> bundle;
  int m() const { return static_cast<int>(bundle.size()); }
};

namespace detail {

struct Passage {
  int crossing;
  bool k_over;   // K is the over strand at this crossing
  int k_in_slot; // slot where K enters
};

// K's crossings in order along the component; empty optional on self-crossing.
inline std::optional<std::vector<Passage>> passages_along(const LinkDiagram& d, int k) {
  const auto& comp = d.components[k];
  std::set<Arc> karcs(comp.begin(), comp.end());
  auto occ = d.occurrences();
  std::vector<Passage> out;
  for (size_t t = 0; t < comp.size(); ++t) {
    Arc a = comp[t];
    if (!occ.count(a)) return out;  // crossingless loop: no passages
    ArcEnd head{-1, -1};
    for (ArcEnd e : occ.at(a))
      if (d.crossings[e.crossing].is_in_slot(e.slot)) head = e;
    const Crossing& x = d.crossings[head.crossing];
    bool k_over = head.slot == x.over_in;
    // self-crossing: the complementary strand is K too
    Arc other = k_over ? x.under_in() : x.over_in_arc();
    if (karcs.count(other)) return std::nullopt;
    out.push_back({head.crossing, k_over, head.slot});
  }
  return out;
}

}  // namespace detail

inline std::optional<TwistSite> detect_bundle(const LinkDiagram& d, int k) {
  if (k < 0 || k >= d.num_components())
    throw DiagramError("component index " + std::to_string(k + 1) + " out of range");
  auto maybe = detail::passages_along(d, k);
  if (!maybe) return std::nullopt;
  const auto& ps = *maybe;
  if (ps.empty()) {
    TwistSite site;
    site.component = k;
    return site;
  }
  int len = static_cast<int>(ps.size());
  if (len % 2 != 0) return std::nullopt;
  int m = len / 2;
  int over_count = 0;
  for (const auto& p : ps) over_count += p.k_over ? 1 : 0;
  if (over_count != m) return std::nullopt;

  int rot = -1;
  for (int r = 0; r < len; ++r) {
    bool ok = true;
    for (int t = 0; t < len; ++t) {
      bool want_over = t < m;
      if (ps[(r + t) % len].k_over != want_over) ok = false;
    }
    if (ok) {
      rot = r;
      break;
    }
  }
  if (rot < 0) return std::nullopt;

  // pair position i in the over block with position 2m-1-i, demand a shared
  // chord arc, and collect which side of K each candidate chord lies on
  auto side_of = [&](const detail::Passage& p, Arc chord) -> int {
    const Crossing& x = d.crossings[p.crossing];
    int left_slot = (p.k_in_slot + 3) % 4;
    int right_slot = (p.k_in_slot + 1) % 4;
    if (x.s[left_slot] == chord && x.s[right_slot] == chord) return 2;  // both
    if (x.s[left_slot] == chord) return 0;
    if (x.s[right_slot] == chord) return 1;
    return -1;
  };
  struct Cand {
    Arc chord;
    int side;  // 0, 1, or 2 for either
  };
  std::vector<std::vector<Cand>> cands(m);
  for (int i = 0; i < m; ++i) {
    const auto& po = ps[(rot + i) % len];
    const auto& pu = ps[(rot + 2 * m - 1 - i) % len];
    const Crossing& xo = d.crossings[po.crossing];
    const Crossing& xu = d.crossings[pu.crossing];
    std::set<Arc> at_o = {xo.under_in(), xo.under_out()};  // strand under K
    std::set<Arc> at_u = {xu.over_in_arc(), xu.over_out_arc()};
    for (Arc a : at_o) {
      if (!at_u.count(a)) continue;
      int so = side_of(po, a), su = side_of(pu, a);
      if (so < 0 || su < 0) continue;
      int side = -1;
      if (so == 2) side = su;
      else if (su == 2 || so == su) side = so;
      if (side >= 0) cands[i].push_back({a, side});
    }
    if (cands[i].empty()) return std::nullopt;
  }
  for (int side = 0; side < 2; ++side) {
    TwistSite site;
    site.component = k;
    site.side = side;
    bool ok = true;
    for (int i = 0; i < m && ok; ++i) {
      const Cand* pick = nullptr;
      for (const auto& c : cands[i])
        if (c.side == side || c.side == 2) pick = &c;
      if (!pick) {
        ok = false;
        break;
      }
      const auto& po = ps[(rot + i) % len];
      const auto& pu = ps[(rot + 2 * m - 1 - i) % len];
      auto occ = d.occurrences();
      bool asc = false;
      for (ArcEnd e : occ.at(pick->chord))
        if (e.crossing == pu.crossing && d.crossings[e.crossing].is_in_slot(e.slot)) asc = true;
      site.bundle.push_back({po.crossing, pu.crossing, pick->chord, asc});
    }
    if (ok) return site;
  }
  return std::nullopt;
}

// The linking-number update law for q twists about component k: entry (i,j)
// becomes l_ij + q * l_ik * l_jk, with row and column k removed.
inline LinkingMatrix predicted_linking_after_twist(const LinkingMatrix& mat, int k, int q) {
  int n = static_cast<int>(mat.size());
  if (k < 0 || k >= n) throw DiagramError("component index out of range");
  LinkingMatrix out;
  for (int i = 0; i < n; ++i) {
    if (i == k) continue;
    std::vector<int> row;
    for (int j = 0; j < n; ++j) {
      if (j == k) continue;
      row.push_back(i == j ? 0 : mat[i][j] + q * mat[i][k] * mat[j][k]);
    }
    out.push_back(row);
  }
  return out;
}

namespace detail {

// One elementary braid crossing between the strands at positions j (A) and
// j+1 (B); A passes over for right-handed twists. Slots follow the compass
// derivation: positions run left to right, ascending strands flow upward.
inline Crossing braid_crossing(bool right_handed, Arc a_cur, Arc a_new, bool a_asc, Arc b_cur,
                               Arc b_new, bool b_asc) {
  Crossing x;
  if (right_handed) {
    // A over B
    if (b_asc) {
      x = a_asc ? Crossing{{b_cur, a_new, b_new, a_cur}, 3}
                : Crossing{{b_cur, a_new, b_new, a_cur}, 1};
    } else {
      x = a_asc ? Crossing{{b_new, a_cur, b_cur, a_new}, 1}
                : Crossing{{b_new, a_cur, b_cur, a_new}, 3};
    }
  } else {
    // B over A
    if (a_asc) {
      x = b_asc ? Crossing{{a_cur, b_cur, a_new, b_new}, 1}
                : Crossing{{a_cur, b_cur, a_new, b_new}, 3};
    } else {
      x = b_asc ? Crossing{{a_new, b_new, a_cur, b_cur}, 3}
                : Crossing{{a_new, b_new, a_cur, b_cur}, 1};
    }
  }
  return x;
}

}  // namespace detail

inline LinkDiagram twist(const LinkDiagram& d, const TwistSite& site, int q, bool keep) {
  // freshness: the site must match what detection finds now
  auto fresh = detect_bundle(d, site.component);
  bool match = fresh.has_value() && fresh->m() == site.m();
  if (match) {
    for (int i = 0; i < site.m(); ++i) {
      const auto& a = fresh->bundle[i];
      const auto& b = site.bundle[i];
      if (a.over_crossing != b.over_crossing || a.under_crossing != b.under_crossing ||
          a.chord != b.chord)
        match = false;
    }
  }
  if (!match) throw StaleSiteError("stale site: bundled form not present");

  int m = site.m();
  if (q == 0 || m == 0)
    return keep ? d : delete_component(d, site.component);

  Surgery s(d);
  // Current arc and direction per braid position, built from the over block
  // upward. With the chords on K's right the box is mirrored, which reverses
  // the spatial order of the strands; the handedness is direction-relative
  // and needs no correction (reversing a strand flips its crossing signs
  // with K and its flow through the box together).
  struct Pos {
    int strand;
    Arc arc;
    bool asc;
  };
  std::vector<Pos> pos;
  for (int i = 0; i < m; ++i) {
    int strand = site.side == 0 ? i : m - 1 - i;
    pos.push_back({strand, site.bundle[strand].chord, site.bundle[strand].ascending});
  }
  if (m >= 2) {
    int rounds = m * std::abs(q);
    bool rh = q > 0;
    for (int round = 0; round < rounds; ++round) {
      for (int j = 0; j + 1 < m; ++j) {
        Pos a = pos[j], b = pos[j + 1];
        Arc a_new = s.fresh_arc(), b_new = s.fresh_arc();
        s.add_crossing(detail::braid_crossing(rh, a.arc, a_new, a.asc, b.arc, b_new, b.asc));
        pos[j] = {b.strand, b_new, b.asc};
        pos[j + 1] = {a.strand, a_new, a.asc};
      }
    }
    // a full twist is a pure braid: strands return to their positions
    for (int j = 0; j < m; ++j) {
      int want = site.side == 0 ? j : m - 1 - j;
      if (pos[j].strand != want) throw std::logic_error("braid permutation not identity");
    }
    // reattach the top pieces at the under-block crossings
    for (int j = 0; j < m; ++j) {
      const BundleStrand& bs = site.bundle[pos[j].strand];
      const Crossing& xu = d.crossings[bs.under_crossing];
      for (int t = 0; t < 4; ++t)
        if (xu.s[t] == bs.chord && t != 0 && t != 2) {
          // chord occupies an over slot at the under-block crossing (K under)
          s.set_slot(bs.under_crossing, t, pos[j].arc);
        }
    }
  }
  if (!keep) {
    std::set<Arc> karcs(d.components[site.component].begin(),
                        d.components[site.component].end());
    std::set<int> kcross;
    for (const auto& bs : site.bundle) {
      kcross.insert(bs.over_crossing);
      kcross.insert(bs.under_crossing);
    }
    for (int c : kcross) {
      const Crossing& x = s.crossing(c);
      s.remove_crossing(c);
      if (karcs.count(x.under_in())) {
        s.merge_arcs(x.over_in_arc(), x.over_out_arc());
      } else {
        s.merge_arcs(x.under_in(), x.under_out());
      }
    }
    for (Arc a : karcs) {
      s.drop_arc(a);
      s.drop_loop(a);
    }
    s.expect_component_removed(site.component);
  }
  return s.finalize();
}

}  // namespace linkcalc
