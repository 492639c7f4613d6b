#pragma once

// Planar diagram codes for link diagrams: crossings in PD convention plus
// explicit crossingless loops. A crossing X[a,b,c,d] lists its four arc
// labels counterclockwise starting at the incoming under-strand, so the
// under-strand runs a -> c and the over-strand occupies b and d. Which of
// b/d is the incoming over-end is global orientation data; it is derived
// from the arc structure at parse time and carried on each crossing.

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace linkcalc {

using Arc = int;

struct DiagramError : std::runtime_error {
  explicit DiagramError(const std::string& what) : std::runtime_error(what) {}
};

// One end of an arc: which crossing and which slot (0..3) it sits in.
struct ArcEnd {
  int crossing = -1;
  int slot = -1;
  bool operator==(const ArcEnd& o) const { return crossing == o.crossing && slot == o.slot; }
};

struct Crossing {
  std::array<Arc, 4> s{0, 0, 0, 0};
  // Slot where the over-strand enters: 3 for a positive crossing, 1 for a
  // negative one (sign convention pinned by the right trefoil having writhe +3).
  int over_in = 3;

  Arc under_in() const { return s[0]; }
  Arc under_out() const { return s[2]; }
  Arc over_in_arc() const { return s[over_in]; }
  Arc over_out_arc() const { return s[over_in ^ 2]; }
  int sign() const { return over_in == 3 ? +1 : -1; }

  bool is_in_slot(int slot) const { return slot == 0 || slot == over_in; }
  bool operator==(const Crossing& o) const { return s == o.s && over_in == o.over_in; }
};

class LinkDiagram {
public:
  std::vector<Crossing> crossings;
  std::vector<Arc> loops;  // crossingless components, one fresh arc label each
  // Cyclic arc sequences, one per component, in orientation order. Loop
  // components appear as single-arc entries. Order is stable under moves.
  std::vector<std::vector<Arc>> components;

  int num_crossings() const { return static_cast<int>(crossings.size()); }
  int num_components() const { return static_cast<int>(components.size()); }
  bool is_crossingless() const { return crossings.empty(); }

  bool operator==(const LinkDiagram& o) const {
    return crossings == o.crossings && loops == o.loops && components == o.components;
  }

  // Both ends of every arc that meets a crossing.
  std::map<Arc, std::vector<ArcEnd>> occurrences() const {
    std::map<Arc, std::vector<ArcEnd>> occ;
    for (int c = 0; c < num_crossings(); ++c)
      for (int t = 0; t < 4; ++t) occ[crossings[c].s[t]].push_back({c, t});
    return occ;
  }

  std::map<Arc, int> component_of_arc() const {
    std::map<Arc, int> m;
    for (int i = 0; i < num_components(); ++i)
      for (Arc a : components[i]) m[a] = i;
    return m;
  }

  bool is_loop_component(int i) const {
    return components[i].size() == 1 &&
           std::find(loops.begin(), loops.end(), components[i][0]) != loops.end();
  }
};

namespace detail {

inline void fail(const std::string& msg) { throw DiagramError(msg); }

// Arc multiplicity: every arc label appears exactly twice across crossing
// slots, or exactly once as a loop record.
inline void check_multiplicity(const std::vector<Crossing>& xs, const std::vector<Arc>& loops) {
  std::map<Arc, int> count;
  for (const auto& x : xs)
    for (Arc a : x.s) {
      if (a <= 0) fail("arc labels must be positive, got " + std::to_string(a));
      ++count[a];
    }
  for (Arc a : loops) {
    if (a <= 0) fail("arc labels must be positive, got " + std::to_string(a));
    if (count.count(a)) fail("loop arc " + std::to_string(a) + " also appears at a crossing");
    if (std::count(loops.begin(), loops.end(), a) != 1)
      fail("loop arc " + std::to_string(a) + " repeated");
  }
  for (auto& [a, n] : count)
    if (n != 2) fail("arc " + std::to_string(a) + " appears " + std::to_string(n) + " times (want 2)");
}

// Assign over_in flags so that every arc has exactly one head (in-slot) and
// one tail (out-slot). Propagates from under-strand slots, whose roles are
// fixed; components that never pass under get a deterministic choice.
inline void orient_crossings(std::vector<Crossing>& xs) {
  std::map<Arc, std::vector<ArcEnd>> occ;
  for (int c = 0; c < static_cast<int>(xs.size()); ++c)
    for (int t = 0; t < 4; ++t) occ[xs[c].s[t]].push_back({c, t});

  // role per (crossing, slot): +1 in (head), -1 out (tail), 0 unknown
  std::vector<std::array<int, 4>> role(xs.size(), {0, 0, 0, 0});
  std::vector<int> over_in(xs.size(), 0);
  std::vector<ArcEnd> queue;
  for (int c = 0; c < static_cast<int>(xs.size()); ++c) {
    role[c][0] = +1;
    role[c][2] = -1;
    queue.push_back({c, 0});
    queue.push_back({c, 2});
  }

  auto set_role = [&](ArcEnd e, int r) {
    if (role[e.crossing][e.slot] == r) return;
    if (role[e.crossing][e.slot] == -r)
      fail("orientation inconsistency at crossing " + std::to_string(e.crossing));
    role[e.crossing][e.slot] = r;
    queue.push_back(e);
  };

  auto propagate = [&]() {
    while (!queue.empty()) {
      ArcEnd e = queue.back();
      queue.pop_back();
      int r = role[e.crossing][e.slot];
      // the other end of this arc plays the opposite role
      for (ArcEnd o : occ[xs[e.crossing].s[e.slot]])
        if (!(o == e)) set_role(o, -r);
      // the paired over slot plays the opposite role
      if (e.slot == 1 || e.slot == 3) set_role({e.crossing, e.slot ^ 2}, -r);
      // degenerate: same arc at both ends (and both occurrences are e) is
      // covered because occ has two entries even when they coincide in slot
      if (e.slot == 1 || e.slot == 3) {
        int c = e.crossing;
        if (role[c][1] != 0) over_in[c] = role[c][1] > 0 ? 1 : 3;
      }
    }
  };
  propagate();

  for (int c = 0; c < static_cast<int>(xs.size()); ++c) {
    if (over_in[c] == 0) {
      // component never passes under anywhere reachable; pick a direction
      set_role({c, 3}, +1);
      propagate();
    }
  }
  for (int c = 0; c < static_cast<int>(xs.size()); ++c) {
    if (over_in[c] != 1 && over_in[c] != 3)
      fail("could not orient crossing " + std::to_string(c));
    xs[c].over_in = over_in[c];
  }

  // final check: one head and one tail per arc
  for (auto& [a, ends] : occ) {
    int sum = 0;
    for (ArcEnd e : ends) sum += role[e.crossing][e.slot];
    if (sum != 0) fail("arc " + std::to_string(a) + " lacks a consistent direction");
  }
}

// Successor along the strand: follow an arc through its head crossing.
inline Arc strand_successor(const std::vector<Crossing>& xs,
                            const std::map<Arc, std::vector<ArcEnd>>& occ, Arc a) {
  for (ArcEnd e : occ.at(a)) {
    const Crossing& x = xs[e.crossing];
    if (e.slot == 0) return x.s[2];
    if (e.slot == x.over_in && x.s[e.slot] == a) {
      // guard the degenerate case of one arc occupying both over slots:
      // the in-occurrence is the one at over_in, which this is
      return x.s[x.over_in ^ 2];
    }
  }
  fail("arc " + std::to_string(a) + " has no head; strand following failed");
  return 0;
}

inline std::vector<std::vector<Arc>> follow_components(const std::vector<Crossing>& xs,
                                                       const std::vector<Arc>& loops) {
  std::map<Arc, std::vector<ArcEnd>> occ;
  for (int c = 0; c < static_cast<int>(xs.size()); ++c)
    for (int t = 0; t < 4; ++t) occ[xs[c].s[t]].push_back({c, t});

  std::vector<std::vector<Arc>> comps;
  std::set<Arc> seen;
  std::vector<Arc> all;
  for (auto& [a, _] : occ) all.push_back(a);
  for (Arc start : all) {
    if (seen.count(start)) continue;
    std::vector<Arc> cyc;
    Arc a = start;
    do {
      if (seen.count(a)) fail("strand following revisited arc " + std::to_string(a));
      seen.insert(a);
      cyc.push_back(a);
      a = strand_successor(xs, occ, a);
    } while (a != start);
    // normalize the cycle to start at its smallest arc (stable identity)
    auto it = std::min_element(cyc.begin(), cyc.end());
    std::rotate(cyc.begin(), it, cyc.end());
    comps.push_back(std::move(cyc));
  }
  for (Arc a : loops) comps.push_back({a});
  std::sort(comps.begin(), comps.end(),
            [](const auto& x, const auto& y) { return x[0] < y[0]; });
  return comps;
}

}  // namespace detail

// A face corner sits at a crossing between rotation-adjacent slots
// (slot, slot+1). Sides name (arc, 0=left / 1=right of the arc direction).
struct Face {
  std::vector<ArcEnd> corners;             // (crossing, slot) of each corner
  std::vector<std::pair<Arc, int>> sides;  // boundary arcs with side flags
  int degree() const { return static_cast<int>(sides.size()); }
};

// Faces of each connected piece under the counterclockwise rotation system,
// plus the two faces of every crossingless loop.
inline std::vector<Face> faces(const LinkDiagram& d) {
  auto occ = d.occurrences();
  auto mate = [&](ArcEnd e) -> ArcEnd {
    const auto& ends = occ.at(d.crossings[e.crossing].s[e.slot]);
    return (ends[0] == e) ? ends[1] : ends[0];
  };
  std::vector<Face> out;
  std::vector<std::array<bool, 4>> used(d.crossings.size(), {false, false, false, false});
  for (int c = 0; c < d.num_crossings(); ++c) {
    for (int t = 0; t < 4; ++t) {
      if (used[c][t]) continue;
      Face f;
      ArcEnd e{c, t};
      do {
        used[e.crossing][e.slot] = true;
        ArcEnd m = mate(e);
        Arc a = d.crossings[e.crossing].s[e.slot];
        // the walk reaches arc a's far end m; the corner occupies the sector
        // (m.slot, m.slot+1). Face is right of a when a's head is at m.
        bool head_at_m = d.crossings[m.crossing].is_in_slot(m.slot) &&
                         d.crossings[m.crossing].s[m.slot] == a;
        f.corners.push_back(m);
        f.sides.push_back({a, head_at_m ? 1 : 0});
        e = ArcEnd{m.crossing, (m.slot + 1) % 4};
      } while (!(e == ArcEnd{c, t}));
      out.push_back(std::move(f));
    }
  }
  for (Arc a : d.loops) {
    out.push_back(Face{{}, {{a, 0}}});
    out.push_back(Face{{}, {{a, 1}}});
  }
  return out;
}

namespace detail {

// Planarity: V - E + F = 2 for every connected piece of the 4-valent graph.
inline void check_planarity(const LinkDiagram& d) {
  int n = d.num_crossings();
  if (n == 0) return;
  // union-find over crossings through shared arcs
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto occ = d.occurrences();
  for (auto& [a, ends] : occ)
    if (ends.size() == 2) parent[find(ends[0].crossing)] = find(ends[1].crossing);

  std::map<int, int> piece_v, piece_f;
  for (int c = 0; c < n; ++c) piece_v[find(c)]++;
  for (const Face& f : faces(d)) {
    if (f.corners.empty()) continue;  // loop faces
    piece_f[find(f.corners[0].crossing)]++;
  }
  for (auto& [root, v] : piece_v) {
    int e = 2 * v;
    int f = piece_f.count(root) ? piece_f[root] : 0;
    if (v - e + f != 2)
      fail("planarity failure: piece at crossing " + std::to_string(root) + " has V=" +
           std::to_string(v) + " E=" + std::to_string(e) + " F=" + std::to_string(f));
  }
}

inline void validate(const LinkDiagram& d) {
  check_multiplicity(d.crossings, d.loops);
  // heads/tails consistent with the stored over_in flags
  auto occ = d.occurrences();
  for (auto& [a, ends] : occ) {
    int in = 0, outn = 0;
    for (ArcEnd e : ends) {
      if (d.crossings[e.crossing].is_in_slot(e.slot))
        ++in;
      else
        ++outn;
    }
    if (in != 1 || outn != 1)
      fail("arc " + std::to_string(a) + " direction mismatch (" + std::to_string(in) +
           " heads, " + std::to_string(outn) + " tails)");
  }
  // the stored component list must be the strand-following partition, up to
  // component order (surgeries order by ancestry, not by smallest label)
  auto canon = [](std::vector<std::vector<Arc>> comps) {
    for (auto& c : comps) {
      auto it = std::min_element(c.begin(), c.end());
      std::rotate(c.begin(), it, c.end());
    }
    std::sort(comps.begin(), comps.end());
    return comps;
  };
  if (canon(follow_components(d.crossings, d.loops)) != canon(d.components))
    fail("component partition does not match strand following");
  check_planarity(d);
}

}  // namespace detail

// Build a diagram from structured data when crossing orientations are known.
// Components are re-derived and must match the strand-following relation.
inline LinkDiagram make_diagram(std::vector<Crossing> crossings, std::vector<Arc> loops) {
  LinkDiagram d;
  d.crossings = std::move(crossings);
  d.loops = std::move(loops);
  std::sort(d.loops.begin(), d.loops.end());
  detail::check_multiplicity(d.crossings, d.loops);
  d.components = detail::follow_components(d.crossings, d.loops);
  detail::validate(d);
  return d;
}

// ---------------------------------------------------------------------------
// PD text format: whitespace-separated X[a,b,c,d] and O[k] terms, % comments.

inline LinkDiagram parse_pd(const std::string& text) {
  std::string stripped;
  for (size_t i = 0; i < text.size();) {
    if (text[i] == '%') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else {
      stripped.push_back(text[i++]);
    }
  }
  std::vector<Crossing> xs;
  std::vector<Arc> loops;
  size_t i = 0;
  auto skip_ws = [&]() {
    while (i < stripped.size() && (std::isspace(static_cast<unsigned char>(stripped[i])) || stripped[i] == ','))
      ++i;
  };
  auto parse_int = [&]() -> int {
    skip_ws();
    size_t start = i;
    if (i < stripped.size() && (stripped[i] == '-' || stripped[i] == '+')) ++i;
    while (i < stripped.size() && std::isdigit(static_cast<unsigned char>(stripped[i]))) ++i;
    if (i == start) detail::fail("syntax error: expected integer at offset " + std::to_string(i));
    return std::stoi(stripped.substr(start, i - start));
  };
  auto expect = [&](char c) {
    skip_ws();
    if (i >= stripped.size() || stripped[i] != c)
      detail::fail(std::string("syntax error: expected '") + c + "' at offset " + std::to_string(i));
    ++i;
  };
  while (true) {
    skip_ws();
    if (i >= stripped.size()) break;
    char tag = stripped[i++];
    if (tag == 'X') {
      expect('[');
      Crossing x;
      for (int t = 0; t < 4; ++t) x.s[t] = parse_int();
      expect(']');
      xs.push_back(x);
    } else if (tag == 'O') {
      expect('[');
      loops.push_back(parse_int());
      expect(']');
    } else {
      detail::fail(std::string("syntax error: unknown term '") + tag + "' at offset " +
                   std::to_string(i - 1));
    }
  }
  detail::check_multiplicity(xs, loops);
  detail::orient_crossings(xs);
  return make_diagram(std::move(xs), std::move(loops));
}

// Serialize with arcs renormalized to 1..2c in traversal order (loops after).
inline LinkDiagram renormalize_arcs(const LinkDiagram& d) {
  std::map<Arc, Arc> next_label;
  Arc n = 0;
  for (const auto& comp : d.components)
    for (Arc a : comp)
      if (!next_label.count(a)) next_label[a] = ++n;
  LinkDiagram out = d;
  for (auto& x : out.crossings)
    for (auto& a : x.s) a = next_label.at(a);
  for (auto& a : out.loops) a = next_label.at(a);
  for (auto& comp : out.components)
    for (auto& a : comp) a = next_label.at(a);
  std::sort(out.loops.begin(), out.loops.end());
  return out;
}

inline std::string serialize_pd(const LinkDiagram& d) {
  LinkDiagram r = renormalize_arcs(d);
  std::ostringstream os;
  bool first = true;
  for (const auto& x : r.crossings) {
    if (!first) os << ' ';
    first = false;
    os << "X[" << x.s[0] << ',' << x.s[1] << ',' << x.s[2] << ',' << x.s[3] << ']';
  }
  for (Arc a : r.loops) {
    if (!first) os << ' ';
    first = false;
    os << "O[" << a << ']';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Homological data.

using LinkingMatrix = std::vector<std::vector<int>>;

inline LinkingMatrix linking_matrix(const LinkDiagram& d) {
  int n = d.num_components();
  LinkingMatrix m(n, std::vector<int>(n, 0));
  auto comp = d.component_of_arc();
  for (const auto& x : d.crossings) {
    int cu = comp.at(x.under_in());
    int co = comp.at(x.over_in_arc());
    if (cu != co) {
      m[cu][co] += x.sign();
      m[co][cu] += x.sign();
    }
  }
  for (auto& row : m)
    for (auto& v : row) {
      if (v % 2 != 0) detail::fail("odd signed crossing count between two components");
      v /= 2;
    }
  return m;
}

inline int writhe(const LinkDiagram& d) {
  int w = 0;
  for (const auto& x : d.crossings) w += x.sign();
  return w;
}

inline bool homologically_trivial(const LinkingMatrix& m) {
  for (const auto& row : m)
    for (int v : row)
      if (v != 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Surgery builder: shared machinery for every rewrite. Collects crossing
// removals/additions and arc merges, then rebuilds and validates, matching
// surviving components to their predecessors so indices stay stable.

class Surgery {
public:
  explicit Surgery(const LinkDiagram& base) : base_(base), crossings_(base.crossings) {
    for (const auto& x : base.crossings)
      for (Arc a : x.s) max_arc_ = std::max(max_arc_, a);
    for (Arc a : base.loops) max_arc_ = std::max(max_arc_, a);
    for (Arc a : base.loops) loops_.insert(a);
  }

  Arc fresh_arc() { return ++max_arc_; }

  void remove_crossing(int index) { removed_.insert(index); }

  int add_crossing(const Crossing& x) {
    crossings_.push_back(x);
    return static_cast<int>(crossings_.size()) - 1;
  }

  // Replace the arc in one slot of a surviving crossing.
  void set_slot(int crossing, int slot, Arc a) { crossings_[crossing].s[slot] = a; }

  const Crossing& crossing(int index) const { return crossings_[index]; }

  // Record that two arcs become one (splice along a strand).
  void merge_arcs(Arc a, Arc b) { merges_.push_back({a, b}); }

  // Drop a whole component's arcs (deletion surgery).
  void drop_arc(Arc a) { dropped_.insert(a); }
  void drop_loop(Arc a) { loops_.erase(a); }
  void add_loop(Arc a) { loops_.insert(a); }

  // Components expected to disappear (by base index).
  void expect_component_removed(int base_index) { removed_components_.insert(base_index); }

  // full=false skips the planarity/orientation revalidation for hot paths
  // whose inputs were just enumerated; structure checks still run.
  LinkDiagram finalize(bool full = true) const {
    const int A = max_arc_;
    std::vector<Arc> parent(A + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](Arc a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    for (auto [a, b] : merges_) {
      Arc ra = find(a), rb = find(b);
      if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
    std::vector<char> dropped(A + 1, 0);
    for (Arc a : dropped_) dropped[find(a)] = 1;

    LinkDiagram out;
    out.crossings.reserve(crossings_.size() - removed_.size());
    std::vector<char> present(A + 1, 0);
    for (int c = 0; c < static_cast<int>(crossings_.size()); ++c) {
      if (removed_.count(c)) continue;
      Crossing x = crossings_[c];
      for (auto& a : x.s) {
        a = find(a);
        if (dropped[a]) throw DiagramError("internal: dropped arc still present at a crossing");
        present[a] = 1;
      }
      out.crossings.push_back(x);
    }
    // arcs that closed into crossingless strands become loops
    std::vector<char> is_loop(A + 1, 0);
    for (Arc a : loops_) {
      Arc r = find(a);
      if (!dropped[r] && !present[r]) is_loop[r] = 1;
    }
    for (const auto& x : base_.crossings)
      for (Arc a : x.s) {
        Arc r = find(a);
        if (!dropped[r] && !present[r]) is_loop[r] = 1;
      }
    for (Arc a = 1; a <= A; ++a)
      if (is_loop[a]) out.loops.push_back(a);

    // arc multiplicity and strand following, over dense arc ids
    std::vector<int8_t> count(A + 1, 0);
    std::vector<ArcEnd> head(A + 1, ArcEnd{});
    for (int c = 0; c < static_cast<int>(out.crossings.size()); ++c)
      for (int t = 0; t < 4; ++t) {
        Arc a = out.crossings[c].s[t];
        if (++count[a] > 2)
          throw DiagramError("arc " + std::to_string(a) + " appears more than twice");
        if (out.crossings[c].is_in_slot(t)) {
          if (head[a].crossing >= 0)
            throw DiagramError("arc " + std::to_string(a) + " has two heads");
          head[a] = {c, t};
        }
      }
    for (Arc a = 1; a <= A; ++a)
      if (count[a] == 1) throw DiagramError("arc " + std::to_string(a) + " appears once");

    std::vector<char> seen(A + 1, 0);
    for (Arc start = 1; start <= A; ++start) {
      if (seen[start] || count[start] == 0) continue;
      std::vector<Arc> cyc;
      Arc a = start;
      do {
        if (seen[a]) throw DiagramError("strand following revisited arc " + std::to_string(a));
        seen[a] = 1;
        cyc.push_back(a);
        ArcEnd h = head[a];
        if (h.crossing < 0) throw DiagramError("arc " + std::to_string(a) + " has no head");
        const Crossing& x = out.crossings[h.crossing];
        a = h.slot == 0 ? x.s[2] : x.s[x.over_in ^ 2];
      } while (a != start);
      auto it = std::min_element(cyc.begin(), cyc.end());
      std::rotate(cyc.begin(), it, cyc.end());
      out.components.push_back(std::move(cyc));
    }
    for (Arc a : out.loops) out.components.push_back({a});

    // match new components to base components via shared arc roots
    std::vector<int> base_comp_of_root(A + 1, -1);
    for (int i = 0; i < base_.num_components(); ++i)
      for (Arc a : base_.components[i]) {
        Arc r = find(a);
        if (!dropped[r]) base_comp_of_root[r] = i;
      }
    std::vector<std::pair<int, std::vector<Arc>>> keyed;
    for (auto& comp : out.components) {
      int origin = -1;
      for (Arc a : comp) {
        int o = base_comp_of_root[a];
        if (o >= 0) {
          if (origin != -1 && origin != o)
            throw DiagramError("internal: surgery merged two components");
          origin = o;
        }
      }
      if (origin == -1) throw DiagramError("internal: component with no ancestry");
      keyed.push_back({origin, std::move(comp)});
    }
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    int expected = base_.num_components() - static_cast<int>(removed_components_.size());
    if (static_cast<int>(keyed.size()) != expected)
      throw DiagramError("internal: component count changed unexpectedly");
    out.components.clear();
    for (auto& [origin, comp] : keyed) {
      if (removed_components_.count(origin))
        throw DiagramError("internal: removed component survived");
      out.components.push_back(std::move(comp));
    }
    if (full) detail::validate(out);
    return out;
  }

private:
  const LinkDiagram& base_;
  std::vector<Crossing> crossings_;
  std::set<int> removed_;
  std::vector<std::pair<Arc, Arc>> merges_;
  std::set<Arc> dropped_;
  std::set<Arc> loops_;
  std::set<int> removed_components_;
  Arc max_arc_ = 0;
};

// ---------------------------------------------------------------------------
// Component deletion: L(1/0, ...) in slope notation.

inline LinkDiagram delete_component(const LinkDiagram& d, int index) {
  if (index < 0 || index >= d.num_components())
    throw DiagramError("component index " + std::to_string(index + 1) + " out of range");
  Surgery s(d);
  auto comp = d.component_of_arc();
  std::set<Arc> gone(d.components[index].begin(), d.components[index].end());
  for (int c = 0; c < d.num_crossings(); ++c) {
    const Crossing& x = d.crossings[c];
    bool under_gone = gone.count(x.under_in()) != 0;
    bool over_gone = gone.count(x.over_in_arc()) != 0;
    if (!under_gone && !over_gone) continue;
    s.remove_crossing(c);
    if (!under_gone) s.merge_arcs(x.under_in(), x.under_out());
    if (!over_gone) s.merge_arcs(x.over_in_arc(), x.over_out_arc());
  }
  for (Arc a : gone) {
    s.drop_arc(a);
    s.drop_loop(a);
  }
  s.expect_component_removed(index);
  return s.finalize();
}

// ---------------------------------------------------------------------------
// Relabeling helpers (also used by the test suites).

inline LinkDiagram relabel_arcs(const LinkDiagram& d, const std::map<Arc, Arc>& perm) {
  LinkDiagram out = d;
  auto apply = [&](Arc a) {
    auto it = perm.find(a);
    return it == perm.end() ? a : it->second;
  };
  for (auto& x : out.crossings)
    for (auto& a : x.s) a = apply(a);
  for (auto& a : out.loops) a = apply(a);
  std::sort(out.loops.begin(), out.loops.end());
  for (auto& comp : out.components)
    for (auto& a : comp) a = apply(a);
  detail::validate(out);
  return out;
}

inline LinkDiagram permute_components(const LinkDiagram& d, const std::vector<int>& order) {
  if (order.size() != d.components.size()) throw DiagramError("bad component permutation");
  LinkDiagram out = d;
  out.components.clear();
  for (int i : order) out.components.push_back(d.components.at(i));
  detail::validate(out);
  return out;
}

// Reverse the orientation of one component. Crossings where it passes under
// are re-anchored (the quadruple rotates by two); where it passes over, the
// incoming over-slot flips.
inline LinkDiagram reverse_component(const LinkDiagram& d, int index) {
  if (index < 0 || index >= d.num_components()) throw DiagramError("component index out of range");
  LinkDiagram out = d;
  std::set<Arc> arcs(d.components[index].begin(), d.components[index].end());
  for (auto& x : out.crossings) {
    bool under = arcs.count(x.under_in()) != 0;
    bool over = arcs.count(x.over_in_arc()) != 0;
    if (under) {
      Crossing r;
      for (int t = 0; t < 4; ++t) r.s[t] = x.s[(t + 2) % 4];
      r.over_in = over ? x.over_in : (x.over_in ^ 2);
      x = r;
    } else if (over) {
      x.over_in ^= 2;
    }
  }
  auto& cyc = out.components[index];
  std::reverse(cyc.begin(), cyc.end());
  auto it = std::min_element(cyc.begin(), cyc.end());
  std::rotate(cyc.begin(), it, cyc.end());
  detail::validate(out);
  return out;
}

// Mirror image: switch every crossing. The quadruple is re-anchored at the
// new incoming under-strand (the old incoming over-strand).
inline LinkDiagram mirror_diagram(const LinkDiagram& d) {
  LinkDiagram out = d;
  for (auto& x : out.crossings) {
    Crossing m;
    int k = x.over_in;
    for (int t = 0; t < 4; ++t) m.s[t] = x.s[(k + t) % 4];
    // the old under-in (slot 0) sits at position (4 - k) % 4 and is the
    // incoming over-end of the mirrored crossing
    m.over_in = (4 - k) % 4;
    x = m;
  }
  // strand structure is unchanged; components and orientations carry over
  detail::validate(out);
  return out;
}

}  // namespace linkcalc
