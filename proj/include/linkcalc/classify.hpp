#pragma once

// Recursive triviality decision for link diagrams and the Brunnian /
// homologically-trivial / HTB classification built on it. A link is trivial
// iff it is homologically trivial, every deletion-sublink is trivial, and
// one twisted link L(..., 1, ...) is trivial; the recursion checks exactly
// those conditions, folding every failure to normalize into Inconclusive.

#include "search.hpp"
#include "slopes.hpp"

namespace linkcalc {

struct TrivialityTrace {
  int components = 0;
  int crossings = 0;
  Verdict::Kind verdict = Verdict::Kind::Inconclusive;
  std::string note;  // which rule decided at this level
  LinkingMatrix linking;
  std::vector<Verdict> sublinks;  // deletion sub-verdicts, when computed
  int twist_component = -1;       // chosen K for the twist step
  int twist_q = 0;
  std::vector<MoveSpec> normalization;  // moves bringing K to bundled form
  std::optional<Verdict> twisted;       // verdict of L(..., 1/q at K, ...)
};

struct ClassifyOptions {
  int twist_sign = +1;       // the q used in the twist step of the recursion
  bool try_all_components = true;  // false: give the whole pool to component 1
};

namespace detail {

struct MemoEntry {
  std::string exact;
  Verdict verdict;
};

struct ClassifyContext {
  SearchBudget budget;
  SearchOptions search;
  ClassifyOptions options;
  std::map<std::string, MemoEntry> memo;  // canonical key -> verdict
};

inline std::string exact_repr(const LinkDiagram& d) {
  std::ostringstream os;
  for (const auto& x : d.crossings)
    os << x.s[0] << ',' << x.s[1] << ',' << x.s[2] << ',' << x.s[3] << ',' << x.over_in << ';';
  os << '|';
  for (Arc a : d.loops) os << a << ',';
  os << '|';
  for (const auto& c : d.components) {
    for (Arc a : c) os << a << ',';
    os << ';';
  }
  return os.str();
}

inline Verdict is_trivial_link_impl(const LinkDiagram& d, ClassifyContext& ctx) {
  std::string key = canonical_key(d).bytes;
  std::string repr = exact_repr(d);
  auto hit = ctx.memo.find(key);
  if (hit != ctx.memo.end() && hit->second.exact == repr) return hit->second.verdict;

  auto trace = std::make_shared<TrivialityTrace>();
  trace->components = d.num_components();
  trace->crossings = d.num_crossings();
  trace->linking = linking_matrix(d);
  Verdict v;
  v.trace = trace;
  auto done = [&](Verdict::Kind kind) -> Verdict {
    v.kind = kind;
    trace->verdict = kind;
    ctx.memo[key] = {repr, v};
    return v;
  };

  int n = d.num_components();
  if (n == 0 || d.is_crossingless()) {
    trace->note = "crossingless";
    return done(Verdict::Kind::Trivial);
  }
  if (n == 1) {
    Verdict u = is_unknot(d, ctx.budget, ctx.search);
    v.certificate = u.certificate;
    v.report = u.report;
    trace->note = "unknot search";
    return done(u.kind);
  }

  // step 1: pairwise linking numbers
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (trace->linking[i][j] != 0) {
        Witness w;
        w.i = i;
        w.j = j;
        w.value = trace->linking[i][j];
        v.witness = w;
        trace->note = "nonzero linking number";
        return done(Verdict::Kind::Nontrivial);
      }

  // step 2: every deletion-sublink
  bool any_inconclusive = false;
  for (int i = 0; i < n; ++i) {
    Verdict sub = is_trivial_link_impl(delete_component(d, i), ctx);
    trace->sublinks.push_back(sub);
    if (sub.is_nontrivial()) {
      Witness w = sub.witness ? *sub.witness : Witness{};
      WitnessStep step;
      step.kind = WitnessStep::Kind::Delete;
      step.component = i;
      w.path.insert(w.path.begin(), step);
      v.witness = w;
      trace->note = "nontrivial sublink";
      return done(Verdict::Kind::Nontrivial);
    }
    if (sub.is_inconclusive()) any_inconclusive = true;
  }
  if (any_inconclusive) {
    trace->note = "inconclusive sublink";
    return done(Verdict::Kind::Inconclusive);
  }

  // step 3: one twisted link L(..., 1/q, ...). Components are tried in index
  // order under a shared node pool; the cheapest normalization wins.
  long long pool = ctx.budget.max_nodes;
  int best_k = -1;
  long long best_nodes = 0;
  SearchFound best_found;
  SearchReport merged;
  int last_k = ctx.options.try_all_components ? n - 1 : 0;
  for (int k = 0; k <= last_k && pool > 0; ++k) {
    SearchBudget b = ctx.budget;
    b.max_nodes = pool;
    SearchOutcome out = search_reduce(d, Target::bundled(k), b, ctx.search);
    pool -= out.report.nodes_explored;
    merged.nodes_explored += out.report.nodes_explored;
    merged.crossings_cap_hit |= out.report.crossings_cap_hit;
    merged.nodes_cap_hit |= out.report.nodes_cap_hit;
    merged.depth_cap_hit |= out.report.depth_cap_hit;
    if (out.found && (best_k < 0 || out.report.nodes_explored < best_nodes)) {
      best_k = k;
      best_nodes = out.report.nodes_explored;
      best_found = std::move(*out.found);
    }
  }
  if (best_k < 0) {
    v.report = merged;
    trace->note = "no component reached bundled form within budget";
    return done(Verdict::Kind::Inconclusive);
  }
  trace->twist_component = best_k;
  trace->twist_q = ctx.options.twist_sign;
  trace->normalization = best_found.certificate;
  auto site = detect_bundle(best_found.diagram, best_k);
  if (!site) throw std::logic_error("bundled target found but detection failed");
  LinkDiagram twisted = twist(best_found.diagram, *site, ctx.options.twist_sign, /*keep=*/false);
  Verdict sub = is_trivial_link_impl(twisted, ctx);
  trace->twisted = sub;
  if (sub.is_trivial()) {
    trace->note = "linking zero, all sublinks trivial, twisted link trivial";
    return done(Verdict::Kind::Trivial);
  }
  if (sub.is_nontrivial()) {
    Witness w = sub.witness ? *sub.witness : Witness{};
    WitnessStep step;
    step.kind = WitnessStep::Kind::Twist;
    step.component = best_k;
    step.q = ctx.options.twist_sign;
    step.normalization = best_found.certificate;
    w.path.insert(w.path.begin(), step);
    v.witness = w;
    trace->note = "twisted link nontrivial";
    return done(Verdict::Kind::Nontrivial);
  }
  v.report = sub.report;
  trace->note = "twisted link inconclusive";
  return done(Verdict::Kind::Inconclusive);
}

}  // namespace detail

inline Verdict is_trivial_link(const LinkDiagram& d, const SearchBudget& budget,
                               const SearchOptions& opts = {},
                               const ClassifyOptions& copts = {}) {
  detail::ClassifyContext ctx{budget, opts, copts, {}};
  return detail::is_trivial_link_impl(d, ctx);
}

// Independent replay of a Trivial verdict's assembled evidence: zero linking
// matrix, all deletion-sublinks Trivial (recursively), and a Trivial twisted
// link reached by replaying the recorded normalization moves and twisting.
inline bool verify_triviality_evidence(const LinkDiagram& d, const Verdict& v) {
  if (!v.is_trivial()) return false;
  try {
    if (d.is_crossingless()) return true;
    if (d.num_components() == 1)
      return replay_certificate(d, v.certificate).is_crossingless();
    if (!v.trace) return false;
    const TrivialityTrace& t = *v.trace;
    if (!homologically_trivial(linking_matrix(d))) return false;
    if (static_cast<int>(t.sublinks.size()) != d.num_components()) return false;
    for (int i = 0; i < d.num_components(); ++i)
      if (!verify_triviality_evidence(delete_component(d, i), t.sublinks[i])) return false;
    if (t.twist_component < 0 || !t.twisted) return false;
    LinkDiagram normalized = replay_certificate(d, t.normalization);
    auto site = detect_bundle(normalized, t.twist_component);
    if (!site) return false;
    LinkDiagram twisted = twist(normalized, *site, t.twist_q, /*keep=*/false);
    return verify_triviality_evidence(twisted, *t.twisted);
  } catch (const std::exception&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// Brunnian / homologically trivial / HTB classification.

enum class ThreeValued { Confirmed, Refuted, Inconclusive };

inline const char* three_valued_name(ThreeValued t) {
  switch (t) {
    case ThreeValued::Confirmed: return "confirmed";
    case ThreeValued::Refuted: return "refuted";
    case ThreeValued::Inconclusive: return "inconclusive";
  }
  return "?";
}

struct ClassificationReport {
  LinkingMatrix linking;
  bool homologically_trivial = false;
  Verdict brunnian;                      // aggregate over all deletion-sublinks
  std::vector<Verdict> sublink_verdicts; // one per component, for n >= 2
  ThreeValued htb = ThreeValued::Inconclusive;
  Verdict trivial;
};

inline ClassificationReport classify_htb(const LinkDiagram& d, const SearchBudget& budget,
                                         const SearchOptions& opts = {},
                                         const ClassifyOptions& copts = {}) {
  detail::ClassifyContext ctx{budget, opts, copts, {}};
  ClassificationReport rep;
  rep.linking = linking_matrix(d);
  rep.homologically_trivial = homologically_trivial(rep.linking);

  int n = d.num_components();
  if (n <= 1) {
    // a knot is a 1-component Brunnian link by convention
    rep.brunnian.kind = Verdict::Kind::Trivial;
  } else {
    bool any_nontrivial = false, any_inconclusive = false;
    for (int i = 0; i < n; ++i) {
      Verdict sub = detail::is_trivial_link_impl(delete_component(d, i), ctx);
      if (sub.is_nontrivial() && !any_nontrivial) {
        any_nontrivial = true;
        rep.brunnian.witness = sub.witness;
        if (rep.brunnian.witness) {
          WitnessStep step;
          step.kind = WitnessStep::Kind::Delete;
          step.component = i;
          rep.brunnian.witness->path.insert(rep.brunnian.witness->path.begin(), step);
        }
      }
      any_inconclusive |= sub.is_inconclusive();
      rep.sublink_verdicts.push_back(std::move(sub));
    }
    rep.brunnian.kind = any_nontrivial     ? Verdict::Kind::Nontrivial
                        : any_inconclusive ? Verdict::Kind::Inconclusive
                                           : Verdict::Kind::Trivial;
  }

  if (!rep.homologically_trivial || rep.brunnian.is_nontrivial())
    rep.htb = ThreeValued::Refuted;
  else if (rep.brunnian.is_trivial())
    rep.htb = ThreeValued::Confirmed;
  else
    rep.htb = ThreeValued::Inconclusive;

  rep.trivial = detail::is_trivial_link_impl(d, ctx);
  return rep;
}

}  // namespace linkcalc
