#pragma once

// Bounded breadth-first search over the Reidemeister move graph, deduplicated
// by canonical key. Children of a layer may be generated by several workers;
// the merge into the visited set runs in frontier order, so verdicts and
// certificates are identical for every worker count.

#include <atomic>
#include <memory>
#include <mutex>
#include <thread>
#include <unordered_set>

#include "canonical.hpp"
#include "moves.hpp"
#include "twist.hpp"

namespace linkcalc {

struct SearchBudget {
  int max_crossings = -1;  // -1 means input size + 2
  long long max_nodes = 100000;
  int max_depth = 1 << 20;  // certificate-length cap
};

struct SearchReport {
  long long nodes_explored = 0;
  long long frontier_size = 0;
  bool crossings_cap_hit = false;
  bool nodes_cap_hit = false;
  bool depth_cap_hit = false;
  bool exhausted = false;  // move graph fully explored within the caps
};

struct SearchOptions {
  int workers = 1;
  bool deterministic = true;  // outcomes are deterministic regardless; kept for the CLI
  bool greedy_prepass = true;
  std::ostream* trace = nullptr;  // line-delimited JSON, one record per explored node
};

struct Target {
  enum class Kind { Crossingless, ComponentSelfCrossingFree, ComponentBundled, KeyEquals };
  Kind kind = Kind::Crossingless;
  int component = -1;
  CanonicalKey key;

  static Target crossingless() { return Target{}; }
  static Target self_crossing_free(int component) {
    return Target{Kind::ComponentSelfCrossingFree, component, {}};
  }
  static Target bundled(int component) { return Target{Kind::ComponentBundled, component, {}}; }
  static Target key_equals(CanonicalKey k) { return Target{Kind::KeyEquals, -1, std::move(k)}; }

  bool matches(const LinkDiagram& d) const {
    switch (kind) {
      case Kind::Crossingless:
        return d.is_crossingless();
      case Kind::ComponentSelfCrossingFree:
        return component < d.num_components() &&
               detail::passages_along(d, component).has_value();
      case Kind::ComponentBundled:
        return component < d.num_components() && detect_bundle(d, component).has_value();
      case Kind::KeyEquals:
        return canonical_key(d) == key;
    }
    return false;
  }

  // Dedup must not conflate diagrams that differ in the tracked component.
  CanonicalKey dedup_key(const LinkDiagram& d) const {
    if (kind == Kind::ComponentSelfCrossingFree || kind == Kind::ComponentBundled)
      return canonical_key_marked(d, component);
    return canonical_key(d);
  }
};

struct SearchFound {
  LinkDiagram diagram;
  std::vector<MoveSpec> certificate;
};

struct SearchOutcome {
  std::optional<SearchFound> found;
  SearchReport report;
};

namespace detail {

struct PathEntry {
  long long parent;
  MoveSpec move;
};

inline std::vector<MoveSpec> unwind(const std::vector<PathEntry>& path, long long idx) {
  std::vector<MoveSpec> cert;
  while (idx > 0) {
    cert.push_back(path[idx].move);
    idx = path[idx].parent;
  }
  std::reverse(cert.begin(), cert.end());
  return cert;
}

}  // namespace detail

inline SearchOutcome search_reduce(const LinkDiagram& d, const Target& target,
                                   const SearchBudget& budget, const SearchOptions& opts = {}) {
  int cap = budget.max_crossings < 0 ? d.num_crossings() + 2
                                     : std::max(budget.max_crossings, d.num_crossings());
  SearchReport rep;
  std::vector<detail::PathEntry> path;
  path.push_back({-1, MoveSpec{}});  // root

  auto emit_trace = [&](const LinkDiagram& n, int depth) {
    if (!opts.trace) return;
    *opts.trace << "{\"key\":\"" << canonical_key(n).hex() << "\",\"depth\":" << depth
                << ",\"crossings\":" << n.num_crossings() << "}\n";
  };

  if (target.matches(d)) {
    rep.exhausted = false;
    return {SearchFound{d, {}}, rep};
  }

  LinkDiagram root = d;
  long long root_idx = 0;
  int prefix_len = 0;
  if (opts.greedy_prepass) {
    // removals strictly decrease the crossing count, so apply them eagerly
    while (prefix_len < budget.max_depth) {
      auto ms = enumerate_moves(root, 0);  // cap 0: removals only (plus R3, skipped)
      const MoveSpec* pick = nullptr;
      for (const auto& m : ms)
        if (m.kind == MoveKind::R1Remove || m.kind == MoveKind::R2Remove) {
          pick = &m;
          break;
        }
      if (!pick) break;
      root = apply_move(root, *pick, /*check=*/false);
      path.push_back({root_idx, *pick});
      root_idx = static_cast<long long>(path.size()) - 1;
      ++prefix_len;
      if (target.matches(root))
        return {SearchFound{root, detail::unwind(path, root_idx)}, rep};
    }
  }

  std::unordered_set<std::string> visited;
  visited.insert(target.dedup_key(root).bytes);
  struct Node {
    long long idx;
    LinkDiagram diag;
  };
  std::vector<Node> frontier;
  frontier.push_back({root_idx, root});

  struct Child {
    long long parent;
    MoveSpec move;
    LinkDiagram diag;
    std::string key;
  };

  for (int depth = 0;; ++depth) {
    if (frontier.empty()) {
      rep.exhausted = true;
      rep.frontier_size = 0;
      return {std::nullopt, rep};
    }
    if (prefix_len + depth + 1 > budget.max_depth) {
      rep.depth_cap_hit = true;
      rep.frontier_size = static_cast<long long>(frontier.size());
      return {std::nullopt, rep};
    }
    if (rep.nodes_explored + static_cast<long long>(frontier.size()) > budget.max_nodes) {
      long long room = budget.max_nodes - rep.nodes_explored;
      rep.nodes_cap_hit = true;
      if (room <= 0) {
        rep.frontier_size = static_cast<long long>(frontier.size());
        return {std::nullopt, rep};
      }
      frontier.resize(static_cast<size_t>(room));
    }
    rep.nodes_explored += static_cast<long long>(frontier.size());
    for (const Node& n : frontier) {
      emit_trace(n.diag, depth);
      if (n.diag.num_crossings() + 2 > cap) rep.crossings_cap_hit = true;
    }

    // expand: children per frontier node, generated possibly in parallel
    std::vector<std::vector<Child>> buckets(frontier.size());
    auto expand = [&](size_t i) {
      const Node& n = frontier[i];
      for (const auto& m : enumerate_moves(n.diag, cap)) {
        LinkDiagram child = apply_move(n.diag, m, /*check=*/false);
        buckets[i].push_back({n.idx, m, child, target.dedup_key(child).bytes});
      }
    };
    int workers = std::max(1, opts.workers);
    if (workers == 1 || frontier.size() < 2) {
      for (size_t i = 0; i < frontier.size(); ++i) expand(i);
    } else {
      std::atomic<size_t> next{0};
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w)
        pool.emplace_back([&]() {
          for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= frontier.size()) return;
            expand(i);
          }
        });
      for (auto& t : pool) t.join();
    }

    // deterministic merge in frontier order
    std::vector<Node> next_frontier;
    for (auto& bucket : buckets) {
      for (auto& c : bucket) {
        if (!visited.insert(c.key).second) continue;
        path.push_back({c.parent, c.move});
        long long idx = static_cast<long long>(path.size()) - 1;
        if (target.matches(c.diag))
          return {SearchFound{c.diag, detail::unwind(path, idx)}, rep};
        next_frontier.push_back({idx, std::move(c.diag)});
      }
    }
    frontier = std::move(next_frontier);
  }
}

// ---------------------------------------------------------------------------
// Verdict lattice of the bounded semi-decision procedures.

struct WitnessStep {
  enum class Kind { Delete, Twist };
  Kind kind = Kind::Delete;
  int component = -1;
  int q = 0;
  std::vector<MoveSpec> normalization;  // moves applied before a twist
};

struct Witness {
  std::vector<WitnessStep> path;  // surgeries leading to the witnessing diagram
  int i = 0, j = 0;               // components with nonzero linking there
  int value = 0;
};

struct TrivialityTrace;

struct Verdict {
  enum class Kind { Trivial, Nontrivial, Inconclusive };
  Kind kind = Kind::Inconclusive;
  std::vector<MoveSpec> certificate;  // reduction moves, when search-produced
  std::optional<Witness> witness;
  SearchReport report;
  std::shared_ptr<TrivialityTrace> trace;

  bool is_trivial() const { return kind == Kind::Trivial; }
  bool is_nontrivial() const { return kind == Kind::Nontrivial; }
  bool is_inconclusive() const { return kind == Kind::Inconclusive; }
};

inline const char* verdict_name(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Trivial: return "trivial";
    case Verdict::Kind::Nontrivial: return "nontrivial";
    case Verdict::Kind::Inconclusive: return "inconclusive";
  }
  return "?";
}

// Bounded unknot test: a one-component diagram is Trivial when search reaches
// a crossingless diagram; knottedness is never certified, only Inconclusive.
inline Verdict is_unknot(const LinkDiagram& d, const SearchBudget& budget,
                         const SearchOptions& opts = {}) {
  if (d.num_components() != 1)
    throw DiagramError("is_unknot expects a single component, got " +
                       std::to_string(d.num_components()));
  SearchOutcome out = search_reduce(d, Target::crossingless(), budget, opts);
  Verdict v;
  v.report = out.report;
  if (out.found) {
    v.kind = Verdict::Kind::Trivial;
    v.certificate = std::move(out.found->certificate);
  } else {
    v.kind = Verdict::Kind::Inconclusive;
  }
  return v;
}

// Replays a surgery witness path and checks the claimed nonzero entry.
inline bool verify_witness(const LinkDiagram& d, const Witness& w) {
  try {
    LinkDiagram cur = d;
    for (const auto& step : w.path) {
      if (!step.normalization.empty()) cur = replay_certificate(cur, step.normalization);
      if (step.kind == WitnessStep::Kind::Delete) {
        cur = delete_component(cur, step.component);
      } else {
        auto site = detect_bundle(cur, step.component);
        if (!site) return false;
        cur = twist(cur, *site, step.q, /*keep=*/false);
      }
    }
    LinkingMatrix m = linking_matrix(cur);
    return w.i < static_cast<int>(m.size()) && w.j < static_cast<int>(m.size()) &&
           w.value != 0 && m[w.i][w.j] == w.value;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace linkcalc
