#pragma once

// Slope-tuple surgery interface L(x_1, ..., x_n): per-component instructions
// `*` (leave alone), `1/0` = `inf` (delete), or `1/q` (twist q times about
// the component and delete it). Only slopes with |p| = 1 have a diagrammatic
// realization here; anything else is rejected.

#include <variant>

#include "search.hpp"
#include "twist.hpp"

namespace linkcalc {

struct Slope {
  enum class Kind { Star, Infinity, OneOverQ };
  Kind kind = Kind::Star;
  int q = 0;
};

using SlopeVector = std::vector<Slope>;

inline SlopeVector parse_slopes(const std::string& text) {
  SlopeVector out;
  std::string cur;
  auto flush = [&]() {
    std::string t;
    for (char c : cur)
      if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    cur.clear();
    if (t.empty()) throw DiagramError("empty slope entry");
    if (t == "*") {
      out.push_back({Slope::Kind::Star, 0});
      return;
    }
    if (t == "inf" || t == "1/0" || t == "-1/0") {
      out.push_back({Slope::Kind::Infinity, 0});
      return;
    }
    auto slash = t.find('/');
    if (slash == std::string::npos)
      throw DiagramError("slope '" + t + "' not recognized (want *, inf, or 1/q)");
    std::string ps = t.substr(0, slash), qs = t.substr(slash + 1);
    long p = 0, q = 0;
    try {
      p = std::stol(ps);
      q = std::stol(qs);
    } catch (...) {
      throw DiagramError("slope '" + t + "' not recognized (want *, inf, or 1/q)");
    }
    if (q == 0) {
      out.push_back({Slope::Kind::Infinity, 0});
      return;
    }
    if (p != 1 && p != -1)
      throw DiagramError("slope '" + t +
                         "' is out of scope: only 1/q surgeries have a diagram rewrite");
    out.push_back({Slope::Kind::OneOverQ, static_cast<int>(p * q)});
  };
  for (char c : text) {
    if (c == ',') {
      flush();
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return out;
}

struct SlopeFailure {
  int component = -1;  // original (1-based in messages, 0-based here) index
  SearchReport report;
};

using SlopesResult = std::variant<LinkDiagram, SlopeFailure>;

// Applies the tuple left to right: deletions directly, 1/q entries by
// bringing the component to bundled form (detection, else bounded search)
// and twisting with the circle removed.
inline SlopesResult apply_slopes(const LinkDiagram& d, const SlopeVector& slopes,
                                 const SearchBudget& budget, const SearchOptions& opts = {}) {
  if (static_cast<int>(slopes.size()) != d.num_components())
    throw DiagramError("slope vector length " + std::to_string(slopes.size()) +
                       " does not match component count " + std::to_string(d.num_components()));
  LinkDiagram cur = d;
  std::vector<int> where(d.num_components());
  for (int i = 0; i < d.num_components(); ++i) where[i] = i;
  auto drop = [&](int orig) {
    int k = where[orig];
    for (auto& w : where)
      if (w > k) --w;
    where[orig] = -1;
  };
  for (int i = 0; i < static_cast<int>(slopes.size()); ++i) {
    const Slope& s = slopes[i];
    if (s.kind == Slope::Kind::Star) continue;
    int k = where[i];
    if (s.kind == Slope::Kind::Infinity) {
      cur = delete_component(cur, k);
      drop(i);
      continue;
    }
    auto site = detect_bundle(cur, k);
    if (!site) {
      SearchOutcome out = search_reduce(cur, Target::bundled(k), budget, opts);
      if (!out.found) return SlopeFailure{i, out.report};
      cur = out.found->diagram;
      site = detect_bundle(cur, k);
      if (!site) throw std::logic_error("bundled target found but detection failed");
    }
    cur = twist(cur, *site, s.q, /*keep=*/false);
    drop(i);
  }
  return cur;
}

}  // namespace linkcalc
