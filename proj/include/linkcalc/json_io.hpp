#pragma once

// JSON encodings for every value the CLI emits: diagrams, move specs,
// certificates, twist sites, verdicts, traces, and classification reports.
// Field names are stable; certificates are lists of move specs.

#include "classify.hpp"
#include "corpus.hpp"
#include "json.hpp"
#include "search.hpp"
#include "slopes.hpp"

namespace linkcalc {

using json = nlohmann::json;

inline json diagram_to_json(const LinkDiagram& d) {
  json j;
  j["crossings"] = json::array();
  for (const auto& x : d.crossings) j["crossings"].push_back({x.s[0], x.s[1], x.s[2], x.s[3]});
  j["loops"] = d.loops;
  j["components"] = d.components;
  return j;
}

inline LinkDiagram diagram_from_json(const json& j) {
  std::vector<Crossing> xs;
  for (const auto& q : j.at("crossings")) {
    if (!q.is_array() || q.size() != 4) throw DiagramError("crossing entries must be quadruples");
    Crossing x;
    for (int t = 0; t < 4; ++t) x.s[t] = q[t].get<Arc>();
    xs.push_back(x);
  }
  std::vector<Arc> loops = j.value("loops", std::vector<Arc>{});
  detail::check_multiplicity(xs, loops);
  if (!j.contains("components")) {
    detail::orient_crossings(xs);
    return make_diagram(std::move(xs), std::move(loops));
  }
  // derive a consistent orientation, then adopt the stored one: flip any
  // component whose stored cycle runs the other way and order as stored
  detail::orient_crossings(xs);
  LinkDiagram d = make_diagram(std::move(xs), std::move(loops));
  auto comps = j.at("components").get<std::vector<std::vector<Arc>>>();
  if (comps.size() != d.components.size())
    throw DiagramError("components field does not match the strand-following relation");
  auto canon = [](std::vector<Arc> c) {
    auto it = std::min_element(c.begin(), c.end());
    std::rotate(c.begin(), it, c.end());
    return c;
  };
  std::vector<std::vector<Arc>> ordered;
  for (auto& w : comps) {
    if (w.empty()) throw DiagramError("empty component in JSON");
    std::vector<Arc> forward = canon(w);
    std::reverse(w.begin(), w.end());
    std::vector<Arc> backward = canon(w);
    bool placed = false;
    for (int i = 0; i < d.num_components() && !placed; ++i) {
      std::vector<Arc> have = canon(d.components[i]);
      if (have == forward) {
        ordered.push_back(d.components[i]);
        placed = true;
      } else if (have == backward) {
        d = reverse_component(d, i);
        ordered.push_back(d.components[i]);
        placed = true;
      }
    }
    if (!placed)
      throw DiagramError("components field does not match the strand-following relation");
  }
  d.components = std::move(ordered);
  detail::validate(d);
  return d;
}

inline json move_to_json(const MoveSpec& m) {
  json j;
  j["kind"] = move_kind_name(m.kind);
  switch (m.kind) {
    case MoveKind::R1Remove:
      j["site"] = {m.c0};
      break;
    case MoveKind::R2Remove:
      j["site"] = {m.c0, m.c1};
      break;
    case MoveKind::R3:
      j["site"] = {m.c0, m.s0, m.c1, m.s1, m.c2, m.s2};
      j["options"] = {{"slide", m.slide}, {"over", m.over}};
      break;
    case MoveKind::R1Add:
      j["site"] = {m.x};
      j["options"] = {{"side", m.side}, {"sign", m.sign}};
      break;
    case MoveKind::R2Add:
      j["site"] = {m.x, m.y};
      j["options"] = {{"side_x", m.side_x}, {"side_y", m.side}, {"over", m.over}, {"turn", m.turn}};
      break;
  }
  json snaps = json::array();
  for (int i = 0; i < m.nsnap; ++i)
    snaps.push_back({m.snap[i].s[0], m.snap[i].s[1], m.snap[i].s[2], m.snap[i].s[3],
                     m.snap[i].over_in});
  if (!snaps.empty()) j["expect"] = snaps;
  return j;
}

inline MoveSpec move_from_json(const json& j) {
  MoveSpec m;
  std::string kind = j.at("kind").get<std::string>();
  auto site = j.value("site", std::vector<int>{});
  auto opt = j.value("options", json::object());
  if (kind == "R1Remove") {
    m.kind = MoveKind::R1Remove;
    m.c0 = site.at(0);
  } else if (kind == "R2Remove") {
    m.kind = MoveKind::R2Remove;
    m.c0 = site.at(0);
    m.c1 = site.at(1);
  } else if (kind == "R3") {
    m.kind = MoveKind::R3;
    m.c0 = site.at(0);
    m.s0 = site.at(1);
    m.c1 = site.at(2);
    m.s1 = site.at(3);
    m.c2 = site.at(4);
    m.s2 = site.at(5);
    m.slide = opt.at("slide").get<int>();
    m.over = opt.at("over").get<bool>();
  } else if (kind == "R1Add") {
    m.kind = MoveKind::R1Add;
    m.x = site.at(0);
    m.side = opt.at("side").get<int>();
    m.sign = opt.at("sign").get<int>();
  } else if (kind == "R2Add") {
    m.kind = MoveKind::R2Add;
    m.x = site.at(0);
    m.y = site.at(1);
    m.side_x = opt.at("side_x").get<int>();
    m.side = opt.at("side_y").get<int>();
    m.over = opt.at("over").get<bool>();
    m.turn = opt.at("turn").get<int>();
  } else {
    throw DiagramError("unknown move kind '" + kind + "'");
  }
  if (j.contains("expect")) {
    int i = 0;
    for (const auto& q : j.at("expect")) {
      if (i >= 3) break;
      for (int t = 0; t < 4; ++t) m.snap[i].s[t] = q.at(t).get<Arc>();
      m.snap[i].over_in = q.at(4).get<int>();
      ++i;
    }
    m.nsnap = i;
  }
  return m;
}

inline json certificate_to_json(const std::vector<MoveSpec>& cert) {
  json j = json::array();
  for (const auto& m : cert) j.push_back(move_to_json(m));
  return j;
}

inline std::vector<MoveSpec> certificate_from_json(const json& j) {
  std::vector<MoveSpec> cert;
  for (const auto& e : j) cert.push_back(move_from_json(e));
  return cert;
}

inline json report_to_json(const SearchReport& r) {
  return json{{"nodes_explored", r.nodes_explored},
              {"frontier_size", r.frontier_size},
              {"exhausted", r.exhausted},
              {"caps_hit",
               {{"crossings", r.crossings_cap_hit},
                {"nodes", r.nodes_cap_hit},
                {"depth", r.depth_cap_hit}}}};
}

inline json site_to_json(const TwistSite& s) {
  json bundle = json::array();
  json over_block = json::array(), under_block = json::array();
  for (const auto& b : s.bundle) {
    bundle.push_back(
        {{"chord", b.chord}, {"ascending", b.ascending}});
    over_block.push_back(b.over_crossing);
    under_block.push_back(b.under_crossing);
  }
  return json{{"component", s.component + 1},
              {"side", s.side},
              {"bundle", bundle},
              {"circle_crossings", {over_block, under_block}}};
}

inline json witness_to_json(const Witness& w) {
  json path = json::array();
  for (const auto& s : w.path) {
    if (s.kind == WitnessStep::Kind::Delete) {
      path.push_back({{"delete", s.component + 1}});
    } else {
      path.push_back({{"twist", {{"component", s.component + 1},
                                 {"q", s.q},
                                 {"normalization", certificate_to_json(s.normalization)}}}});
    }
  }
  return json{{"path", path}, {"components", {w.i + 1, w.j + 1}}, {"linking", w.value}};
}

inline json trace_to_json(const TrivialityTrace& t);

inline json verdict_to_json(const Verdict& v, bool with_trace = true) {
  json j;
  j["verdict"] = verdict_name(v.kind);
  if (v.is_trivial() && (!v.certificate.empty() || !v.trace))
    j["certificate"] = certificate_to_json(v.certificate);
  if (v.witness) j["witness"] = witness_to_json(*v.witness);
  if (v.is_inconclusive()) j["report"] = report_to_json(v.report);
  if (with_trace && v.trace) j["trace"] = trace_to_json(*v.trace);
  return j;
}

inline json trace_to_json(const TrivialityTrace& t) {
  json j;
  j["components"] = t.components;
  j["crossings"] = t.crossings;
  j["verdict"] = verdict_name(t.verdict);
  j["rule"] = t.note;
  j["linking"] = t.linking;
  if (!t.sublinks.empty()) {
    json subs = json::array();
    for (const auto& s : t.sublinks) subs.push_back(verdict_to_json(s));
    j["sublinks"] = subs;
  }
  if (t.twist_component >= 0) {
    j["twist"] = {{"component", t.twist_component + 1},
                  {"q", t.twist_q},
                  {"normalization", certificate_to_json(t.normalization)}};
    if (t.twisted) j["twisted"] = verdict_to_json(*t.twisted);
  }
  return j;
}

inline json classification_to_json(const ClassificationReport& r, bool with_trace = true) {
  json subs = json::array();
  for (const auto& s : r.sublink_verdicts) subs.push_back(verdict_to_json(s, false));
  json j;
  j["homologically_trivial"] = r.homologically_trivial;
  j["linking"] = r.linking;
  j["brunnian"] = verdict_name(r.brunnian.kind);
  j["sublinks"] = subs;
  j["htb"] = three_valued_name(r.htb);
  j["trivial"] = verdict_to_json(r.trivial, with_trace);
  return j;
}

}  // namespace linkcalc
