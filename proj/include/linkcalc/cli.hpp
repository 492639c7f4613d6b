#pragma once

// Command-line surface. Exit codes: 0 for definite results, 2 for
// Inconclusive (so scripts can tell a bounded search gave up), 1 for errors.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json_io.hpp"

namespace linkcalc {

namespace cli_detail {

struct CommonOpts {
  std::string input;
  std::string format = "text";
  int max_crossings = -1;
  long long max_nodes = 100000;
  int max_depth = 1 << 20;
  int workers = 1;
  bool deterministic = false;
  std::string trace_path;
};

inline void add_input(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("input", o.input, "file path, '-' for stdin, or corpus:<name>")->required();
  cmd->add_option("--format", o.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
}

inline void add_budget(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--max-crossings", o.max_crossings, "crossing cap (default input + 2)")
      ->envname("LINKCALC_MAX_CROSSINGS");
  cmd->add_option("--max-nodes", o.max_nodes, "explored-diagram cap")
      ->envname("LINKCALC_MAX_NODES");
  cmd->add_option("--max-depth", o.max_depth, "certificate-length cap")
      ->envname("LINKCALC_MAX_DEPTH");
  cmd->add_option("--workers", o.workers, "worker threads for search")
      ->envname("LINKCALC_WORKERS");
  cmd->add_flag("--deterministic", o.deterministic, "force single-worker search");
}

inline SearchBudget budget_of(const CommonOpts& o) {
  SearchBudget b;
  b.max_crossings = o.max_crossings;
  b.max_nodes = o.max_nodes;
  b.max_depth = o.max_depth;
  return b;
}

inline SearchOptions search_of(const CommonOpts& o, std::ostream* trace = nullptr) {
  SearchOptions s;
  s.workers = o.deterministic ? 1 : o.workers;
  s.deterministic = o.deterministic;
  s.trace = trace;
  return s;
}

inline LinkDiagram load_input(const std::string& spec) {
  if (is_corpus_ref(spec)) return corpus_load(spec.substr(7));
  std::string text;
  if (spec == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(spec);
    if (!in) throw DiagramError("cannot open '" + spec + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  size_t i = text.find_first_not_of(" \t\r\n");
  if (i != std::string::npos && text[i] == '{')
    return diagram_from_json(json::parse(text));
  return parse_pd(text);
}

inline void print_diagram(std::ostream& out, const LinkDiagram& d, const std::string& format) {
  if (format == "json") {
    out << diagram_to_json(renormalize_arcs(d)).dump(2) << "\n";
  } else {
    out << serialize_pd(d) << "\n";
  }
}

inline void print_matrix(std::ostream& out, const LinkingMatrix& m) {
  for (const auto& row : m) {
    out << "  [";
    for (size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
    out << "]\n";
  }
}

inline int verdict_exit(const Verdict& v) { return v.is_inconclusive() ? 2 : 0; }

inline void print_verdict(std::ostream& out, const LinkDiagram& d, const Verdict& v,
                          const std::string& format, bool with_trace) {
  if (format == "json") {
    out << verdict_to_json(v, with_trace).dump(2) << "\n";
    return;
  }
  out << "verdict: " << verdict_name(v.kind) << "\n";
  if (v.is_trivial()) {
    if (!v.certificate.empty() || d.num_components() <= 1 || d.is_crossingless()) {
      out << "certificate: " << v.certificate.size() << " moves\n";
      for (const auto& m : v.certificate) out << "  " << move_to_json(m).dump() << "\n";
    } else if (v.trace) {
      out << "evidence: recursion over sublinks and one twisted link (use --format json for the trace)\n";
    }
  }
  if (v.witness) {
    out << "witness: lk(" << v.witness->i + 1 << "," << v.witness->j + 1
        << ") = " << v.witness->value;
    if (!v.witness->path.empty()) {
      out << " after";
      for (const auto& s : v.witness->path) {
        if (s.kind == WitnessStep::Kind::Delete)
          out << " delete(" << s.component + 1 << ")";
        else
          out << " twist(" << s.component + 1 << ", q=" << s.q << ")";
      }
    }
    out << "\n";
  }
  if (v.is_inconclusive())
    out << "budget report: " << v.report.nodes_explored << " nodes explored, frontier "
        << v.report.frontier_size << (v.report.exhausted ? ", move graph exhausted at caps" : "")
        << "\n";
}

}  // namespace cli_detail

inline int run_command(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  using namespace cli_detail;
  CLI::App app{"link-diagram calculus: Reidemeister search, twist surgery, unlink recognition"};
  app.require_subcommand(1);
  CommonOpts o;

  auto* validate = app.add_subcommand("validate", "parse and validate a diagram");
  add_input(validate, o);

  auto* invariants = app.add_subcommand("invariants", "linking matrix, writhe, faces");
  add_input(invariants, o);

  auto* moves = app.add_subcommand("moves", "enumerate or apply Reidemeister moves");
  add_input(moves, o);
  std::string apply_path;
  int moves_cap = -1;
  moves->add_option("--apply", apply_path, "apply a move spec from a JSON file ('-' for stdin)");
  moves->add_option("--cap", moves_cap, "crossing cap for enumeration (default input + 2)");

  auto* reduce = app.add_subcommand("reduce", "search for a crossingless diagram");
  add_input(reduce, o);
  add_budget(reduce, o);
  reduce->add_option("--trace", o.trace_path, "write a line-delimited JSON search trace");

  auto* unknot = app.add_subcommand("unknot", "bounded unknot test for one-component diagrams");
  add_input(unknot, o);
  add_budget(unknot, o);
  unknot->add_option("--trace", o.trace_path, "write a line-delimited JSON search trace");

  auto* trivial = app.add_subcommand(
      "trivial",
      "recursive trivial-link test: zero linking numbers, trivial deletion-sublinks, and one "
      "trivial twisted link, with bounded unknot searches at the base. (In principle triviality "
      "also reduces to recognizing the 3-sphere among the surgeries along the components; no "
      "3-manifold recognition is implemented here, so verdicts may be inconclusive.)");
  add_input(trivial, o);
  add_budget(trivial, o);
  int twist_sign = 1;
  trivial->add_option("--twist-sign", twist_sign, "q used in the recursion's twist step (+1/-1)")
      ->check(CLI::IsMember({1, -1}));

  auto* classify = app.add_subcommand("classify", "homologically-trivial / Brunnian / HTB report");
  add_input(classify, o);
  add_budget(classify, o);

  auto* twist_cmd = app.add_subcommand("twist", "1/q twist about a bundled component");
  add_input(twist_cmd, o);
  add_budget(twist_cmd, o);
  int component = 0, q = 1;
  bool keep = false;
  twist_cmd->add_option("--component", component, "component to twist about (1-based)")->required();
  twist_cmd->add_option("--q", q, "number of full twists");
  twist_cmd->add_flag("--keep", keep, "keep the circle around the twisted bundle");

  auto* slopes_cmd = app.add_subcommand("slopes", "apply a surgery slope vector");
  add_input(slopes_cmd, o);
  add_budget(slopes_cmd, o);
  std::string slopes_text;
  slopes_cmd->add_option("--slopes", slopes_text, "comma-separated *, inf, or 1/q per component")
      ->required();

  auto* corpus_cmd = app.add_subcommand("corpus", "list or show named example diagrams");
  std::string corpus_action = "list", corpus_name;
  corpus_cmd->add_option("action", corpus_action, "list or show")
      ->check(CLI::IsMember({"list", "show"}));
  corpus_cmd->add_option("name", corpus_name, "entry name for show");
  corpus_cmd->add_option("--format", o.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  std::vector<const char*> argv;
  argv.push_back("linkcalc");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    std::ofstream trace_file;
    std::ostream* trace = nullptr;
    if (!o.trace_path.empty()) {
      trace_file.open(o.trace_path);
      if (!trace_file) throw DiagramError("cannot open trace file '" + o.trace_path + "'");
      trace = &trace_file;
    }

    if (app.got_subcommand(validate)) {
      LinkDiagram d = load_input(o.input);
      if (o.format == "json") {
        json j;
        j["valid"] = true;
        j["components"] = d.num_components();
        j["crossings"] = d.num_crossings();
        j["diagram"] = diagram_to_json(renormalize_arcs(d));
        out << j.dump(2) << "\n";
      } else {
        out << "valid: " << d.num_components() << " components, " << d.num_crossings()
            << " crossings\n";
      }
      return 0;
    }

    if (app.got_subcommand(invariants)) {
      LinkDiagram d = load_input(o.input);
      LinkingMatrix m = linking_matrix(d);
      auto fs = faces(d);
      if (o.format == "json") {
        json jf = json::array();
        for (const auto& f : fs) jf.push_back(f.degree());
        json j{{"components", d.num_components()},
               {"crossings", d.num_crossings()},
               {"linking", m},
               {"homologically_trivial", homologically_trivial(m)},
               {"writhe", writhe(d)},
               {"faces", jf}};
        out << j.dump(2) << "\n";
      } else {
        out << "components: " << d.num_components() << "\ncrossings: " << d.num_crossings()
            << "\nwrithe: " << writhe(d) << "\nlinking matrix:\n";
        print_matrix(out, m);
        out << "faces: " << fs.size() << "\n";
      }
      return 0;
    }

    if (app.got_subcommand(moves)) {
      LinkDiagram d = load_input(o.input);
      int cap = moves_cap < 0 ? d.num_crossings() + 2 : moves_cap;
      if (!apply_path.empty()) {
        std::string text;
        if (apply_path == "-") {
          std::ostringstream ss;
          ss << std::cin.rdbuf();
          text = ss.str();
        } else {
          std::ifstream in(apply_path);
          if (!in) throw DiagramError("cannot open '" + apply_path + "'");
          std::ostringstream ss;
          ss << in.rdbuf();
          text = ss.str();
        }
        json j = json::parse(text);
        LinkDiagram result =
            j.is_array() ? replay_certificate(d, certificate_from_json(j))
                         : apply_move(d, move_from_json(j));
        print_diagram(out, result, o.format);
        return 0;
      }
      auto ms = enumerate_moves(d, cap);
      if (o.format == "json") {
        out << certificate_to_json(ms).dump(2) << "\n";
      } else {
        for (const auto& m : ms) out << move_to_json(m).dump() << "\n";
        out << "total: " << ms.size() << " moves at cap " << cap << "\n";
      }
      return 0;
    }

    if (app.got_subcommand(reduce)) {
      LinkDiagram d = load_input(o.input);
      SearchOutcome res = search_reduce(d, Target::crossingless(), budget_of(o), search_of(o, trace));
      if (o.format == "json") {
        json j;
        j["found"] = res.found.has_value();
        j["report"] = report_to_json(res.report);
        if (res.found) {
          j["certificate"] = certificate_to_json(res.found->certificate);
          j["diagram"] = diagram_to_json(renormalize_arcs(res.found->diagram));
        }
        out << j.dump(2) << "\n";
      } else if (res.found) {
        out << "reduced in " << res.found->certificate.size() << " moves\n";
        print_diagram(out, res.found->diagram, o.format);
      } else {
        out << "not reduced: " << res.report.nodes_explored << " nodes explored"
            << (res.report.exhausted ? ", move graph exhausted at caps" : "") << "\n";
      }
      return res.found ? 0 : 2;
    }

    if (app.got_subcommand(unknot)) {
      LinkDiagram d = load_input(o.input);
      Verdict v = is_unknot(d, budget_of(o), search_of(o, trace));
      print_verdict(out, d, v, o.format, true);
      return verdict_exit(v);
    }

    if (app.got_subcommand(trivial)) {
      LinkDiagram d = load_input(o.input);
      ClassifyOptions copts;
      copts.twist_sign = twist_sign;
      Verdict v = is_trivial_link(d, budget_of(o), search_of(o), copts);
      print_verdict(out, d, v, o.format, true);
      return verdict_exit(v);
    }

    if (app.got_subcommand(classify)) {
      LinkDiagram d = load_input(o.input);
      ClassificationReport rep = classify_htb(d, budget_of(o), search_of(o));
      if (o.format == "json") {
        out << classification_to_json(rep).dump(2) << "\n";
      } else {
        out << "homologically trivial: " << (rep.homologically_trivial ? "yes" : "no") << "\n";
        out << "brunnian: " << verdict_name(rep.brunnian.kind) << "\n";
        for (size_t i = 0; i < rep.sublink_verdicts.size(); ++i)
          out << "  sublink without component " << i + 1 << ": "
              << verdict_name(rep.sublink_verdicts[i].kind) << "\n";
        out << "htb: " << three_valued_name(rep.htb) << "\n";
        out << "trivial: " << verdict_name(rep.trivial.kind) << "\n";
      }
      bool inconclusive = rep.brunnian.is_inconclusive() || rep.htb == ThreeValued::Inconclusive ||
                          rep.trivial.is_inconclusive();
      return inconclusive ? 2 : 0;
    }

    if (app.got_subcommand(twist_cmd)) {
      LinkDiagram d = load_input(o.input);
      if (component < 1 || component > d.num_components())
        throw DiagramError("component " + std::to_string(component) + " out of range");
      int k = component - 1;
      auto site = detect_bundle(d, k);
      std::vector<MoveSpec> normalization;
      LinkDiagram base = d;
      if (!site) {
        SearchOutcome res = search_reduce(d, Target::bundled(k), budget_of(o), search_of(o));
        if (!res.found) {
          if (o.format == "json") {
            json j{{"found", false}, {"report", report_to_json(res.report)}};
            out << j.dump(2) << "\n";
          } else {
            out << "component " << component << " could not be brought to bundled form ("
                << res.report.nodes_explored << " nodes explored)\n";
          }
          return 2;
        }
        base = res.found->diagram;
        normalization = res.found->certificate;
        site = detect_bundle(base, k);
      }
      LinkDiagram result = twist(base, *site, q, keep);
      if (o.format == "json") {
        json j{{"found", true},
               {"site", site_to_json(*site)},
               {"normalization", certificate_to_json(normalization)},
               {"diagram", diagram_to_json(renormalize_arcs(result))}};
        out << j.dump(2) << "\n";
      } else {
        if (!normalization.empty())
          out << "normalized with " << normalization.size() << " moves\n";
        out << "twisted about component " << component << " (q=" << q << ", m=" << site->m()
            << (keep ? ", kept)" : ", deleted)") << "\n";
        print_diagram(out, result, o.format);
      }
      return 0;
    }

    if (app.got_subcommand(slopes_cmd)) {
      LinkDiagram d = load_input(o.input);
      SlopeVector v = parse_slopes(slopes_text);
      SlopesResult res = apply_slopes(d, v, budget_of(o), search_of(o));
      if (std::holds_alternative<SlopeFailure>(res)) {
        const auto& f = std::get<SlopeFailure>(res);
        if (o.format == "json") {
          json j{{"found", false},
                 {"component", f.component + 1},
                 {"report", report_to_json(f.report)}};
          out << j.dump(2) << "\n";
        } else {
          out << "component " << f.component + 1
              << " could not be brought to bundled form within budget\n";
        }
        return 2;
      }
      print_diagram(out, std::get<LinkDiagram>(res), o.format);
      return 0;
    }

    if (app.got_subcommand(corpus_cmd)) {
      if (corpus_action == "list") {
        if (o.format == "json") {
          json j = json::array();
          for (const auto& e : corpus())
            j.push_back({{"name", e.name},
                         {"components", e.components},
                         {"crossings", e.crossings},
                         {"description", e.description}});
          out << j.dump(2) << "\n";
        } else {
          for (const auto& e : corpus())
            out << e.name << ": " << e.description << " (" << e.components << " components, "
                << e.crossings << " crossings)\n";
        }
        return 0;
      }
      if (corpus_name.empty()) throw DiagramError("corpus show needs a name");
      const CorpusEntry* e = corpus_find(corpus_name);
      if (!e) throw DiagramError("unknown corpus entry '" + corpus_name + "'");
      if (o.format == "json") {
        json j{{"name", e->name},
               {"description", e->description},
               {"pd", e->pd},
               {"diagram", diagram_to_json(corpus_load(e->name))}};
        out << j.dump(2) << "\n";
      } else {
        out << e->pd << "\n";
      }
      return 0;
    }
  } catch (const StaleSiteError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const DiagramError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no command\n";
  return 1;
}

}  // namespace linkcalc
