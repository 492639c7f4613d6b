#pragma once

// Named example diagrams. Every entry parses, validates, and is cross-checked
// against its annotations on load. Entries that admit a twist site store a
// presentation with the relevant component as a round circle, so surgery
// demos run without search; reduction and classification still exercise it.

#include "pd.hpp"

namespace linkcalc {

struct CorpusEntry {
  std::string name;
  std::string pd;
  std::string description;
  int components = 0;
  int crossings = 0;
  LinkingMatrix linking;  // empty means all-zero
};

inline const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = {
      {"unlink1", "O[1]", "one crossingless loop", 1, 0, {}},
      {"unlink2", "O[1] O[2]", "two crossingless loops", 2, 0, {}},
      {"unlink3", "O[1] O[2] O[3]", "three crossingless loops", 3, 0, {}},
      {"kink", "X[1,1,2,2]", "unknot with one positive curl", 1, 1, {}},
      {"doublekink", "X[1,3,2,2] X[3,4,4,1]",
       "unknot with two opposite curls", 1, 2, {}},
      {"trefoil", "X[4,2,5,1] X[6,4,1,3] X[2,6,3,5]",
       "right-handed trefoil, writhe +3", 1, 3, {}},
      {"hopf", "X[1,4,2,3] X[4,1,3,2]", "positive Hopf link, lk = +1", 2, 2,
       {{0, 1}, {1, 0}}},
      {"unlink2_tangled", "X[2,5,3,6] X[6,3,7,4] X[7,1,8,4] X[1,5,2,8]",
       "two-component unlink presented with one component threaded in and out "
       "of the other",
       2, 4, {{0, 0}, {0, 0}}},
      {"whitehead",
       "X[9,1,10,2] X[2,12,3,9] X[5,12,6,11] X[10,7,11,6] X[7,4,8,5] X[3,8,4,1]",
       "Whitehead link (1/1 surgery on one borromean component); component 2 "
       "is a round circle threaded in and out",
       2, 6, {{0, 0}, {0, 0}}},
      {"borromean",
       "X[2,1,4,5] X[5,6,7,3] X[6,4,8,9] X[9,10,11,7] X[10,8,1,12] X[12,2,3,11]",
       "Borromean rings, standard alternating form (closure of (s1 s2^-1)^3)",
       3, 6, {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}},
      {"borromean_round",
       "X[9,1,10,2] X[2,12,3,9] X[5,12,6,11] X[10,7,11,6] "
       "X[14,3,15,4] X[4,15,5,16] X[7,13,8,16] X[13,1,14,8]",
       "Borromean rings with components 2 and 3 round circles threaded by "
       "component 1",
       3, 8, {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}},
      {"keychain", "X[5,3,6,4] X[6,1,7,2] X[1,8,2,7] X[3,5,4,8]",
       "two parallel loops each linking a round ring once", 3, 4,
       {{0, 0, 1}, {0, 0, 1}, {1, 1, 0}}},
      {"keychain3",
       "X[7,5,8,6] X[8,3,9,4] X[9,1,10,2] X[1,11,2,10] X[3,12,4,11] X[5,7,6,12]",
       "three parallel loops each linking a round ring once", 4, 6,
       {{0, 0, 0, 1}, {0, 0, 0, 1}, {0, 0, 0, 1}, {1, 1, 1, 0}}},
      {"chain4", "X[1,4,2,3] X[4,1,3,2] O[9] O[10]",
       "Hopf link plus two split loops: one nonzero linking pair", 4, 2,
       {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}},
  };
  return entries;
}

inline const CorpusEntry* corpus_find(const std::string& name) {
  for (const auto& e : corpus())
    if (e.name == name) return &e;
  return nullptr;
}

inline LinkDiagram corpus_load(const std::string& name) {
  const CorpusEntry* e = corpus_find(name);
  if (!e) throw DiagramError("unknown corpus entry '" + name + "'");
  LinkDiagram d = parse_pd(e->pd);
  if (d.num_components() != e->components || d.num_crossings() != e->crossings)
    throw DiagramError("corpus entry '" + name + "' annotation mismatch (counts)");
  LinkingMatrix m = linking_matrix(d);
  LinkingMatrix want = e->linking.empty()
                           ? LinkingMatrix(e->components, std::vector<int>(e->components, 0))
                           : e->linking;
  if (m != want) throw DiagramError("corpus entry '" + name + "' annotation mismatch (linking)");
  return d;
}

// Accepts "corpus:<name>", raw PD text, or (in the CLI) a file path.
inline bool is_corpus_ref(const std::string& s) { return s.rfind("corpus:", 0) == 0; }

}  // namespace linkcalc
