#include "doctest.h"
#include "helpers.hpp"
#include "linkcalc/classify.hpp"
#include "linkcalc/corpus.hpp"

using namespace linkcalc;

namespace {

SearchBudget small_budget(long long nodes = 2000) {
  SearchBudget b;
  b.max_nodes = nodes;
  return b;
}

}  // namespace

TEST_SUITE_BEGIN("classify");

TEST_CASE("crossingless diagrams are trivial links") {
  for (const auto& name : {"unlink1", "unlink2", "unlink3"}) {
    Verdict v = is_trivial_link(corpus_load(name), small_budget());
    CHECK(v.is_trivial());
    CHECK(verify_triviality_evidence(corpus_load(name), v));
  }
}

TEST_CASE("hopf is nontrivial with a linking witness") {
  LinkDiagram d = corpus_load("hopf");
  Verdict v = is_trivial_link(d, small_budget());
  REQUIRE(v.is_nontrivial());
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->path.empty());
  CHECK(std::abs(v.witness->value) == 1);
  CHECK(verify_witness(d, *v.witness));
}

TEST_CASE("chain4 is nontrivial with a re-verified witness") {
  LinkDiagram d = corpus_load("chain4");
  Verdict v = is_trivial_link(d, small_budget());
  REQUIRE(v.is_nontrivial());
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->i == 0);
  CHECK(v.witness->j == 1);
  CHECK(verify_witness(d, *v.witness));
}

TEST_CASE("scrambled unlinks are certified trivial with replayable evidence") {
  std::mt19937 rng(77);
  for (int k = 1; k <= 3; ++k) {
    LinkDiagram base = parse_pd(k == 1 ? "O[1]" : k == 2 ? "O[1] O[2]" : "O[1] O[2] O[3]");
    LinkDiagram d = testutil::scramble(base, rng, 4, 6);
    Verdict v = is_trivial_link(d, small_budget(100000));
    REQUIRE_MESSAGE(v.is_trivial(), "scrambled unlink with ", k, " loops not certified");
    CHECK(verify_triviality_evidence(d, v));
  }
}

TEST_CASE("borromean is never certified trivial") {
  Verdict v = is_trivial_link(corpus_load("borromean"), small_budget());
  CHECK_FALSE(v.is_trivial());
  CHECK(v.is_inconclusive());
}

TEST_CASE("classify borromean: HTB confirmed, triviality not granted") {
  ClassificationReport rep = classify_htb(corpus_load("borromean"), small_budget(10000));
  CHECK(rep.homologically_trivial);
  CHECK(rep.brunnian.is_trivial());
  REQUIRE(rep.sublink_verdicts.size() == 3);
  for (const auto& sub : rep.sublink_verdicts) CHECK(sub.is_trivial());
  CHECK(rep.htb == ThreeValued::Confirmed);
  CHECK_FALSE(rep.trivial.is_trivial());
}

TEST_CASE("classify hopf: homologically nontrivial, HTB refuted") {
  ClassificationReport rep = classify_htb(corpus_load("hopf"), small_budget());
  CHECK_FALSE(rep.homologically_trivial);
  CHECK(rep.htb == ThreeValued::Refuted);
  CHECK(rep.trivial.is_nontrivial());
}

TEST_CASE("classify whitehead: HTB confirmed") {
  ClassificationReport rep = classify_htb(corpus_load("whitehead"), small_budget(10000));
  CHECK(rep.homologically_trivial);
  CHECK(rep.brunnian.is_trivial());
  CHECK(rep.htb == ThreeValued::Confirmed);
  CHECK_FALSE(rep.trivial.is_trivial());
}

TEST_CASE("one-component diagrams are Brunnian by convention") {
  SearchBudget b = small_budget();
  b.max_crossings = 5;
  ClassificationReport rep = classify_htb(corpus_load("trefoil"), b);
  CHECK(rep.homologically_trivial);
  CHECK(rep.brunnian.is_trivial());
  CHECK(rep.htb == ThreeValued::Confirmed);
  CHECK(rep.trivial.is_inconclusive());
  CHECK(rep.trivial.report.exhausted);
}

TEST_CASE("nontrivial sublink makes the aggregate nontrivial") {
  ClassificationReport rep = classify_htb(corpus_load("chain4"), small_budget());
  CHECK(rep.brunnian.is_nontrivial());
  CHECK(rep.htb == ThreeValued::Refuted);
  REQUIRE(rep.brunnian.witness.has_value());
  CHECK(verify_witness(corpus_load("chain4"), *rep.brunnian.witness));
}

TEST_CASE("budget monotonicity of verdict kinds") {
  std::mt19937 rng(13);
  LinkDiagram d = testutil::scramble(corpus_load("unlink2"), rng, 3, 5);
  Verdict::Kind small = is_trivial_link(d, small_budget(50)).kind;
  Verdict::Kind mid = is_trivial_link(d, small_budget(2000)).kind;
  Verdict::Kind big = is_trivial_link(d, small_budget(100000)).kind;
  // only Inconclusive may resolve as the budget grows
  if (small != Verdict::Kind::Inconclusive) CHECK(small == big);
  if (mid != Verdict::Kind::Inconclusive) CHECK(mid == big);
  CHECK(big == Verdict::Kind::Trivial);

  CHECK(is_trivial_link(corpus_load("hopf"), small_budget(10)).is_nontrivial());
  CHECK(is_trivial_link(corpus_load("hopf"), small_budget(100000)).is_nontrivial());
}

TEST_CASE("verdicts are equivariant under component renumbering") {
  LinkDiagram d = corpus_load("borromean");
  ClassificationReport a = classify_htb(d, small_budget());
  ClassificationReport b = classify_htb(permute_components(d, {2, 0, 1}), small_budget());
  CHECK(a.homologically_trivial == b.homologically_trivial);
  CHECK(a.brunnian.kind == b.brunnian.kind);
  CHECK(a.htb == b.htb);
  CHECK(a.trivial.kind == b.trivial.kind);
  // the sublink verdicts permute with the components
  for (int i = 0; i < 3; ++i) {
    std::vector<int> perm = {2, 0, 1};
    CHECK(a.sublink_verdicts[perm[i]].kind == b.sublink_verdicts[i].kind);
  }
}

TEST_CASE("report fields satisfy the conjunction semantics") {
  std::mt19937 rng(99);
  std::vector<LinkDiagram> matrix;
  for (const auto& e : corpus()) matrix.push_back(corpus_load(e.name));
  matrix.push_back(testutil::scramble(corpus_load("unlink2"), rng, 3, 5));
  for (const auto& d : matrix) {
    ClassificationReport rep = classify_htb(d, small_budget());
    if (!rep.homologically_trivial || rep.brunnian.is_nontrivial())
      CHECK(rep.htb == ThreeValued::Refuted);
    else if (rep.brunnian.is_trivial())
      CHECK(rep.htb == ThreeValued::Confirmed);
    else
      CHECK(rep.htb == ThreeValued::Inconclusive);
    if (rep.trivial.is_trivial()) {
      CHECK(rep.homologically_trivial);
      CHECK(rep.brunnian.is_trivial());
    }
  }
}

TEST_CASE("twist sign flag is honored") {
  std::mt19937 rng(5);
  LinkDiagram d = testutil::scramble(corpus_load("unlink2"), rng, 3, 5);
  ClassifyOptions minus;
  minus.twist_sign = -1;
  Verdict v = is_trivial_link(d, small_budget(100000), {}, minus);
  CHECK(v.is_trivial());
  CHECK(verify_triviality_evidence(d, v));
}

TEST_SUITE_END();
