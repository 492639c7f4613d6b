#include "doctest.h"
#include "helpers.hpp"
#include "linkcalc/corpus.hpp"
#include "linkcalc/slopes.hpp"
#include "linkcalc/twist.hpp"

using namespace linkcalc;

TEST_SUITE_BEGIN("twist");

TEST_CASE("bundle detection across the corpus") {
  // split crossingless loop: empty bundle
  auto site = detect_bundle(corpus_load("unlink2"), 0);
  REQUIRE(site.has_value());
  CHECK(site->m() == 0);

  // hopf: either component is threaded once by the other
  site = detect_bundle(corpus_load("hopf"), 0);
  REQUIRE(site.has_value());
  CHECK(site->m() == 1);
  CHECK(detect_bundle(corpus_load("hopf"), 1)->m() == 1);

  // keychain ring is threaded twice, its loops once each
  LinkDiagram kc = corpus_load("keychain");
  REQUIRE(detect_bundle(kc, 2).has_value());
  CHECK(detect_bundle(kc, 2)->m() == 2);
  CHECK(detect_bundle(kc, 0)->m() == 1);
  CHECK(detect_bundle(corpus_load("keychain3"), 3)->m() == 3);

  // whitehead: the round component is fake-threaded in and out
  CHECK(detect_bundle(corpus_load("whitehead"), 1)->m() == 2);
  CHECK_FALSE(detect_bundle(corpus_load("whitehead"), 0).has_value());
  CHECK(detect_bundle(corpus_load("unlink2_tangled"), 0)->m() == 2);

  // borromean_round: both round circles carry bundles, the weaver does not
  LinkDiagram br = corpus_load("borromean_round");
  CHECK(detect_bundle(br, 2)->m() == 2);
  CHECK(detect_bundle(br, 1)->m() == 2);
  CHECK_FALSE(detect_bundle(br, 0).has_value());

  // the alternating borromean form has no bundled component at all
  LinkDiagram b = corpus_load("borromean");
  for (int k = 0; k < 3; ++k) CHECK_FALSE(detect_bundle(b, k).has_value());

  // self-crossings disqualify
  CHECK_FALSE(detect_bundle(corpus_load("trefoil"), 0).has_value());
  CHECK_THROWS_AS(detect_bundle(corpus_load("hopf"), 5), DiagramError);
}

TEST_CASE("twist with q = 0") {
  LinkDiagram kc = corpus_load("keychain");
  auto site = detect_bundle(kc, 2);
  REQUIRE(site.has_value());
  CHECK(canonical_key(twist(kc, *site, 0, /*keep=*/true)) == canonical_key(kc));
  CHECK(canonical_key(twist(kc, *site, 0, /*keep=*/false)) ==
        canonical_key(delete_component(kc, 2)));
}

TEST_CASE("keychain twist pins the chirality convention") {
  LinkDiagram kc = corpus_load("keychain");
  auto site = detect_bundle(kc, 2);
  REQUIRE(site.has_value());
  LinkDiagram out = twist(kc, *site, +1, /*keep=*/false);
  CHECK(out.num_components() == 2);
  // l_12 + q l_1K l_2K = 0 + 1*1*1 = +1
  CHECK(linking_matrix(out) == LinkingMatrix{{0, 1}, {1, 0}});
}

TEST_CASE("twist crossing-count arithmetic") {
  for (const auto& name : {"hopf", "keychain", "keychain3", "whitehead", "borromean_round"}) {
    LinkDiagram d = corpus_load(name);
    for (int k = 0; k < d.num_components(); ++k) {
      auto site = detect_bundle(d, k);
      if (!site) continue;
      int m = site->m();
      for (int q : {-2, -1, 1, 2}) {
        LinkDiagram kept = twist(d, *site, q, /*keep=*/true);
        CHECK(kept.num_crossings() == d.num_crossings() + std::abs(q) * m * (m - 1));
        LinkDiagram gone = twist(d, *site, q, /*keep=*/false);
        CHECK(gone.num_crossings() ==
              d.num_crossings() + std::abs(q) * m * (m - 1) - 2 * m);
      }
    }
  }
}

TEST_CASE("linking law: diagram twist agrees with the matrix formula") {
  // also run the mirrored corpus to exercise chords on the other side of K
  for (const auto& e : corpus()) {
    for (bool mirrored : {false, true}) {
      LinkDiagram d = corpus_load(e.name);
      if (mirrored) d = mirror_diagram(d);
      LinkingMatrix m = linking_matrix(d);
      for (int k = 0; k < d.num_components(); ++k) {
        auto site = detect_bundle(d, k);
        if (!site) continue;
        for (int q = -3; q <= 3; ++q) {
          LinkDiagram out = twist(d, *site, q, /*keep=*/false);
          CHECK(linking_matrix(out) == predicted_linking_after_twist(m, k, q));
        }
      }
    }
  }
}

TEST_CASE("keep=true retains the circle around the twisted bundle") {
  LinkDiagram kc = corpus_load("keychain");
  auto site = detect_bundle(kc, 2);
  LinkDiagram out = twist(kc, *site, 1, /*keep=*/true);
  CHECK(out.num_components() == 3);
  CHECK(linking_matrix(out) == LinkingMatrix{{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
}

TEST_CASE("predicted linking after twist") {
  LinkingMatrix zero(4, std::vector<int>(4, 0));
  CHECK(predicted_linking_after_twist(zero, 1, 5) == LinkingMatrix(3, std::vector<int>(3, 0)));

  LinkingMatrix m = {{0, 0, 1}, {0, 0, 1}, {1, 1, 0}};
  CHECK(predicted_linking_after_twist(m, 2, 1) == LinkingMatrix{{0, 1}, {1, 0}});

  LinkingMatrix m2 = {{0, 3, 2}, {3, 0, -1}, {2, -1, 0}};
  // 3 + (-2)(2)(-1) = 7
  CHECK(predicted_linking_after_twist(m2, 2, -2) == LinkingMatrix{{0, 7}, {7, 0}});
}

TEST_CASE("homological triviality is preserved by twisting") {
  LinkDiagram br = corpus_load("borromean_round");
  LinkingMatrix m = linking_matrix(br);
  for (int q = -3; q <= 3; ++q)
    CHECK(homologically_trivial(predicted_linking_after_twist(m, 2, q)));
}

TEST_CASE("twist and untwist round trips") {
  // After a keep=true twist the circle is re-detected as bundled through its
  // complementary spanning disk (the braid clutter sits on the other side),
  // and the inverse twist there undoes the surgery. On the tangled unlink the
  // round trip is verified by full reduction; elsewhere the linking matrix
  // must return exactly.
  SUBCASE("tangled unlink, m=2") {
    LinkDiagram d = corpus_load("unlink2_tangled");
    for (int q : {1, -1, 2}) {
      auto site = detect_bundle(d, 0);
      REQUIRE(site.has_value());
      LinkDiagram d1 = twist(d, *site, q, /*keep=*/true);
      auto site2 = detect_bundle(d1, 0);
      if (!site2) {
        SearchBudget b;
        b.max_nodes = 50000;
        auto out = search_reduce(d1, Target::bundled(0), b);
        REQUIRE(out.found.has_value());
        d1 = out.found->diagram;
        site2 = detect_bundle(d1, 0);
      }
      REQUIRE(site2.has_value());
      LinkDiagram d2 = twist(d1, *site2, -q, /*keep=*/true);
      // the pair of twists preserved the link: still the unlink
      SearchBudget b;
      b.max_nodes = 100000;
      auto out = search_reduce(d2, Target::crossingless(), b);
      CHECK_MESSAGE(out.found.has_value(), "round trip q=", q, " left a non-reducible diagram");
    }
  }
  SUBCASE("keychain m=2 and keychain3 m=3 restore the linking matrix") {
    for (auto [name, k] : {std::pair<const char*, int>{"keychain", 2}, {"keychain3", 3}}) {
      LinkDiagram d = corpus_load(name);
      LinkingMatrix m0 = linking_matrix(d);
      for (int q : {1, -1}) {
        auto site = detect_bundle(d, k);
        LinkDiagram d1 = twist(d, *site, q, true);
        auto site2 = detect_bundle(d1, k);
        REQUIRE(site2.has_value());
        LinkDiagram d2 = twist(d1, *site2, -q, true);
        CHECK(linking_matrix(d2) == m0);
        CHECK(d2.num_components() == d.num_components());
      }
    }
  }
}

TEST_CASE("linking law on a mirrored-side site with distinct strands") {
  // After a keep=true twist the ring re-bundles through its complementary
  // disk (side 1, reversed strand order). With three distinct loops the law
  // checks every pair, so this pins the mirrored handedness exactly.
  LinkDiagram kc3 = corpus_load("keychain3");
  LinkDiagram d1 = twist(kc3, *detect_bundle(kc3, 3), 1, /*keep=*/true);
  auto site = detect_bundle(d1, 3);
  REQUIRE(site.has_value());
  CHECK(site->side == 1);
  CHECK(site->m() == 3);
  LinkingMatrix m1 = linking_matrix(d1);
  for (int q = -2; q <= 2; ++q) {
    CHECK(linking_matrix(twist(d1, *site, q, false)) ==
          predicted_linking_after_twist(m1, 3, q));
  }
}

TEST_CASE("twisting borromean_round gives an irreducible companion") {
  LinkDiagram br = corpus_load("borromean_round");
  auto site = detect_bundle(br, 2);
  REQUIRE(site.has_value());
  LinkDiagram out = twist(br, *site, 1, /*keep=*/false);
  CHECK(out.num_components() == 2);
  CHECK(homologically_trivial(linking_matrix(out)));
  SearchBudget b;
  b.max_crossings = out.num_crossings() + 2;
  b.max_nodes = 20000;
  auto red = search_reduce(out, Target::crossingless(), b);
  CHECK_FALSE(red.found.has_value());
}

TEST_CASE("stale twist sites are rejected") {
  LinkDiagram kc = corpus_load("keychain");
  auto site = detect_bundle(kc, 2);
  REQUIRE(site.has_value());
  LinkDiagram other = twist(kc, *site, 1, /*keep=*/true);
  CHECK_THROWS_AS(twist(other, *site, 1, false), StaleSiteError);
}

TEST_CASE("slope vectors parse") {
  SlopeVector v = parse_slopes("1/2,*,inf");
  REQUIRE(v.size() == 3);
  CHECK(v[0].kind == Slope::Kind::OneOverQ);
  CHECK(v[0].q == 2);
  CHECK(v[1].kind == Slope::Kind::Star);
  CHECK(v[2].kind == Slope::Kind::Infinity);
  CHECK(parse_slopes("1/-3")[0].q == -3);
  CHECK(parse_slopes("-1/3")[0].q == -3);
  CHECK(parse_slopes("1/0")[0].kind == Slope::Kind::Infinity);
  CHECK_THROWS_AS(parse_slopes("2/3"), DiagramError);
  CHECK_THROWS_AS(parse_slopes("banana"), DiagramError);
}

TEST_CASE("apply_slopes") {
  SearchBudget budget;
  LinkDiagram br = corpus_load("borromean_round");

  SUBCASE("all stars is the identity") {
    auto r = apply_slopes(br, parse_slopes("*,*,*"), budget);
    REQUIRE(std::holds_alternative<LinkDiagram>(r));
    CHECK(canonical_key(std::get<LinkDiagram>(r)) == canonical_key(br));
  }
  SUBCASE("deletion entry") {
    auto r = apply_slopes(br, parse_slopes("inf,*,*"), budget);
    REQUIRE(std::holds_alternative<LinkDiagram>(r));
    const LinkDiagram& out = std::get<LinkDiagram>(r);
    CHECK(out.num_components() == 2);
    CHECK(homologically_trivial(linking_matrix(out)));
  }
  SUBCASE("one-hot twist equals the direct rewrite") {
    auto r = apply_slopes(br, parse_slopes("*,*,1/1"), budget);
    REQUIRE(std::holds_alternative<LinkDiagram>(r));
    LinkDiagram direct = twist(br, *detect_bundle(br, 2), 1, /*keep=*/false);
    CHECK(canonical_key(std::get<LinkDiagram>(r)) == canonical_key(direct));
  }
  SUBCASE("length mismatch rejected") {
    CHECK_THROWS_AS(apply_slopes(br, parse_slopes("*,*"), budget), DiagramError);
  }
}

TEST_SUITE_END();
