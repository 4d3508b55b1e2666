#include <algorithm>
#include <set>

#include "doctest.h"
#include "thnorm/error.hpp"
#include "thnorm/search.hpp"

using namespace thnorm;

TEST_SUITE("search") {
  TEST_CASE("mode and kind names round-trip") {
    for (auto m : {SearchMode::paper_fast, SearchMode::exhaustive, SearchMode::regular_only, SearchMode::sample}) {
      CHECK(parse_search_mode(to_string(m)) == m);
    }
    for (auto k : {ClassTableKind::dihedral, ClassTableKind::rotation, ClassTableKind::paper_distinct,
                   ClassTableKind::paper_stacked}) {
      CHECK(parse_class_table_kind(to_string(k)) == k);
    }
    CHECK_THROWS_AS(parse_search_mode("fast"), ParseError);
  }

  TEST_CASE("three-point classes") {
    // 13 weak orders of 3 points: two cyclic orders, three two-level orbits, one constant.
    const auto rot = class_table(1, false);
    CHECK(rot == std::vector<RankVector>{RankVector{1, 1, 1}, RankVector{1, 1, 2}, RankVector{1, 2, 1},
                                         RankVector{1, 2, 2}, RankVector{1, 2, 3}, RankVector{1, 3, 2}});
    CHECK(class_table(1, true).size() == 5);
  }

  TEST_CASE("compatibility tables") {
    const auto distinct = paper_class_table(ClassTableKind::paper_distinct);
    REQUIRE(distinct.size() == 360);
    CHECK(distinct.front() == RankVector{1, 2, 3, 4, 5, 6, 7});
    std::set<RankVector> canon;
    for (const auto& rv : distinct) {
      CHECK(rv[0] == 1);
      CHECK(rv[1] < rv[2]);
      CHECK(rv.distinct() == 7);
      canon.insert(canonicalize_cyclic(rv, true));
    }
    // Exactly one representative per dihedral class of distinct orders.
    CHECK(canon.size() == 360);

    const auto stacked = paper_class_table(ClassTableKind::paper_stacked);
    REQUIRE(stacked.size() == 7710);
    CHECK(std::equal(distinct.begin(), distinct.end(), stacked.begin()));
    CHECK(stacked[360] == RankVector{1, 1, 2, 3, 4, 5, 6});
    CHECK(stacked.back() == RankVector{4, 3, 3, 2, 1, 1, 1});
    CHECK_THROWS_AS(paper_class_table(ClassTableKind::dihedral), ValidationError);
    CHECK_THROWS_AS(build_class_table(2, ClassTableKind::paper_stacked), CapabilityError);
  }

  TEST_CASE("norms for one and two factors") {
    const NormReport n1 = norm(1, SearchMode::exhaustive);
    CHECK(n1.norm == Rational(1));
    CHECK(n1.complete);
    CHECK(n1.per_pattern.size() == 4);
    const NormReport n2 = norm(2, SearchMode::exhaustive);
    CHECK(n2.norm == Rational(2, 3));
    CHECK(n2.per_pattern.size() == 16);
    REQUIRE(!n2.witnesses.empty());
    for (const auto& w : n2.witnesses) CHECK(theta_direct(w.config).abs() == n2.norm);
    CHECK(std::any_of(n2.witnesses.begin(), n2.witnesses.end(),
                      [](const Witness& w) { return same_dihedral_classes(w.config, regular_configuration(2)); }));
    for (const auto& pm : n2.per_pattern) {
      if (pm.pattern.distinct() < 3) CHECK(pm.max.is_zero());
    }
    CHECK(norm(2, SearchMode::paper_fast).norm == Rational(2, 3));
  }

  TEST_CASE("two-factor pattern maxima equal brute force over all weak orders") {
    const auto all = enumerate_weak_orders(5);
    const SearchTables tables = SearchTables::exhaustive(2);
    for (const XPattern& xp : enumerate_x_patterns(2)) {
      Rational best(0);
      for (const auto& y : all) best = std::max(best, theta_direct(Configuration({xp.ranks(), y})).abs());
      CHECK(max_for_x_pattern(xp, tables).max == best);
    }
  }

  TEST_CASE("thread count does not change reports") {
    SearchOptions one, many;
    many.threads = 4;
    many.tile = 7;
    one.tile = 7;
    CHECK(norm(2, SearchMode::exhaustive, one) == norm(2, SearchMode::exhaustive, many));
  }

  TEST_CASE("regular-only and sample modes are flagged incomplete") {
    const NormReport r = norm(3, SearchMode::regular_only);
    CHECK(r.norm == Rational(11, 45));
    CHECK(!r.complete);
    SearchOptions so;
    so.sample_budget = 50;
    so.seed = 9;
    const NormReport s1 = norm(3, SearchMode::sample, so);
    const NormReport s2 = norm(3, SearchMode::sample, so);
    CHECK(s1 == s2);
    CHECK(!s1.complete);
    CHECK(!s1.budget_exceeded);
    CHECK(s1.samples == 51);
    CHECK(s1.norm == Rational(11, 45));  // the regular configuration is always drawn
    for (const auto& w : s1.witnesses) CHECK(theta_direct(w.config).abs() == s1.norm);
  }

  TEST_CASE("exhaustive requests beyond three factors return a flagged partial report") {
    SearchOptions so;
    so.sample_budget = 5;
    const NormReport r = norm(4, SearchMode::exhaustive, so);
    CHECK(r.budget_exceeded);
    CHECK(!r.complete);
    CHECK(r.norm >= eval_regular(4).abs());
    CHECK_THROWS_AS(norm(4, SearchMode::paper_fast), ValidationError);
    CHECK_THROWS_AS(norm(0, SearchMode::exhaustive), ValidationError);
    CHECK_THROWS_AS(norm(7, SearchMode::regular_only), SizeLimitError);
  }

  TEST_CASE("regular values") {
    CHECK(eval_regular(1) == Rational(1));
    CHECK(eval_regular(2) == Rational(2, 3));
    CHECK(eval_regular(3) == Rational(11, 45));
  }

  TEST_CASE("paper-fast case list") {
    const auto cases = paper_fast_cases();
    REQUIRE(cases.size() == 8);
    CHECK(cases[0].first == XPattern{1, 2, 3, 4, 5, 6, 7});
    CHECK(cases[0].second == ClassTableKind::paper_distinct);
    CHECK(cases[1].second == ClassTableKind::paper_distinct);
    for (std::size_t i = 2; i < cases.size(); ++i) CHECK(cases[i].second == ClassTableKind::paper_stacked);
  }

  TEST_CASE("compatibility tables drop repeated classes only") {
    const SearchTables stacked = SearchTables::paper(ClassTableKind::paper_stacked);
    CHECK(stacked.raw_size() == 7710);
    std::set<RankVector> canon;
    for (const auto& rv : stacked.classes()) canon.insert(canonicalize_cyclic(rv, true));
    CHECK(canon.size() == stacked.classes().size());
    std::set<RankVector> raw_canon;
    for (const auto& rv : paper_class_table(ClassTableKind::paper_stacked)) raw_canon.insert(canonicalize_cyclic(rv, true));
    CHECK(raw_canon.size() == canon.size());
  }

  TEST_CASE("same dihedral classes") {
    const Configuration a = regular_configuration(3);
    const Configuration b({a.factor(0).rotated(2), a.factor(1).reflected(), a.factor(2)});
    CHECK(same_dihedral_classes(a, b));
    const Configuration c({a.factor(0), a.factor(0), a.factor(2)});
    CHECK(!same_dihedral_classes(a, c));
  }
}
