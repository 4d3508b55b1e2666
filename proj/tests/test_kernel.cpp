#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "thnorm/cocycle.hpp"
#include "thnorm/error.hpp"
#include "thnorm/kernel.hpp"
#include "thnorm/random.hpp"
#include "thnorm/search.hpp"

using namespace thnorm;

TEST_SUITE("kernel") {
  TEST_CASE("triple index enumerates sorted triples lexicographically") {
    for (int m : {3, 5, 7, 9}) {
      std::size_t expected = 0;
      for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
          for (int c = b + 1; c < m; ++c, ++expected) {
            const TripleIndex t = triple_index(a, b, c, m);
            CHECK(t.index == expected);
            CHECK(t.sign == 1);
            CHECK(triple_index(b, a, c, m).sign == -1);
            CHECK(triple_index(c, a, b, m).sign == 1);
            CHECK(triple_index(c, a, b, m).index == expected);
          }
    }
    CHECK_THROWS_AS(triple_index(1, 1, 2, 7), ShapeError);
    CHECK_THROWS_AS(triple_index(1, 2, 7, 7), ShapeError);
  }

  TEST_CASE("max tracker keeps the smallest cells up to the cap and counts all") {
    MaxTracker a(3), b(3);
    a.offer(5, {4, 0});
    a.offer(2, {0, 0});
    a.offer(5, {1, 0});
    b.offer(5, {0, 9});
    b.offer(5, {7, 7});
    b.offer(5, {0, 1});
    MaxTracker ab = a, ba = b;
    ab.merge(b);
    ba.merge(a);
    const MaxResult x = ab.finish(7), y = ba.finish(7);
    CHECK(x.numerator == 5);
    CHECK(x.cell_count == 5);
    CHECK(x.cells == std::vector<Cell>{{0, 1}, {0, 9}, {1, 0}});
    CHECK(y.cells == x.cells);
    CHECK(y.cell_count == x.cell_count);
    CHECK(x.value() == Rational(5, 7));

    MaxTracker zero(2);
    zero.offer(0, {3, 3});
    CHECK(zero.finish(1).cell_count == 1);
  }

  TEST_CASE("parallel_for runs every task once and rethrows") {
    for (int threads : {1, 2, 5}) {
      std::vector<std::atomic<int>> hits(100);
      parallel_for(hits.size(), threads, [&](std::size_t t) { hits[t]++; });
      CHECK(std::all_of(hits.begin(), hits.end(), [](const std::atomic<int>& h) { return h.load() == 1; }));
      CHECK_THROWS_AS(parallel_for(10, threads, [](std::size_t t) {
                        if (t == 3) throw std::runtime_error("boom");
                      }),
                      std::runtime_error);
    }
  }

  TEST_CASE("triple basis stores orientation of every sorted triple") {
    const std::vector<RankVector> classes{RankVector{1, 2, 3, 4, 5, 6, 7}, RankVector{2, 1, 1, 3, 2, 1, 3}};
    const TripleBasis basis(classes);
    CHECK(basis.triples() == 35);
    CHECK(basis.padded_classes() == 64);
    for (std::size_t c = 0; c < 2; ++c) {
      std::size_t t = 0;
      for (int a = 0; a < 7; ++a)
        for (int b = a + 1; b < 7; ++b)
          for (int d = b + 1; d < 7; ++d, ++t) {
            CHECK(basis.at(c, t) == or3(classes[c][a], classes[c][b], classes[c][d]));
            CHECK(basis.triple_row(t)[c] == basis.at(c, t));
          }
    }
  }

  TEST_CASE("pattern kernel vanishes exactly on degenerate patterns") {
    const PermTable& t = reduced_perm_table(3);
    for (const XPattern& xp : enumerate_x_patterns(3)) {
      const PatternKernel k = PatternKernel::build(t, xp);
      CHECK(k.denominator() == 1260);
      CHECK(k.is_zero() == (xp.distinct() < 3));
    }
    CHECK_THROWS_AS(PatternKernel::build(reduced_perm_table(2), XPattern{1, 2, 3, 4, 5}), CapabilityError);
  }

  TEST_CASE("triple kernel agrees with the 1260-row kernel on random class sets") {
    Rng rng(314);
    const PermTable& t = reduced_perm_table(3);
    std::vector<RankVector> classes;
    for (int i = 0; i < 150; ++i) classes.push_back(rng.weak_order(7, i % 3 == 0 ? 0 : 1 << 20));
    classes.push_back(regular_configuration(3).factor(1));
    classes.push_back(regular_configuration(3).factor(2));
    const TripleBasis basis(classes);
    const SignMatrix py = build_sign_matrix(SignRole::middle_factor, t, classes);
    const SignMatrix pz = build_sign_matrix(SignRole::last_factor, t, classes);
    for (const XPattern& xp : enumerate_x_patterns(3)) {
      CAPTURE(xp.to_string());
      KernelOptions o;
      o.cell_cap = 8;
      const MaxResult slow = bilinear_max(combined_sign_vector(t, xp), py, pz, o);
      const MaxResult fast = triple_bilinear_max(PatternKernel::build(t, xp), basis, o);
      o.symmetric = true;
      o.tile = 37;
      o.threads = 3;
      const MaxResult sym = triple_bilinear_max(PatternKernel::build(t, xp), basis, o);
      CHECK(fast.value() == slow.value());
      CHECK(fast.cells == slow.cells);
      CHECK(fast.cell_count == slow.cell_count);
      CHECK(sym.value() == slow.value());
      CHECK(sym.cells == slow.cells);
      CHECK(sym.cell_count == slow.cell_count);
    }
  }

  TEST_CASE("kernel cells equal direct evaluations") {
    Rng rng(8);
    std::vector<RankVector> classes;
    for (int i = 0; i < 30; ++i) classes.push_back(rng.weak_order(7));
    const TripleBasis basis(classes);
    const XPattern xp{1, 1, 2, 3, 4, 5, 6};
    const MaxResult r = triple_bilinear_max(PatternKernel::build(reduced_perm_table(3), xp), basis);
    Rational best(0);
    for (const auto& y : classes)
      for (const auto& z : classes) best = std::max(best, theta_direct(Configuration({xp.ranks(), y, z})).abs());
    CHECK(r.value() == best);
  }
}
