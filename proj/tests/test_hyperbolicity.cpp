#include <doctest.h>

#include "injhull/Hyperbolicity.hpp"
#include "support/Oracles.hpp"

using namespace injhull;
using oracle::Q;

namespace {

PairedFamily c4_family(const FiniteMetricSpace& s) {
  return PairedFamily::from_pairs({{s.index_of("a"), s.index_of("c")}, {s.index_of("b"), s.index_of("d")}});
}

}  // namespace

TEST_CASE("permutation scores on C4") {
  const auto s = oracle::c4();
  const auto fam = c4_family(s);
  CHECK(permutation_score(s, fam, IndexPermutation::minus_identity(1)) == 8);
  CHECK(pairing_sum(s, fam) == 8);
  // 1 -> -1 -> 2 -> -2 -> 1
  IndexPermutation cyc({position_of(-1), position_of(2), position_of(-2), position_of(1)});
  CHECK(permutation_score(s, fam, cyc) == 6);
  CHECK_THROWS_AS(permutation_score(s, fam, IndexPermutation::identity(2)), std::invalid_argument);
}

TEST_CASE("max score excluding -id") {
  const auto s = oracle::c4();
  const auto fam = c4_family(s);
  for (auto engine : {ScoreEngine::Brute, ScoreEngine::Assignment}) {
    auto r = max_score_excluding_minus_id(s, fam, engine);
    CHECK(r.score == 6);
    CHECK_FALSE(r.alpha.is_minus_id());
  }
  auto d = family_defect(s, fam);
  CHECK(d.lhs == 8);
  CHECK(d.defect == 1);
}

TEST_CASE("engines agree with the brute-force oracle, including the tie-break") {
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const int points = 3 + static_cast<int>(rng.below(5));
    const auto s = oracle::random_space(rng, points);
    const int n = static_cast<int>(rng.below(3));
    std::vector<Index> x(static_cast<std::size_t>(2 * (n + 1)));
    for (auto& e : x) e = static_cast<Index>(rng.below(static_cast<std::uint64_t>(s.size())));
    const auto want = oracle::brute_max_score(s, x);
    for (auto engine : {ScoreEngine::Brute, ScoreEngine::Assignment}) {
      auto got = max_score_excluding_minus_id(s, PairedFamily(x), engine);
      REQUIRE(got.score == want->value);
      REQUIRE(got.alpha.positions() == want->sigma);
    }
    if (n >= 1) {
      auto fpf = max_score_fixed_point_free(s, PairedFamily(x));
      REQUIRE(fpf);
      CHECK(fpf->score == want->value);
      CHECK(fpf->alpha.fixed_point_free());
    }
  }
}

TEST_CASE("fixed-point-free maximum is empty for n = 0") {
  const auto s = oracle::c4();
  CHECK_FALSE(max_score_fixed_point_free(s, PairedFamily({0, 2})));
}

TEST_CASE("min_delta matches the oracle over all families") {
  Rng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const auto s = oracle::random_space(rng, 3 + static_cast<int>(rng.below(3)));
    for (int n = 0; n <= 1; ++n) {
      const Rational want = oracle::brute_min_delta(s, n);
      for (auto engine : {ScoreEngine::Brute, ScoreEngine::Assignment}) {
        auto got = min_delta(s, n, {FamilyMode::Full, engine, 1});
        REQUIRE(got.delta == want);
        REQUIRE(got.witness);
        CHECK(got.witness->defect == want);
      }
    }
  }
  const auto small = oracle::random_space(rng, 4);
  CHECK(min_delta(small, 2).delta == oracle::brute_min_delta(small, 2));
}

TEST_CASE("named instances") {
  CHECK(min_delta(oracle::c4(), 1).delta == 1);
  CHECK(min_delta(oracle::orthoplex6(), 2).delta == 1);
  CHECK(min_delta(oracle::tripod(), 1).delta == 0);
  CHECK(min_delta(random_tree(6, 3), 1).delta == 0);
  CHECK(min_delta(linf_grid(2, 3), 2).delta == 0);
  auto w = min_delta(oracle::c4(), 1).witness;
  REQUIRE(w);
  CHECK(w->family.describe(oracle::c4()) == "(a,c | b,d)");
}

TEST_CASE("distinct mode never exceeds full mode and agrees on these instances") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto s = oracle::random_space(rng, 4 + static_cast<int>(rng.below(3)));
    for (int n = 1; n <= 2; ++n) {
      auto full = min_delta(s, n, {FamilyMode::Full});
      auto distinct = min_delta(s, n, {FamilyMode::Distinct});
      CHECK(distinct.delta <= full.delta);
      CHECK(distinct.delta == full.delta);
    }
  }
  auto none = min_delta(oracle::c4(), 2, {FamilyMode::Distinct});
  CHECK(none.delta == 0);
  CHECK_FALSE(none.witness);
  CHECK(none.families == 0);
}

TEST_CASE("family counts") {
  // multisets of n+1 unordered pairs (repetition allowed) of a 4-point set: 10 pairs
  CHECK(family_count(4, 0, FamilyMode::Full) == 10);
  CHECK(family_count(4, 1, FamilyMode::Full) == 55);
  CHECK(family_count(4, 1, FamilyMode::Distinct) == 3);
  CHECK(family_count(6, 2, FamilyMode::Distinct) == 15);
  CHECK(family_count(3, 2, FamilyMode::Distinct) == 0);
}

TEST_CASE("results do not depend on the thread count") {
  Rng rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const auto s = oracle::random_space(rng, 7);
    auto one = min_delta(s, 2, {FamilyMode::Full, ScoreEngine::Assignment, 1});
    auto four = min_delta(s, 2, {FamilyMode::Full, ScoreEngine::Assignment, 4});
    CHECK(one.delta == four.delta);
    REQUIRE(one.witness);
    REQUIRE(four.witness);
    CHECK(one.witness->family == four.witness->family);
    CHECK(one.families == four.families);
  }
}

TEST_CASE("(1, delta) agrees with the four-point condition") {
  Rng rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const auto s = oracle::random_space(rng, 4 + static_cast<int>(rng.below(3)));
    const Rational g = gromov_delta(s).delta;
    CHECK(g == oracle::brute_gromov(s));
    CHECK(min_delta(s, 1).delta == g);
  }
  CHECK(gromov_delta(oracle::c4()).delta == 1);
  CHECK(gromov_delta(random_tree(7, 9)).delta == 0);
  CHECK(gromov_delta(make_space(RationalMatrix::Zero(1, 1))).delta == 0);
}

TEST_CASE("min_delta is non-increasing in n") {
  Rng rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    const auto s = oracle::random_space(rng, 5 + static_cast<int>(rng.below(2)));
    Rational prev = min_delta(s, 0).delta;
    for (int n = 1; n <= 2; ++n) {
      Rational cur = min_delta(s, n).delta;
      CHECK(cur <= prev);
      prev = cur;
    }
  }
}

TEST_CASE("l_inf products add the hyperbolicity levels") {
  Rng rng(29);
  for (int trial = 0; trial < 4; ++trial) {
    auto a = random_tree(3, rng.next());
    auto b = random_tree(3, rng.next());
    CHECK(min_delta(linf_product(a, b), 2).delta == 0);
  }
  auto p = linf_product(oracle::c4(), submetric(oracle::c4(), std::vector<std::string>{"a", "b"}));
  CHECK(min_delta(p, 2).delta <= 1);
}

TEST_CASE("is_n_delta_hyperbolic") {
  const auto s = oracle::c4();
  CHECK(is_n_delta_hyperbolic(s, 1, 1).holds);
  auto no = is_n_delta_hyperbolic(s, 1, Q("1/2"));
  CHECK_FALSE(no.holds);
  REQUIRE(no.violation);
  CHECK(no.violation->family.describe(s) == "(a,c | b,d)");
  CHECK_THROWS(min_delta(s, -1));
}
