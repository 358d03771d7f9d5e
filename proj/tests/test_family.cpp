#include <doctest.h>

#include "injhull/Family.hpp"
#include "support/Oracles.hpp"

using namespace injhull;

TEST_CASE("positions") {
  CHECK(position_of(1) == 0);
  CHECK(position_of(-1) == 1);
  CHECK(position_of(3) == 4);
  CHECK(position_of(-3) == 5);
  for (int p = 0; p < 8; ++p) {
    CHECK(position_of(signed_index_of(p)) == p);
    CHECK(signed_index_of(partner(p)) == -signed_index_of(p));
  }
}

TEST_CASE("paired families") {
  const auto s = oracle::c4();
  auto f = PairedFamily::from_pairs({{0, 2}, {1, 3}});
  CHECK(f.n() == 1);
  CHECK(f[1] == 0);
  CHECK(f[-1] == 2);
  CHECK(f[-2] == 3);
  CHECK(f.injective());
  CHECK(f.describe(s) == "(a,c | b,d)");
  CHECK_FALSE(PairedFamily({0, 0}).injective());
  CHECK_THROWS_AS(PairedFamily({0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(PairedFamily({}), std::invalid_argument);
}

TEST_CASE("index permutations") {
  CHECK(IndexPermutation::minus_identity(1).is_minus_id());
  CHECK(IndexPermutation::identity(1).is_identity());
  CHECK_FALSE(IndexPermutation::identity(1).fixed_point_free());
  CHECK(IndexPermutation::minus_identity(2).fixed_point_free());
  CHECK_THROWS_AS(IndexPermutation({0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(IndexPermutation({0, 2}), std::invalid_argument);
  IndexPermutation cyc({1, 2, 3, 0});
  CHECK(cyc(1) == -1);
  CHECK(cyc(-2) == 1);
  CHECK(cyc.describe() == "1->-1 -1->2 2->-2 -2->1");
  CHECK(IndexPermutation::identity(1) < cyc);
}
