#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cartan/exact.hpp"

using namespace cartan;

namespace {

// Independent factorial evaluation of C(s,t).
Integer factorial_binomial(int s, int t) {
  if (t < 0 || s < t) return 0;
  Integer f = 1;
  for (int i = 2; i <= s; ++i) f *= i;
  Integer g = 1;
  for (int i = 2; i <= t; ++i) g *= i;
  Integer h = 1;
  for (int i = 2; i <= s - t; ++i) h *= i;
  return f / (g * h);
}

SparseMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int density) {
  std::uniform_int_distribution<int> val(-3, 3), keep(0, 99);
  std::vector<std::vector<Rational>> d(rows, std::vector<Rational>(cols, 0));
  for (auto& row : d)
    for (auto& x : row)
      if (keep(rng) < density) x = val(rng);
  return SparseMatrix::from_dense(d);
}

}  // namespace

TEST_CASE("multi_binomial examples") {
  CHECK(multi_binomial({2, 1}, {1, 1}) == 2);
  CHECK(multi_binomial({3, 0}, {0, 0}) == 1);
  CHECK(multi_binomial({1, 2}, {2, 0}) == 0);
  CHECK_THROWS_AS(multi_binomial({1, 2}, {1}), DimensionError);
}

TEST_CASE("binomials agree with factorial evaluation on a small box") {
  for (int s = 0; s <= 4; ++s)
    for (int t = 0; t <= 4; ++t) CHECK(binomial(s, t) == factorial_binomial(s, t));
  for (int a0 = 0; a0 <= 4; ++a0)
    for (int a1 = 0; a1 <= 4; ++a1)
      for (int b0 = 0; b0 <= 4; ++b0)
        for (int b1 = 0; b1 <= 4; ++b1)
          CHECK(multi_binomial({a0, a1}, {b0, b1}) == factorial_binomial(a0, b0) * factorial_binomial(a1, b1));
}

TEST_CASE("multi-index ordering and enumeration") {
  MultiIndex a{2, 0}, b{1, 1}, c{0, 2};
  CHECK(a < b);
  CHECK(b < c);
  CHECK(MultiIndex{0, 1} < a);
  auto deg2 = MultiIndex::of_degree(2, 2);
  REQUIRE(deg2.size() == 3);
  CHECK(deg2[0] == a);
  CHECK(deg2[2] == c);
  CHECK(MultiIndex::of_degree(3, 3).size() == 10);
  CHECK(!MultiIndex({0, 1}).minus_unit(0));
  CHECK(*MultiIndex({0, 1}).minus_unit(1) == MultiIndex(2));
}

TEST_CASE("rank examples") {
  CHECK(rank(SparseMatrix(0, 0)) == 0);
  CHECK(rank(SparseMatrix::identity(3)) == 3);
  CHECK(rank(SparseMatrix::from_dense({{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("span membership examples") {
  auto v = [](std::vector<Rational> d) { return SparseVector::from_dense(d); };
  CHECK(span_contains({v({1, 0})}, v({0, 0})));
  CHECK(span_contains({v({1, 0}), v({0, 1})}, v({3, -2})));
  CHECK(!span_contains({v({1, 1})}, v({1, 0})));
}

TEST_CASE("rank is transpose invariant and factorization reproduces the matrix") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + trial % 7, c = 1 + (trial * 3) % 8;
    auto m = random_matrix(rng, r, c, 20 + trial);
    CHECK(rank(m) == rank(m.transpose()));
    auto f = rank_factorization(m);
    CHECK(f.left.cols() == rank(m));
    CHECK(f.left * f.right == m);
  }
}

TEST_CASE("echelon solve returns coordinates over the inputs") {
  EchelonBasis eb(3, true);
  auto v = [](std::vector<Rational> d) { return SparseVector::from_dense(d); };
  CHECK(eb.insert(v({1, 1, 0})));
  CHECK(eb.insert(v({0, 1, 1})));
  CHECK(!eb.insert(v({1, 2, 1})));
  auto c = eb.solve(v({2, 5, 3}));
  REQUIRE(c);
  std::vector<SparseVector> in{v({1, 1, 0}), v({0, 1, 1}), v({1, 2, 1})};
  SparseVector sum(3);
  for (std::size_t i = 0; i < 3; ++i) sum.add_scaled(in[i], c->at(i));
  CHECK(sum == v({2, 5, 3}));
  CHECK(!eb.solve(v({0, 0, 1})));
}

TEST_CASE("reduced rows are in reduced echelon form") {
  EchelonBasis eb(3);
  eb.insert(SparseVector::from_dense({1, 2, 3}));
  eb.insert(SparseVector::from_dense({0, 1, 4}));
  auto rows = eb.reduced_rows();
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == SparseVector::from_dense({1, 0, -5}));
  CHECK(rows[1] == SparseVector::from_dense({0, 1, 4}));
}

TEST_CASE("rationals stay canonical") {
  Rational q(6, -4);
  q.canonicalize();
  CHECK(q.get_den() > 0);
  CHECK(to_string(q) == "-3/2");
}
