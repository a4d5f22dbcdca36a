#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cartan/vector_fields.hpp"

using namespace cartan;

namespace {
const AlgebraContext W2(Family::W, 2), W3(Family::W, 3), S2(Family::S, 2), S3(Family::S, 3), H2(Family::H, 2),
    H4(Family::H, 4);

VectorField f(AlgebraContext ctx, const std::string& s) { return parse_field(ctx, s); }

// Number of monomials of degree d in n variables.
std::size_t monomials(int n, int d) {
  if (d < 0) return 0;
  std::size_t c = 1;
  for (int i = 1; i <= n - 1; ++i) c = c * (d + i) / i;
  return c;
}
}  // namespace

TEST_CASE("bracket examples") {
  CHECK(bracket(f(W2, "x^(2,0)d 2"), f(W2, "x^(1,1)d 1 + x^(0,2)d 2")) == f(W2, "x^(3,0)d 1"));
  CHECK(bracket(f(W2, "d 1"), f(W2, "d 2")).is_zero());
  // [D_kl(x^(a - e_k)), D_kl(x^(2e_k + e_l))] = (2a(l) + 1 - a(k)) D_kl(x^a) with a = (3,1).
  // Here both arguments are D_12(x_1^2 x_2) and the coefficient 2 + 1 - 3 vanishes.
  CHECK(bracket(d_ij(S2, 1, 2, {2, 1}), d_ij(S2, 1, 2, {2, 1})) == d_ij(S2, 1, 2, {3, 1}).scaled(0));
  CHECK_THROWS_AS(bracket(f(W2, "d 1"), f(S2, "d 1")), ArgumentError);
}

TEST_CASE("bracket identities used in the generation argument") {
  // [D_kl(x^(a - e_k)), D_kl(x^(2e_k + e_l))] for several a in S(3), k=1, l=2.
  for (const auto& a : MultiIndex::of_degree(3, 4)) {
    if (a[0] < 1) continue;
    auto lhs = bracket(d_ij(S3, 1, 2, *a.minus_unit(0)), d_ij(S3, 1, 2, {2, 1, 0}));
    auto rhs = d_ij(S3, 1, 2, a).scaled(2 * a[1] + 1 - a[0]);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("divergence") {
  CHECK(divergence(f(W2, "x^(1,0)d 1")) == Polynomial{{MultiIndex{0, 0}, 1}});
  CHECK(divergence(f(W2, "x^(2,0)d 1")) == Polynomial{{MultiIndex{1, 0}, 2}});
  for (const auto& a : MultiIndex::of_degree(2, 3)) CHECK(divergence(d_ij(S2, 1, 2, a)).empty());
}

TEST_CASE("generators D_ij and D_H") {
  CHECK(d_ij(S2, 1, 2, {1, 1}) == f(S2, "x^(1,0)d 1 - x^(0,1)d 2"));
  CHECK(d_ij(S2, 1, 2, {1, 0}) == f(S2, "-d 2"));
  CHECK(d_ij(S2, 1, 2, {0, 0}).is_zero());
  CHECK_THROWS_AS(d_ij(S2, 2, 1, {1, 0}), ArgumentError);
  CHECK(d_h(H2, {1, 0}) == f(H2, "d 2"));
  CHECK(d_h(H2, {1, 1}) == f(H2, "x^(0,1)d 2 - x^(1,0)d 1"));
  CHECK(d_h(H4, {2, 0, 0, 0}) == f(H4, "2*x^(1,0,0,0)d 3"));
  CHECK_THROWS_AS(d_h(H2, {0, 0}), ArgumentError);
  CHECK_THROWS_AS(d_h(W2, {1, 0}), ArgumentError);
}

TEST_CASE("text form round trips") {
  for (auto ctx : {W2, S3, H4})
    for (int d = -1; d <= 2; ++d) {
      auto sl = graded_basis(ctx, d);
      for (const auto& b : sl.basis()) CHECK(parse_field(ctx, format_field(b)) == b);
    }
  CHECK(format_field(VectorField(W2)) == "0");
  CHECK(parse_field(W2, "0").is_zero());
  CHECK(f(W2, "3/2*x^(1,0)d 2") == VectorField::monomial(W2, {1, 0}, 1, Rational(3, 2)));
  CHECK(f(S2, "2*D(1,2)[1,1]") == d_ij(S2, 1, 2, {1, 1}).scaled(2));
  CHECK(f(H2, "DH[1,1] + DH[0,2]") == d_h(H2, {1, 1}) + d_h(H2, {0, 2}));
  CHECK_THROWS_AS(f(W2, "x^(1)d 1"), ArgumentError);
  CHECK_THROWS_AS(f(W2, "x^(1,0)d 3"), ArgumentError);
  CHECK_THROWS_AS(f(W2, "x^(1,0)d 1 x"), ArgumentError);
  CHECK_THROWS_AS(f(W2, "y"), ArgumentError);
}

TEST_CASE("graded dimensions") {
  CHECK(graded_basis(W2, 1).dim() == 6);
  CHECK(graded_basis(S2, 0).dim() == 3);
  CHECK(graded_basis(H2, 1).dim() == 4);
  for (int n = 2; n <= 4; ++n) {
    AlgebraContext w(Family::W, n), s(Family::S, n);
    CHECK(graded_basis(w, 0).dim() == static_cast<std::size_t>(n * n));
    CHECK(graded_basis(s, 0).dim() == static_cast<std::size_t>(n * n - 1));
    for (int d = -1; d <= 3; ++d) {
      CHECK(graded_basis(w, d).dim() == n * monomials(n, d + 1));
      // S: kernel of the surjective divergence W_[d] -> P_d.
      CHECK(graded_basis(s, d).dim() == n * monomials(n, d + 1) - monomials(n, d));
    }
  }
  for (int r = 1; r <= 2; ++r) {
    AlgebraContext h(Family::H, 2 * r);
    CHECK(graded_basis(h, 0).dim() == static_cast<std::size_t>(r * (2 * r + 1)));
    for (int d = -1; d <= 3; ++d) CHECK(graded_basis(h, d).dim() == monomials(2 * r, d + 2));
  }
}

TEST_CASE("degree zero matches the triangular parts") {
  auto p = triangular_parts(W2);
  REQUIRE(p.h.size() == 2);
  CHECK(p.h[0] == f(W2, "x^(1,0)d 1"));
  CHECK(p.h[1] == f(W2, "x^(0,1)d 2"));
  auto q = triangular_parts(S2);
  REQUIRE(q.h.size() == 1);
  CHECK(q.h[0] == f(S2, "x^(1,0)d 1 - x^(0,1)d 2"));
  auto h = triangular_parts(H2);
  REQUIRE(h.n_plus.size() == 1);
  CHECK(h.n_plus[0] == f(H2, "x^(1,0)d 2"));
  // Every triangular element lies in the algebra: in the span of the D_H basis for H.
  for (auto ctx : {H2, H4}) {
    std::vector<VectorField> dh;
    for (const auto& a : MultiIndex::of_degree(ctx.n, 2)) dh.push_back(d_h(ctx, a));
    GradedSlice ref(ctx, 0, dh);
    auto g0 = graded_basis(ctx, 0);
    for (const auto& b : g0.basis()) CHECK(ref.coordinates(b));
  }
  for (auto ctx : {S2, S3}) {
    auto g0 = graded_basis(ctx, 0);
    for (const auto& b : g0.basis()) CHECK(divergence(b).empty());
  }
}

TEST_CASE("graded bases consist of weight vectors") {
  for (auto ctx : {W3, S3, H4})
    for (int d = -1; d <= 2; ++d) {
      auto sl = graded_basis(ctx, d);
      for (std::size_t i = 0; i < sl.dim(); ++i)
        for (const auto& [t, c] : sl[i].terms()) CHECK(term_weight(ctx, t) == sl.weights()[i]);
    }
}

TEST_CASE("generation in degrees 2 to 4") {
  CHECK(check_generation(W2, 2));
  CHECK(check_generation(H2, 3));
  CHECK(check_generation(S3, 2));
  for (auto ctx : {W2, W3, S2, S3, H2, H4})
    for (int i = 2; i <= 4; ++i) CHECK(check_generation(ctx, i));
}

TEST_CASE("semi-infinite character identity") {
  auto x = f(W2, "x^(1,1)d 1");
  auto y = f(W2, "d 2");
  CHECK(semi_infinite_character(bracket(x, y)) == -1);
  CHECK(adjoint_trace(W2, x, y) == -1);
  for (auto ctx : {W2, W3, S2, S3, H2, H4}) {
    auto rep = semi_infinite_check(ctx);
    CHECK(rep.all_pass);
    CHECK(rep.pairs_checked == graded_basis(ctx, 1).dim() * graded_basis(ctx, -1).dim());
  }
}

TEST_CASE("Lie structure on low degrees") {
  for (auto ctx : {W2, S2, S3, H2, H4}) {
    auto rep = check_lie_structure(ctx, 2);
    CHECK_MESSAGE(rep.all_pass, rep.witness);
    CHECK(rep.triples_checked > 0);
  }
}

TEST_CASE("closure of S and H under brackets") {
  for (auto ctx : {S3, H4}) {
    auto alg = algebra_for(ctx);
    for (int a = -1; a <= 1; ++a)
      for (int b = a; b <= 2; ++b)
        for (std::size_t i = 0; i < alg->dim(a); ++i)
          for (std::size_t j = 0; j < alg->dim(b); ++j) {
            auto br = bracket(alg->element(a, i), alg->element(b, j));
            if (ctx.family == Family::S) CHECK(divergence(br).empty());
            if (a + b >= -1) CHECK(alg->slice(a + b).coordinates(br));
          }
  }
}
