#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cartan/g0_module.hpp"

using namespace cartan;

namespace {
const AlgebraContext W2(Family::W, 2), W3(Family::W, 3), S2(Family::S, 2), S3(Family::S, 3), H2(Family::H, 2),
    H4(Family::H, 4);

Weight w(AlgebraContext ctx, std::vector<std::int64_t> c) { return Weight(ctx, std::move(c)); }

// Weyl group orbit closure under simple reflections, used to test invariance.
std::vector<Weight> simple_reflections(const Weight& x) {
  std::vector<Weight> out;
  auto c = x.coords();
  const auto ctx = x.context();
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    auto d = c;
    std::swap(d[i], d[i + 1]);
    out.emplace_back(ctx, d);
  }
  if (ctx.family == Family::H) {
    auto d = c;
    d.back() = -d.back();
    out.emplace_back(ctx, d);
  }
  return out;
}
}  // namespace

TEST_CASE("L0 examples") {
  auto triv = build_L0(Weight::zero(W2));
  CHECK(triv->dim() == 1);
  for (const auto& m : triv->xi_all()) CHECK(m.is_zero());

  auto det = build_L0(w(W2, {-1, -1}));
  REQUIRE(det->dim() == 1);
  auto p = triangular_parts(W2);
  for (const auto& h : p.h) CHECK(det->act(h).at(0, 0) == -1);
  for (const auto& e : p.n_plus) CHECK(det->act(e).is_zero());

  auto nat = build_L0(w(H2, {-1}));
  CHECK(nat->dim() == 2);
  CHECK(module_character(*nat) == WeightMultiset{{w(H2, {-1}), 1}, {w(H2, {1}), 1}});
}

TEST_CASE("g0 characters") {
  CHECK(g0_character(Weight::zero(S3)) == WeightMultiset{{Weight::zero(S3), 1}});
  CHECK(g0_character(w(W2, {-1, 0})) == WeightMultiset{{w(W2, {-1, 0}), 1}, {w(W2, {0, -1}), 1}});
  CHECK(g0_character(w(H2, {-1})) == WeightMultiset{{w(H2, {-1}), 1}, {w(H2, {1}), 1}});
  CHECK_THROWS_AS(build_L0(w(W2, {0, -1})), ArgumentError);
}

TEST_CASE("L0 dimensions and relations on the full coordinate box") {
  for (auto ctx : {W2, W3, S2, S3, H2, H4})
    for (const auto& l : antidominant_weights_in_box(ctx, 3)) {
      auto m = build_L0(l);
      auto rep = check_g0_module(*m);
      CHECK_MESSAGE(rep.all_pass(), ctx.name(), " ", l, ": ", rep.witness);
    }
}

TEST_CASE("g0 characters are Weyl group invariant") {
  for (auto ctx : {W3, S3, H4})
    for (const auto& l : antidominant_weights_in_box(ctx, 2)) {
      auto chi = g0_character(l);
      for (const auto& [x, m] : chi)
        for (const auto& y : simple_reflections(x)) {
          auto it = chi.find(y);
          CHECK((it != chi.end() && it->second == m));
        }
    }
}

TEST_CASE("exterior powers realize the exceptional g0-modules") {
  for (auto ctx : {W2, W3, S2, S3})
    for (int k = 0; k <= ctx.n; ++k) {
      auto e = exterior_power_module(ctx, k);
      auto rep = check_g0_module(*e);
      CHECK_MESSAGE(rep.all_pass(), rep.witness);
      // For S, Lambda^n is the trivial class and omega_n is not in the list.
      Weight omega = k < static_cast<int>(exceptional_weights(ctx).size()) ? exceptional_weights(ctx)[k]
                                                                           : Weight::zero(ctx);
      CHECK(e->lowest_weight() == omega);
      CHECK(module_character(*e) == g0_character(omega));
    }
  CHECK(exterior_power_module(W3, 2)->labels()[0] == "x2^x3");
}

TEST_CASE("character decomposition") {
  // Lambda^1 tensor Lambda^1 for gl(2) = Sym^2 + Lambda^2.
  WeightMultiset chi;
  for (const auto& [a, m] : g0_character(w(W2, {0, 1})))
    for (const auto& [b, n] : g0_character(w(W2, {0, 1}))) chi[a + b] += m * n;
  auto parts = decompose_g0_character(W2, chi);
  REQUIRE(parts.size() == 2);
  CHECK(parts[0].first == w(W2, {0, 2}));
  CHECK(parts[1].first == w(W2, {1, 1}));
  WeightMultiset bad{{w(W2, {0, 1}), 1}};
  CHECK_THROWS_AS(decompose_g0_character(W2, bad), ConsistencyError);
}
