#include "cartan/tilting.hpp"

#include <algorithm>

#include "cartan/graded_modules.hpp"
#include "cartan/vector_fields.hpp"

namespace cartan {

FormalCharacter pi_product(AlgebraContext ctx, int truncation) {
  FormalCharacter pi = FormalCharacter::monomial(ctx, truncation, 0, Weight::zero(ctx));
  auto alg = algebra_for(ctx);
  for (int i = 1; i <= truncation; ++i)
    for (const auto& beta : alg->slice(i).weights())
      // Ascending m multiplies by 1 + e^beta t^i + e^(2 beta) t^(2i) + ...
      for (int m = i; m <= truncation; ++m) {
        const auto lower = pi.slice(m - i);
        for (const auto& [w, c] : lower) pi.add(m, w + beta, c);
      }
  return pi;
}

FormalCharacter char_standard(const Weight& lambda, int truncation) {
  require_antidominant(lambda);
  const auto ctx = lambda.context();
  return pi_product(ctx, truncation) * FormalCharacter::from_g0(ctx, truncation, g0_character(lambda));
}

namespace {

// sum_{i < k} c_i e_i + sum_{i >= k} d e_i (0-based).
Weight two_level(AlgebraContext ctx, int k, std::int64_t c, std::int64_t d) {
  const int len = ctx.family == Family::H ? ctx.r() : ctx.n;
  std::vector<std::int64_t> v(len, d);
  for (int i = 0; i < k; ++i) v[i] = c;
  return Weight(ctx, v);
}

// mu_k of the tilting family, with k allowed one past the documented range.
Weight family_member(AlgebraContext ctx, int k) {
  switch (ctx.family) {
    case Family::W: return two_level(ctx, k, -2, -1);
    case Family::S: return two_level(ctx, k, -1, 0);
    case Family::H: return two_level(ctx, k, -1, 0);
  }
  return Weight::zero(ctx);
}

int family_top(AlgebraContext ctx) { return ctx.family == Family::H ? ctx.r() : ctx.n - 1; }

}  // namespace

std::vector<Weight> tilting_family(AlgebraContext ctx) {
  std::vector<Weight> out;
  for (int k = 0; k <= family_top(ctx); ++k) out.push_back(family_member(ctx, k));
  return out;
}

std::int64_t tilting_multiplicity(const Weight& lambda, const Weight& mu) {
  require_antidominant(lambda);
  require_antidominant(mu);
  if (lambda.context() != mu.context()) throw ArgumentError("weights from different algebras");
  const auto ctx = mu.context();
  const int top = family_top(ctx);
  for (int k = 0; k <= top; ++k) {
    if (mu != family_member(ctx, k)) continue;
    if (ctx.family == Family::H) {
      if (lambda == mu) return 2;
      if (k >= 1 && lambda == mu + Weight::unit(ctx, k - 1)) return 1;
      if (k + 1 <= ctx.r() && lambda == mu - Weight::unit(ctx, k)) return 1;
      return 0;
    }
    return lambda == mu || lambda == mu - Weight::unit(ctx, k) ? 1 : 0;
  }
  return lambda == mu ? 1 : 0;
}

std::vector<std::pair<Weight, std::int64_t>> tilting_flag(const Weight& lambda) {
  require_antidominant(lambda);
  std::vector<Weight> candidates = tilting_family(lambda.context());
  candidates.push_back(lambda);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::vector<std::pair<Weight, std::int64_t>> out;
  for (const auto& mu : candidates)
    if (auto m = tilting_multiplicity(lambda, mu)) out.emplace_back(mu, m);
  return out;
}

std::vector<std::pair<Weight, std::int64_t>> tilting_g0_terms(const Weight& lambda) {
  require_antidominant(lambda);
  const auto ctx = lambda.context();
  std::map<Weight, std::int64_t> terms;
  if (ctx.family == Family::H) {
    for (int k = 0; k <= ctx.r(); ++k)
      if (lambda == family_member(ctx, k)) {
        if (k >= 1) terms[family_member(ctx, k - 1)] += 1;
        terms[lambda] += 2;
        if (k + 1 <= ctx.r()) terms[family_member(ctx, k + 1)] += 1;
      }
  } else {
    // W: lambda = mu_k for 1 <= k <= n; S: lambda = -(e_1+...+e_k) for
    // 1 <= k <= n, the case k = n being the zero class.
    for (int k = 1; k <= ctx.n && terms.empty(); ++k)
      if (lambda == family_member(ctx, k)) {
        terms[lambda] += 1;
        terms[lambda + Weight::unit(ctx, k - 1)] += 1;
      }
  }
  if (terms.empty()) terms[lambda] = 1;
  return {terms.begin(), terms.end()};
}

FormalCharacter char_tilting(const Weight& lambda, int truncation) {
  const auto ctx = lambda.context();
  FormalCharacter g0(ctx, truncation);
  for (const auto& [w, m] : tilting_g0_terms(lambda))
    for (const auto& [v, c] : g0_character(w)) g0.add(0, v, c * m);
  return pi_product(ctx, truncation) * g0;
}

namespace {

int lowest_degree(const FormalCharacter& c) {
  for (int d = 0; d <= c.truncation(); ++d)
    if (!c.slice(d).empty()) return d;
  return c.truncation() + 1;
}

}  // namespace

TiltingConsistencyReport tilting_consistency_report(const Weight& lambda, int truncation) {
  const auto ctx = lambda.context();
  TiltingConsistencyReport rep{false, {}, char_tilting(lambda, truncation), FormalCharacter(ctx, truncation)};
  const int base = lowest_degree(char_standard(lambda, truncation));
  for (const auto& [mu, m] : tilting_flag(lambda)) {
    auto cs = char_standard(mu, truncation);
    const int shift = base - lowest_degree(cs);
    rep.terms.push_back({mu, m, shift});
    rep.flag_sum = rep.flag_sum + cs.shifted(shift).scaled(m);
  }
  rep.consistent = rep.formula == rep.flag_sum;
  return rep;
}

bool char_tilting_consistency(const Weight& lambda, int truncation) {
  return tilting_consistency_report(lambda, truncation).consistent;
}

SoergelReport soergel_crosscheck(const Weight& lambda, const Weight& mu, int truncation) {
  SoergelReport rep;
  rep.truncation = truncation;
  for (const auto* x : {&lambda, &mu})
    if (!is_antidominant(*x)) {
      rep.reason = x->to_string() + " is not antidominant: " + antidominance_violation(*x);
      return rep;
    }
  const auto e = semi_infinite_weight(lambda.context());
  rep.lambda_dual = -w0_apply(lambda) - e;
  rep.mu_dual = -w0_apply(mu) - e;
  for (const auto* x : {&rep.lambda_dual, &rep.mu_dual})
    if (!is_antidominant(*x)) {
      rep.reason = "shifted weight " + x->to_string() + " is not antidominant: " + antidominance_violation(*x);
      return rep;
    }
  rep.applicable = true;
  rep.closed_form = tilting_multiplicity(lambda, mu);
  auto factors = composition_multiplicities(build_costandard(rep.mu_dual, truncation), truncation);
  for (const auto& [key, m] : factors)
    if (key.first == rep.lambda_dual) {
      rep.oracle_by_shift[key.second] += m;
      rep.oracle += m;
    }
  rep.agree = rep.closed_form == rep.oracle;
  return rep;
}

}  // namespace cartan
