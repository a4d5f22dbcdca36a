#pragma once

// Characters of standard and tilting modules, the closed-form tilting
// multiplicities [T(lambda):Delta(mu)] and their cross-check against the
// composition-factor oracle through the Soergel-type reciprocity
// [T(lambda):Delta(mu)] = [V(-w0 mu - E):L(-w0 lambda - E)].

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cartan/character.hpp"
#include "cartan/weights.hpp"

namespace cartan {

/// ch U(g_1) through degree N: the product over the basis of every g_[i],
/// i >= 1, of the geometric series in e^beta t^i.
FormalCharacter pi_product(AlgebraContext ctx, int truncation);

/// ch Delta(lambda) = Pi * ch L0(lambda).
FormalCharacter char_standard(const Weight& lambda, int truncation);

/// The weights mu_k indexing the nontrivial tilting multiplicities:
/// W: -2(e_1+...+e_k) - (e_{k+1}+...+e_n), 0 <= k <= n-1;
/// S: -(e_1+...+e_k), 0 <= k <= n-1; H: omega_k, 0 <= k <= r.
std::vector<Weight> tilting_family(AlgebraContext ctx);

/// Closed-form [T(lambda):Delta(mu)]. Candidates with an out-of-range index
/// (H: mu + e_0 and omega_r - e_{r+1}) are dropped.
std::int64_t tilting_multiplicity(const Weight& lambda, const Weight& mu);

/// All mu with [T(lambda):Delta(mu)] != 0, in weight order.
std::vector<std::pair<Weight, std::int64_t>> tilting_flag(const Weight& lambda);

/// Closed-form ch T(lambda) as a combination of characters of L0, before the
/// factor Pi. For S(n) the pattern -(e_1+...+e_k) is also read at k = n,
/// which is the zero class.
std::vector<std::pair<Weight, std::int64_t>> tilting_g0_terms(const Weight& lambda);
FormalCharacter char_tilting(const Weight& lambda, int truncation);

struct FlagTerm {
  Weight mu;
  std::int64_t mult = 0;
  int shift = 0;  // difference of the lowest degrees of Delta(lambda), Delta(mu)
};
struct TiltingConsistencyReport {
  bool consistent = false;
  std::vector<FlagTerm> terms;
  FormalCharacter formula;
  FormalCharacter flag_sum;
};
/// Compares char_tilting(lambda) with sum_mu [T(lambda):Delta(mu)] ch Delta(mu).
TiltingConsistencyReport tilting_consistency_report(const Weight& lambda, int truncation);
bool char_tilting_consistency(const Weight& lambda, int truncation);

struct SoergelReport {
  bool applicable = false;
  std::string reason;  // why the pair is not applicable
  Weight lambda_dual;  // -w0 lambda - E
  Weight mu_dual;      // -w0 mu - E
  std::int64_t closed_form = 0;
  std::int64_t oracle = 0;
  std::map<int, std::int64_t> oracle_by_shift;
  int truncation = 0;
  bool agree = false;
};
/// closed_form = tilting_multiplicity(lambda, mu); oracle = total multiplicity
/// of L(lambda_dual) in V(mu_dual) through degree N, summed over shifts.
SoergelReport soergel_crosscheck(const Weight& lambda, const Weight& mu, int truncation);

}  // namespace cartan
