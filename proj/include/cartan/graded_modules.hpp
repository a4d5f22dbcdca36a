#pragma once

// Truncated graded g-modules: standard modules Delta(lambda) in the PBW model,
// costandard modules V(lambda) = P_n (x) L0(lambda) with the prolongation
// action, the canonical map between them, the simple-character oracle, the
// composition-factor peel and the complex d_k.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cartan/character.hpp"
#include "cartan/g0_module.hpp"
#include "cartan/vector_fields.hpp"

namespace cartan {

enum class ModuleKind { Standard, Costandard, ComplexTerm };
std::string to_string(ModuleKind k);

/// Shared, lazily evaluated data of a truncated module. Degree-m blocks exist
/// for 0 <= m <= N; action matrices are computed on demand and cached.
class ModuleData {
 public:
  ModuleData(AlgebraContext ctx, ModuleKind kind, Weight lambda, int truncation,
             std::shared_ptr<const G0Module> g0);
  virtual ~ModuleData() = default;

  const AlgebraContext& context() const { return ctx_; }
  ModuleKind kind() const { return kind_; }
  const Weight& lambda() const { return lambda_; }
  int truncation() const { return n_; }
  const G0Module& g0() const { return *g0_; }
  std::shared_ptr<const G0Module> g0_ptr() const { return g0_; }

  std::size_t dim(int m) const { return weights_.at(m).size(); }
  const std::vector<Weight>& weights(int m) const { return weights_.at(m); }
  virtual std::string label(int m, std::size_t i) const = 0;

  /// Matrix of the b-th basis element of g_[deg] from block m to block
  /// m + deg. A target below degree 0 is the zero space (0 rows); a target
  /// above the truncation throws ArgumentError.
  const SparseMatrix& action(int deg, std::size_t b, int m) const;

 protected:
  virtual SparseMatrix compute_action(int deg, std::size_t b, int m) const = 0;

  AlgebraContext ctx_;
  ModuleKind kind_;
  Weight lambda_;
  int n_;
  std::shared_ptr<const G0Module> g0_;
  std::vector<std::vector<Weight>> weights_;
  mutable std::recursive_mutex mu_;
  mutable std::map<std::tuple<int, std::size_t, int>, SparseMatrix> cache_;
};

/// A truncated graded module together with its depth tag.
class GradedModule {
 public:
  explicit GradedModule(std::shared_ptr<const ModuleData> data, int depth = 0)
      : data_(std::move(data)), depth_(depth) {}

  const AlgebraContext& context() const { return data_->context(); }
  ModuleKind kind() const { return data_->kind(); }
  const Weight& lambda() const { return data_->lambda(); }
  int truncation() const { return data_->truncation(); }
  int depth() const { return depth_; }
  const G0Module& g0() const { return data_->g0(); }
  const ModuleData& data() const { return *data_; }
  const std::shared_ptr<const ModuleData>& data_ptr() const { return data_; }
  GradedModule with_depth(int depth) const { return GradedModule(data_, depth); }

  std::size_t dim(int m) const { return data_->dim(m); }
  const std::vector<Weight>& weights(int m) const { return data_->weights(m); }
  std::string label(int m, std::size_t i) const { return data_->label(m, i); }
  const SparseMatrix& action(int deg, std::size_t b, int m) const { return data_->action(deg, b, m); }
  /// Action of a homogeneous element of degree deg.
  SparseMatrix action_of(const VectorField& x, int deg, int m) const;

  /// Weight census of the basis through the truncation.
  FormalCharacter character() const;

 private:
  std::shared_ptr<const ModuleData> data_;
  int depth_;
};

/// Degree-preserving (shift 0) or degree-shifting map given by one block per
/// source degree; block m maps source degree m to target degree m + shift and
/// has 0 rows when that degree is out of range.
struct ModuleMap {
  GradedModule source;
  GradedModule target;
  int shift = 0;
  std::vector<SparseMatrix> blocks;
};

/// Delta(lambda) truncated at N: degree-m basis = PBW monomials of U(g_1) of
/// degree m tensor the L0(lambda) basis, acted on by straightening.
GradedModule build_standard(const Weight& lambda, int truncation);
/// V(lambda) = P_n (x) L0(lambda) truncated at N, with the family's
/// prolongation formula.
GradedModule build_costandard(const Weight& lambda, int truncation);
/// P_n (x) M for any g_[0]-module M (used for the exterior powers).
GradedModule build_prolongation(std::shared_ptr<const G0Module> m, int truncation, ModuleKind kind);

/// x^gamma (x) A term of the prolongation: rho(X)(g (x) v) = X(g) (x) v +
/// sum_gamma x^gamma g (x) xi(A_gamma) v.
struct Jet {
  MultiIndex gamma;
  VectorField a;  // linear field in g_[0]
};
/// Jets from the Jacobian of X (the general formula, valid in W).
std::vector<Jet> jacobian_jets(const VectorField& x);
/// Jets of the b-th basis element of g_[deg] assembled from the family's
/// displayed formula: W directly, S through the generators D_kl(x^alpha), H
/// through the generators D_H(x^alpha).
std::vector<Jet> family_jets(AlgebraContext ctx, int deg, std::size_t b);

struct AxiomReport {
  std::size_t pairs_checked = 0;
  bool all_pass = true;
  std::string witness;
};
/// rho([u,v]) = [rho(u), rho(v)] on every block of degree <= D for all basis
/// pairs with deg u, deg v <= D and deg u + deg v <= N - D, together with
/// weight additivity of every matrix used.
AxiomReport verify_module_axiom(const GradedModule& m, int d);

/// u (x) v -> rho(u)(1 (x) v).
ModuleMap canonical_map(const Weight& lambda, int truncation);
/// Checks phi rho_S(X) = rho_T(X) phi for all algebra basis elements of degree
/// <= max_deg on every block where both sides are defined.
AxiomReport check_module_map(const ModuleMap& f, int max_deg);

/// ch L(lambda) through degree N: ranks per weight of the image of Delta in
/// V(lambda), computed as image_m = sum_i rho(g_[i]) image_{m-i}. Memoized.
FormalCharacter simple_character(const Weight& lambda, int truncation);
/// Per-degree, per-weight ranks of the canonical map (slower reference).
FormalCharacter canonical_image_character(const Weight& lambda, int truncation);

/// Multiplicity of L0(lambda) in the degree-0 block of M.
std::int64_t hom_from_standard(const Weight& lambda, const GradedModule& m);

/// Composition factors (lambda, degree shift) -> multiplicity through degree
/// N. Throws ConsistencyError on a negative intermediate multiplicity.
std::map<std::pair<Weight, int>, std::int64_t> composition_multiplicities(const GradedModule& m, int truncation);

/// P_n (x) Lambda^k(F^n) -> P_n (x) Lambda^(k+1)(F^n),
/// x^a (x) w -> sum_i d_i(x^a) (x) (w ^ x_i); polynomial degree shift -1.
ModuleMap build_dk(AlgebraContext ctx, int k, int truncation);

struct ComplexEntry {
  int position = 0;  // k, the term V(omega_k)
  int degree = 0;    // polynomial degree m
  std::size_t dim = 0;
  std::size_t rank_in = 0;
  std::size_t rank_out = 0;
  bool exact = true;
};
struct ComplexReport {
  bool dd_zero = true;
  bool exact_internal = true;
  bool start_injective = true;
  bool end_surjective = true;
  bool maps_equivariant = true;
  bool identification_ok = true;
  std::vector<ComplexEntry> entries;
  std::vector<std::string> failures;
  bool all_pass() const {
    return dd_zero && exact_internal && start_injective && end_surjective && maps_equivariant && identification_ok;
  }
};
/// 0 -> V(omega_0) -> ... -> V(omega_n) -> 0 for W(n) and S(n).
ComplexReport verify_complex(AlgebraContext ctx, int truncation);

GradedModule shift_grading(const GradedModule& m, int d);

}  // namespace cartan
