#pragma once

// Polynomial vector fields and the graded Lie algebras W(n), S(n), H(2r).

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "cartan/context.hpp"
#include "cartan/exact.hpp"
#include "cartan/weights.hpp"

namespace cartan {

using Polynomial = std::map<MultiIndex, Rational>;

/// x^alpha d_dir, with dir 0-based.
struct Term {
  MultiIndex alpha;
  int dir = 0;
  bool operator==(const Term&) const = default;
  auto operator<=>(const Term&) const = default;
};

/// Finite sum of c * x^alpha d_k with nonzero rational coefficients.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(AlgebraContext ctx) : ctx_(ctx) {}
  static VectorField monomial(AlgebraContext ctx, const MultiIndex& alpha, int dir,
                              const Rational& c = 1);

  const AlgebraContext& context() const { return ctx_; }
  const std::map<Term, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Term& t) const;

  void add_term(const MultiIndex& alpha, int dir, const Rational& c);
  VectorField operator+(const VectorField& o) const;
  VectorField operator-(const VectorField& o) const;
  VectorField scaled(const Rational& c) const;

  /// Degree |alpha| - 1 shared by all terms; empty for the zero field or a
  /// non-homogeneous one.
  std::optional<int> degree() const;
  /// True for the zero field, which belongs to every degree.
  bool is_homogeneous_of(int d) const;

  /// Applies the derivation to a polynomial.
  Polynomial apply(const Polynomial& g) const;

  bool operator==(const VectorField& o) const { return ctx_ == o.ctx_ && terms_ == o.terms_; }

 private:
  AlgebraContext ctx_;
  std::map<Term, Rational> terms_;
};

/// [f d_i, g d_j] = f d_i(g) d_j - g d_j(f) d_i, extended bilinearly.
VectorField bracket(const VectorField& u, const VectorField& v);
/// sum_i d_i(f_i).
Polynomial divergence(const VectorField& u);

/// D_ij(x^alpha) = alpha_j x^(alpha - e_j) d_i - alpha_i x^(alpha - e_i) d_j.
/// i and j are 1-based with i < j.
VectorField d_ij(AlgebraContext ctx, int i, int j, const MultiIndex& alpha);
/// D_H(x^alpha) = sum_i sigma(i) d_i(x^alpha) d_{i'}. Requires family H and
/// alpha != 0.
VectorField d_h(AlgebraContext ctx, const MultiIndex& alpha);

/// gl(n)-weight alpha - e_k of x^alpha d_k projected to the family lattice.
Weight term_weight(AlgebraContext ctx, const Term& t);

/// Text form "c*x^(a1,...,an)d k" joined by " + " / " - "; "0" for zero.
/// Directions are printed 1-based.
std::string format_field(const VectorField& v);
/// Parses the same grammar, plus generator shorthands D(i,j)[a1,...,an] and
/// DH[a1,...,an] (each optionally preceded by "c*"). Throws ArgumentError.
VectorField parse_field(AlgebraContext ctx, const std::string& text);

/// Basis of g_[degree] with a coordinate solver. Every basis element is a
/// weight vector.
class GradedSlice {
 public:
  GradedSlice(AlgebraContext ctx, int degree, std::vector<VectorField> basis);

  const AlgebraContext& context() const { return ctx_; }
  int degree() const { return degree_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<VectorField>& basis() const { return basis_; }
  const VectorField& operator[](std::size_t i) const { return basis_[i]; }
  const std::vector<Weight>& weights() const { return weights_; }

  /// Coordinates against the basis; empty if v is not in the span.
  std::optional<SparseVector> coordinates(const VectorField& v) const;

 private:
  AlgebraContext ctx_;
  int degree_;
  std::vector<VectorField> basis_;
  std::vector<Weight> weights_;
  std::map<Term, std::size_t> term_index_;
  std::shared_ptr<EchelonBasis> solver_;
};

/// Spanning sets of n^-, h, n^+ as displayed for the triangular
/// decomposition of g_[0]. For S(n) the h list holds every
/// x_i d_i - x_j d_j (i<j) and is linearly dependent once n >= 3.
struct TriangularParts {
  std::vector<VectorField> n_minus;
  std::vector<VectorField> h;
  std::vector<VectorField> n_plus;
};
TriangularParts triangular_parts(AlgebraContext ctx);

/// The algebra with memoized graded bases and structure constants. Caches are
/// internally synchronized and never change results.
class CartanAlgebra {
 public:
  explicit CartanAlgebra(AlgebraContext ctx) : ctx_(ctx) {}

  const AlgebraContext& context() const { return ctx_; }
  const GradedSlice& slice(int degree) const;
  std::size_t dim(int degree) const { return slice(degree).dim(); }
  const VectorField& element(int degree, std::size_t i) const { return slice(degree)[i]; }

  /// Coordinates of [e_a, e_b] in g_[da+db] (empty vector of dim 0 when
  /// da + db < -1).
  const SparseVector& structure(int da, std::size_t a, int db, std::size_t b) const;

 private:
  AlgebraContext ctx_;
  mutable std::mutex mu_;
  mutable std::map<int, std::unique_ptr<GradedSlice>> slices_;
  mutable std::map<std::tuple<int, std::size_t, int, std::size_t>, SparseVector> structure_;
};

/// Shared, cached algebra instance per context.
std::shared_ptr<const CartanAlgebra> algebra_for(AlgebraContext ctx);

/// Deterministic ordered basis of g_[i]: W: x^alpha d_k with |alpha| = i+1;
/// S: reduced row-echelon basis of span{D_kl(x^alpha)}; H: D_H(x^alpha) with
/// |alpha| = i+2. Degree 0 uses the triangular basis n^- ++ h ++ n^+.
GradedSlice graded_basis(AlgebraContext ctx, int degree);

/// True iff every basis element of g_[i] lies in span [g_[i-1], g_[1]].
bool check_generation(AlgebraContext ctx, int i);

struct SemiInfiniteReport {
  std::size_t pairs_checked = 0;
  bool all_pass = true;
  std::string witness;  // first failing pair, both sides
};
/// Checks gamma([X,Y]) = tr(ad X ad Y | g_[0]) on every basis pair
/// X in g_[1], Y in g_[-1], with gamma the semi-infinite character.
SemiInfiniteReport semi_infinite_check(AlgebraContext ctx);
/// The semi-infinite character evaluated on an element of g_[0].
Rational semi_infinite_character(const VectorField& x);
/// tr(ad X ad Y restricted to g_[0]).
Rational adjoint_trace(AlgebraContext ctx, const VectorField& x, const VectorField& y);

struct LieCheckReport {
  std::size_t triples_checked = 0;
  std::size_t pairs_checked = 0;
  bool all_pass = true;
  std::string witness;
};
/// Antisymmetry, grading closure, membership of brackets in the right slice
/// and the Jacobi identity on basis elements of degree <= max_degree.
LieCheckReport check_lie_structure(AlgebraContext ctx, int max_degree);

}  // namespace cartan
