#pragma once

// Finite-dimensional g_[0]-modules: the irreducible lowest-weight modules
// L0(lambda) and the exterior powers of the natural module.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cartan/exact.hpp"
#include "cartan/vector_fields.hpp"
#include "cartan/weights.hpp"

namespace cartan {

/// Weight multiplicities of a finite-dimensional g_[0]-module.
using WeightMultiset = std::map<Weight, std::int64_t>;

/// A g_[0]-module with a weight basis and one action matrix per element of
/// graded_basis(ctx, 0), in that order.
class G0Module {
 public:
  G0Module(AlgebraContext ctx, Weight lowest, std::vector<std::string> labels, std::vector<Weight> weights,
           std::vector<SparseMatrix> xi);

  const AlgebraContext& context() const { return ctx_; }
  /// Weight of basis element 0, which is killed by n^-.
  const Weight& lowest_weight() const { return lowest_; }
  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Weight>& weights() const { return weights_; }
  /// Action of the b-th element of the degree-0 graded basis.
  const SparseMatrix& xi(std::size_t b) const { return xi_[b]; }
  const std::vector<SparseMatrix>& xi_all() const { return xi_; }

  /// Action of an arbitrary element of g_[0]. Throws ArgumentError when x is
  /// not in g_[0].
  SparseMatrix act(const VectorField& x) const;

 private:
  AlgebraContext ctx_;
  Weight lowest_;
  std::vector<std::string> labels_;
  std::vector<Weight> weights_;
  std::vector<SparseMatrix> xi_;
};

/// The irreducible g_[0]-module with lowest weight lambda, generated under n^+
/// from the product of lowest vectors inside a tensor product of fundamental
/// modules. Memoized; the result is shared and immutable.
std::shared_ptr<const G0Module> build_L0(const Weight& lambda);

/// Lambda^k of the natural module span{x_1, ..., x_n} (family W or S), basis
/// the sorted wedges x_{j1}^...^x_{jk} in the order of exterior_module_subsets.
std::shared_ptr<const G0Module> exterior_power_module(AlgebraContext ctx, int k);

/// Position of the wedge x_{j1}^...^x_{jk} (0-based, increasing) among all
/// k-subsets in lexicographic order.
std::size_t wedge_index(int n, const std::vector<int>& subset);
std::vector<std::vector<int>> wedge_basis(int n, int k);
/// The wedges in the basis order of exterior_power_module: the lowest wedge
/// x_{n-k+1}^...^x_n first, then the rest lexicographically.
std::vector<std::vector<int>> exterior_module_subsets(int n, int k);

WeightMultiset module_character(const G0Module& m);
WeightMultiset g0_character(const Weight& lambda);

/// Splits a g_[0]-character into irreducible characters by repeatedly removing
/// the character of the weight of least height (ties broken
/// lexicographically). Throws ConsistencyError when the input is not a sum of
/// irreducible characters.
std::vector<std::pair<Weight, std::int64_t>> decompose_g0_character(AlgebraContext ctx, WeightMultiset chi);

struct G0CheckReport {
  bool brackets_ok = true;
  bool lowest_ok = true;
  bool weights_ok = true;
  bool dim_ok = true;
  std::size_t pairs_checked = 0;
  std::string witness;
  bool all_pass() const { return brackets_ok && lowest_ok && weights_ok && dim_ok; }
};
/// Checks xi([a,b]) = [xi(a), xi(b)] on all basis pairs, that basis vector 0
/// is a lowest-weight vector, that h acts diagonally by the listed weights,
/// and that the dimension equals the Weyl dimension of the lowest weight.
G0CheckReport check_g0_module(const G0Module& m);

}  // namespace cartan
