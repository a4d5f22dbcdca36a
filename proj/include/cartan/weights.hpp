#pragma once

// Integral weights of the Cartan subalgebra of g_[0] (gl(n), sl(n), sp(2r)).

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "cartan/context.hpp"
#include "cartan/exact.hpp"

namespace cartan {

/// Integral weight in epsilon coordinates. For S(n) a weight is a class
/// modulo (1,...,1); the stored representative always has last coordinate 0.
class Weight {
 public:
  Weight() = default;
  Weight(AlgebraContext ctx, std::vector<std::int64_t> coords);

  static Weight zero(AlgebraContext ctx);
  /// Projects a gl(n) weight (length n) to the family's weight lattice:
  /// identity for W, class mod (1,...,1) for S, w_i - w_{i+r} for H.
  static Weight from_gl(AlgebraContext ctx, const std::vector<std::int64_t>& gl);
  /// epsilon_i, 0-based.
  static Weight unit(AlgebraContext ctx, int i);

  const AlgebraContext& context() const { return ctx_; }
  const std::vector<std::int64_t>& coords() const { return coords_; }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  std::size_t size() const { return coords_.size(); }

  Weight operator+(const Weight& o) const;
  Weight operator-(const Weight& o) const;
  Weight operator-() const;
  Weight scaled(std::int64_t k) const;

  /// Pairing with twice the half-sum of positive roots. Strictly increases
  /// along every positive root, which makes it a height function.
  std::int64_t height() const;

  std::string to_string() const;

  bool operator==(const Weight& o) const = default;
  auto operator<=>(const Weight& o) const = default;

 private:
  AlgebraContext ctx_;
  std::vector<std::int64_t> coords_;
};

std::ostream& operator<<(std::ostream& os, const Weight& w);

/// Parses "a,b,c" into a weight of the given context. Throws ArgumentError on
/// bad syntax or wrong length. For S(n) a length-n representative is
/// canonicalized; a length n-1 input is read as the first n-1 canonical
/// coordinates.
Weight parse_weight(AlgebraContext ctx, const std::string& text);

bool is_antidominant(const Weight& w);
/// Human-readable description of the first violated antidominance
/// inequality; empty if antidominant.
std::string antidominance_violation(const Weight& w);
void require_antidominant(const Weight& w);

std::vector<Weight> exceptional_weights(AlgebraContext ctx);
Weight w0_apply(const Weight& w);
/// The weight corresponding to the semi-infinite character: (1,...,1) for W
/// and zero for S and H.
Weight semi_infinite_weight(AlgebraContext ctx);

/// Dimension of the irreducible g_[0]-module with lowest weight w.
Integer weyl_dim(const Weight& w);

/// All antidominant weights whose coordinates lie in [-bound, bound] (for S,
/// all classes having such a representative with last coordinate 0).
std::vector<Weight> antidominant_weights_in_box(AlgebraContext ctx, int bound);

}  // namespace cartan
