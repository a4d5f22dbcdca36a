#pragma once

// Truncated formal characters: degree m -> (weight -> multiplicity).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cartan/g0_module.hpp"
#include "cartan/weights.hpp"

namespace cartan {

class FormalCharacter {
 public:
  FormalCharacter(AlgebraContext ctx, int truncation);
  /// A g_[0]-character placed in degree 0.
  static FormalCharacter from_g0(AlgebraContext ctx, int truncation, const WeightMultiset& chi);
  /// The single term e^w in the given degree.
  static FormalCharacter monomial(AlgebraContext ctx, int truncation, int degree, const Weight& w,
                                  std::int64_t mult = 1);

  const AlgebraContext& context() const { return ctx_; }
  int truncation() const { return n_; }
  const WeightMultiset& slice(int degree) const { return slices_.at(degree); }
  std::int64_t at(int degree, const Weight& w) const;
  std::int64_t total(int degree) const;
  bool is_zero() const;
  bool is_nonnegative() const;

  void add(int degree, const Weight& w, std::int64_t mult);
  FormalCharacter operator+(const FormalCharacter& o) const;
  FormalCharacter operator-(const FormalCharacter& o) const;
  /// Graded convolution truncated at the common truncation.
  FormalCharacter operator*(const FormalCharacter& o) const;
  FormalCharacter scaled(std::int64_t k) const;
  /// Moves every term up by d degrees (dropping what leaves 0..N).
  FormalCharacter shifted(int d) const;
  /// Multiplies by e^w.
  FormalCharacter twisted(const Weight& w) const;
  /// Same character with a smaller truncation.
  FormalCharacter truncated(int n) const;

  bool operator==(const FormalCharacter& o) const = default;

  /// {algebra, n, truncation, object, weight, degrees: [{degree, total_dim,
  /// weights: [{coords, mult}]}]}; weight is null when absent.
  nlohmann::json to_json(const std::string& object, const std::optional<Weight>& weight) const;
  static FormalCharacter from_json(const nlohmann::json& j);

 private:
  void require_compatible(const FormalCharacter& o) const;
  AlgebraContext ctx_;
  int n_;
  std::vector<WeightMultiset> slices_;
};

}  // namespace cartan
