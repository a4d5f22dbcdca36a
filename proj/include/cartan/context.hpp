#pragma once

#include <compare>
#include <string>

namespace cartan {

enum class Family { W, S, H };

std::string to_string(Family f);
Family parse_family(const std::string& s);

/// Which vector-field algebra we work in: W(n), S(n) or H(n) with n = 2r.
struct AlgebraContext {
  Family family = Family::W;
  int n = 2;

  AlgebraContext() = default;
  /// Validates n >= 2, and n even for the Hamiltonian family.
  AlgebraContext(Family f, int n);

  int r() const { return n / 2; }
  /// Length of a weight vector: n for W and S, r for H.
  int weight_rank() const { return family == Family::H ? r() : n; }
  std::string name() const;

  bool operator==(const AlgebraContext&) const = default;
  auto operator<=>(const AlgebraContext&) const = default;
};

}  // namespace cartan
