#pragma once

// Exact arithmetic over Q: rationals, multi-indices and sparse linear algebra.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cartan {

using Rational = mpq_class;
using Integer = mpz_class;

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised when an internal consistency check fails (a bug or a truncation that
/// is too small for the requested computation).
struct ConsistencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string to_string(const Rational& q);

/// Exponent vector alpha in N^n. Ordered graded-lexicographically: total degree
/// first, then lexicographically with larger leading exponents first, so that
/// x_1^2 < x_1 x_2 < x_2^2.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t n) : exps_(n, 0) {}
  explicit MultiIndex(std::vector<int> exps);
  MultiIndex(std::initializer_list<int> exps) : MultiIndex(std::vector<int>(exps)) {}

  static MultiIndex unit(std::size_t n, std::size_t k);

  std::size_t size() const { return exps_.size(); }
  int degree() const;
  int operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<int>& exponents() const { return exps_; }
  bool is_zero() const { return degree() == 0; }

  MultiIndex operator+(const MultiIndex& other) const;
  /// Componentwise difference; empty when some entry would be negative
  /// (the monomial x^(a-b) is then zero).
  std::optional<MultiIndex> minus(const MultiIndex& other) const;
  std::optional<MultiIndex> minus_unit(std::size_t k) const;
  MultiIndex plus_unit(std::size_t k) const;

  bool operator==(const MultiIndex& other) const = default;
  std::strong_ordering operator<=>(const MultiIndex& other) const;

  /// All multi-indices of the given total degree in n variables, ascending.
  static std::vector<MultiIndex> of_degree(std::size_t n, int degree);

 private:
  std::vector<int> exps_;
};

std::ostream& operator<<(std::ostream& os, const MultiIndex& a);

/// Binomial C(s,t) with C(s,t)=0 for s<t and C(s,0)=1.
Integer binomial(int s, int t);

/// prod_i C(a_i, b_i).
Integer multi_binomial(const MultiIndex& a, const MultiIndex& b);

/// Sparse vector of fixed dimension; entries sorted by index, no stored zeros.
class SparseVector {
 public:
  using Entry = std::pair<std::size_t, Rational>;

  SparseVector() = default;
  explicit SparseVector(std::size_t dim) : dim_(dim) {}
  SparseVector(std::size_t dim, std::vector<Entry> entries);
  static SparseVector from_dense(const std::vector<Rational>& dense);
  static SparseVector unit(std::size_t dim, std::size_t i);

  std::size_t dim() const { return dim_; }
  std::size_t nnz() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }
  const std::vector<Entry>& entries() const { return entries_; }
  Rational at(std::size_t i) const;
  std::vector<Rational> to_dense() const;

  /// this += c * other
  void add_scaled(const SparseVector& other, const Rational& c);
  SparseVector scaled(const Rational& c) const;
  SparseVector operator+(const SparseVector& other) const;
  SparseVector operator-(const SparseVector& other) const;
  bool operator==(const SparseVector& other) const;

 private:
  std::size_t dim_ = 0;
  std::vector<Entry> entries_;
};

/// Accumulates (index, value) contributions and produces a canonical
/// SparseVector.
class SparseAccumulator {
 public:
  explicit SparseAccumulator(std::size_t dim) : dim_(dim) {}
  void add(std::size_t i, const Rational& c);
  SparseVector finish() const;

 private:
  std::size_t dim_;
  std::map<std::size_t, Rational> acc_;
};

/// Column-major sparse matrix.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols);
  SparseMatrix(std::size_t rows, std::vector<SparseVector> columns);
  static SparseMatrix from_dense(const std::vector<std::vector<Rational>>& rows);
  static SparseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  const SparseVector& column(std::size_t j) const { return columns_[j]; }
  const std::vector<SparseVector>& columns() const { return columns_; }
  void set_column(std::size_t j, SparseVector v);
  Rational at(std::size_t i, std::size_t j) const { return columns_[j].at(i); }
  std::size_t nnz() const;
  bool is_zero() const;

  SparseMatrix transpose() const;
  SparseVector apply(const SparseVector& v) const;
  SparseMatrix operator*(const SparseMatrix& other) const;
  SparseMatrix operator+(const SparseMatrix& other) const;
  SparseMatrix operator-(const SparseMatrix& other) const;
  SparseMatrix scaled(const Rational& c) const;
  bool operator==(const SparseMatrix& other) const;

 private:
  std::size_t rows_ = 0;
  std::vector<SparseVector> columns_;
};

/// Incrementally built echelon basis of a subspace of Q^dim. The pivot of a
/// stored vector is its first nonzero index; stored vectors are scaled so the
/// pivot entry is 1. Optionally tracks every stored vector as a combination of
/// the inserted inputs, which supports coordinate solving.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t dim, bool track = false) : dim_(dim), track_(track) {}

  std::size_t dim() const { return dim_; }
  std::size_t rank() const { return rows_.size(); }

  /// Reduces v and stores the remainder if nonzero. Returns true iff v was
  /// independent of what is already stored. Every call consumes one input
  /// slot for tracking purposes.
  bool insert(const SparseVector& v);
  SparseVector reduce(SparseVector v) const;
  bool contains(const SparseVector& v) const { return reduce(v).is_zero(); }

  /// Coordinates of v in terms of the inserted inputs (only when tracking).
  /// Empty when v is outside the span.
  std::optional<SparseVector> solve(const SparseVector& v) const;

  /// Pivot index of every stored vector, ascending.
  std::vector<std::size_t> pivots() const;
  /// Stored vectors brought to reduced row-echelon form (each pivot column
  /// is zero in every other row), ordered by pivot.
  std::vector<SparseVector> reduced_rows() const;
  std::size_t inputs() const { return inputs_; }

 private:
  struct Row {
    SparseVector vec;
    SparseVector combo;  // over input slots
  };
  std::size_t dim_;
  bool track_;
  std::size_t inputs_ = 0;
  std::map<std::size_t, Row> rows_;
};

/// Rank over Q by exact elimination of the columns in order.
std::size_t rank(const SparseMatrix& m);

/// True iff v lies in the Q-span of the given vectors.
bool span_contains(const std::vector<SparseVector>& spanning, const SparseVector& v);

/// M = left * right with left = the independent columns of M (in order) and
/// right the coordinates of every column of M against them.
struct RankFactorization {
  SparseMatrix left;
  SparseMatrix right;
  std::vector<std::size_t> pivot_columns;
};
RankFactorization rank_factorization(const SparseMatrix& m);

}  // namespace cartan
