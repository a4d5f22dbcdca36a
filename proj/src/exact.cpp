#include "cartan/exact.hpp"

#include <algorithm>
#include <numeric>

namespace cartan {

std::string to_string(const Rational& q) { return q.get_str(); }

MultiIndex::MultiIndex(std::vector<int> exps) : exps_(std::move(exps)) {
  for (int e : exps_)
    if (e < 0) throw ArgumentError("multi-index entries must be nonnegative");
}

MultiIndex MultiIndex::unit(std::size_t n, std::size_t k) {
  MultiIndex a(n);
  a.exps_.at(k) = 1;
  return a;
}

int MultiIndex::degree() const { return std::accumulate(exps_.begin(), exps_.end(), 0); }

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (size() != other.size()) throw DimensionError("multi-index length mismatch");
  MultiIndex r(*this);
  for (std::size_t i = 0; i < size(); ++i) r.exps_[i] += other.exps_[i];
  return r;
}

std::optional<MultiIndex> MultiIndex::minus(const MultiIndex& other) const {
  if (size() != other.size()) throw DimensionError("multi-index length mismatch");
  MultiIndex r(*this);
  for (std::size_t i = 0; i < size(); ++i) {
    r.exps_[i] -= other.exps_[i];
    if (r.exps_[i] < 0) return std::nullopt;
  }
  return r;
}

std::optional<MultiIndex> MultiIndex::minus_unit(std::size_t k) const {
  if (exps_.at(k) == 0) return std::nullopt;
  MultiIndex r(*this);
  --r.exps_[k];
  return r;
}

MultiIndex MultiIndex::plus_unit(std::size_t k) const {
  MultiIndex r(*this);
  ++r.exps_.at(k);
  return r;
}

std::strong_ordering MultiIndex::operator<=>(const MultiIndex& other) const {
  if (auto c = degree() <=> other.degree(); c != 0) return c;
  if (auto c = size() <=> other.size(); c != 0) return c;
  for (std::size_t i = 0; i < size(); ++i)
    if (exps_[i] != other.exps_[i]) return other.exps_[i] <=> exps_[i];
  return std::strong_ordering::equal;
}

std::vector<MultiIndex> MultiIndex::of_degree(std::size_t n, int degree) {
  std::vector<MultiIndex> out;
  if (degree < 0 || n == 0) return out;
  std::vector<int> cur(n, 0);
  // Recursive fill, largest leading exponent first to match the ordering.
  auto rec = [&](auto&& self, std::size_t pos, int left) -> void {
    if (pos + 1 == n) {
      cur[pos] = left;
      out.emplace_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[pos] = e;
      self(self, pos + 1, left - e);
    }
  };
  rec(rec, 0, degree);
  return out;
}

std::ostream& operator<<(std::ostream& os, const MultiIndex& a) {
  os << '(';
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  return os << ')';
}

Integer binomial(int s, int t) {
  if (t < 0 || s < t) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(s), static_cast<unsigned long>(t));
  return r;
}

Integer multi_binomial(const MultiIndex& a, const MultiIndex& b) {
  if (a.size() != b.size()) throw DimensionError("multi_binomial: length mismatch");
  Integer r = 1;
  for (std::size_t i = 0; i < a.size(); ++i) {
    r *= binomial(a[i], b[i]);
    if (r == 0) break;
  }
  return r;
}

// ---------------------------------------------------------------- SparseVector

SparseVector::SparseVector(std::size_t dim, std::vector<Entry> entries)
    : dim_(dim), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  std::vector<Entry> merged;
  merged.reserve(entries_.size());
  for (auto& e : entries_) {
    if (e.first >= dim_) throw DimensionError("sparse vector index out of range");
    if (!merged.empty() && merged.back().first == e.first)
      merged.back().second += e.second;
    else
      merged.push_back(std::move(e));
  }
  std::erase_if(merged, [](const Entry& e) { return e.second == 0; });
  entries_ = std::move(merged);
}

SparseVector SparseVector::from_dense(const std::vector<Rational>& dense) {
  SparseVector v(dense.size());
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (dense[i] != 0) v.entries_.emplace_back(i, dense[i]);
  return v;
}

SparseVector SparseVector::unit(std::size_t dim, std::size_t i) {
  if (i >= dim) throw DimensionError("unit vector index out of range");
  SparseVector v(dim);
  v.entries_.emplace_back(i, Rational(1));
  return v;
}

Rational SparseVector::at(std::size_t i) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), i,
                             [](const Entry& e, std::size_t k) { return e.first < k; });
  if (it != entries_.end() && it->first == i) return it->second;
  return 0;
}

std::vector<Rational> SparseVector::to_dense() const {
  std::vector<Rational> d(dim_);
  for (const auto& [i, c] : entries_) d[i] = c;
  return d;
}

void SparseVector::add_scaled(const SparseVector& other, const Rational& c) {
  if (other.dim_ != dim_) throw DimensionError("sparse vector dimension mismatch");
  if (c == 0 || other.entries_.empty()) return;
  std::vector<Entry> out;
  out.reserve(entries_.size() + other.entries_.size());
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() || b != other.entries_.end()) {
    if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == entries_.end() || b->first < a->first) {
      out.emplace_back(b->first, c * b->second);
      ++b;
    } else {
      Rational s = a->second + c * b->second;
      if (s != 0) out.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  entries_ = std::move(out);
}

SparseVector SparseVector::scaled(const Rational& c) const {
  SparseVector r(dim_);
  if (c == 0) return r;
  r.entries_.reserve(entries_.size());
  for (const auto& [i, v] : entries_) r.entries_.emplace_back(i, v * c);
  return r;
}

SparseVector SparseVector::operator+(const SparseVector& other) const {
  SparseVector r(*this);
  r.add_scaled(other, 1);
  return r;
}

SparseVector SparseVector::operator-(const SparseVector& other) const {
  SparseVector r(*this);
  r.add_scaled(other, -1);
  return r;
}

bool SparseVector::operator==(const SparseVector& other) const {
  return dim_ == other.dim_ && entries_ == other.entries_;
}

void SparseAccumulator::add(std::size_t i, const Rational& c) {
  if (i >= dim_) throw DimensionError("accumulator index out of range");
  if (c == 0) return;
  auto [it, fresh] = acc_.try_emplace(i, c);
  if (!fresh) it->second += c;
}

SparseVector SparseAccumulator::finish() const {
  std::vector<SparseVector::Entry> e;
  e.reserve(acc_.size());
  for (const auto& [i, c] : acc_)
    if (c != 0) e.emplace_back(i, c);
  return SparseVector(dim_, std::move(e));
}

// ---------------------------------------------------------------- SparseMatrix

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), columns_(cols, SparseVector(rows)) {}

SparseMatrix::SparseMatrix(std::size_t rows, std::vector<SparseVector> columns)
    : rows_(rows), columns_(std::move(columns)) {
  for (const auto& c : columns_)
    if (c.dim() != rows_) throw DimensionError("column dimension mismatch");
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<Rational>>& rows) {
  std::size_t r = rows.size();
  std::size_t c = r ? rows[0].size() : 0;
  SparseMatrix m(r, c);
  for (std::size_t j = 0; j < c; ++j) {
    std::vector<SparseVector::Entry> e;
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw DimensionError("ragged dense matrix");
      if (rows[i][j] != 0) e.emplace_back(i, rows[i][j]);
    }
    m.columns_[j] = SparseVector(r, std::move(e));
  }
  return m;
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.columns_[i] = SparseVector::unit(n, i);
  return m;
}

void SparseMatrix::set_column(std::size_t j, SparseVector v) {
  if (v.dim() != rows_) throw DimensionError("column dimension mismatch");
  columns_.at(j) = std::move(v);
}

std::size_t SparseMatrix::nnz() const {
  std::size_t s = 0;
  for (const auto& c : columns_) s += c.nnz();
  return s;
}

bool SparseMatrix::is_zero() const {
  return std::all_of(columns_.begin(), columns_.end(),
                     [](const SparseVector& c) { return c.is_zero(); });
}

SparseMatrix SparseMatrix::transpose() const {
  std::vector<std::vector<SparseVector::Entry>> rows(rows_);
  for (std::size_t j = 0; j < cols(); ++j)
    for (const auto& [i, c] : columns_[j].entries()) rows[i].emplace_back(j, c);
  SparseMatrix t(cols(), rows_);
  for (std::size_t i = 0; i < rows_; ++i) t.columns_[i] = SparseVector(cols(), std::move(rows[i]));
  return t;
}

SparseVector SparseMatrix::apply(const SparseVector& v) const {
  if (v.dim() != cols()) throw DimensionError("matrix-vector dimension mismatch");
  SparseAccumulator acc(rows_);
  for (const auto& [j, c] : v.entries())
    for (const auto& [i, a] : columns_[j].entries()) acc.add(i, a * c);
  return acc.finish();
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& other) const {
  if (cols() != other.rows()) throw DimensionError("matrix product dimension mismatch");
  SparseMatrix r(rows_, other.cols());
  for (std::size_t j = 0; j < other.cols(); ++j) r.columns_[j] = apply(other.columns_[j]);
  return r;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& other) const {
  if (rows_ != other.rows_ || cols() != other.cols())
    throw DimensionError("matrix sum dimension mismatch");
  SparseMatrix r(*this);
  for (std::size_t j = 0; j < cols(); ++j) r.columns_[j].add_scaled(other.columns_[j], 1);
  return r;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& other) const {
  return *this + other.scaled(-1);
}

SparseMatrix SparseMatrix::scaled(const Rational& c) const {
  SparseMatrix r(rows_, cols());
  for (std::size_t j = 0; j < cols(); ++j) r.columns_[j] = columns_[j].scaled(c);
  return r;
}

bool SparseMatrix::operator==(const SparseMatrix& other) const {
  return rows_ == other.rows_ && columns_ == other.columns_;
}

// ---------------------------------------------------------------- elimination

SparseVector EchelonBasis::reduce(SparseVector v) const {
  if (v.dim() != dim_) throw DimensionError("echelon basis dimension mismatch");
  std::size_t pos = 0;
  while (pos < v.nnz()) {
    const auto& [idx, c] = v.entries()[pos];
    auto it = rows_.find(idx);
    if (it == rows_.end()) {
      ++pos;
      continue;
    }
    // Pivot entries are 1 and every entry of the stored row sits at or after
    // the pivot, so entries before pos are untouched.
    Rational f = -c;
    v.add_scaled(it->second.vec, f);
  }
  return v;
}

bool EchelonBasis::insert(const SparseVector& v) {
  if (v.dim() != dim_) throw DimensionError("echelon basis dimension mismatch");
  std::size_t slot = inputs_++;
  SparseVector r = v;
  SparseVector combo(track_ ? inputs_ : 0);
  if (track_) combo = SparseVector::unit(inputs_, slot);
  // Same sweep as reduce(), mirrored on the combination.
  std::size_t pos = 0;
  while (pos < r.nnz()) {
    std::size_t idx = r.entries()[pos].first;
    auto it = rows_.find(idx);
    if (it == rows_.end()) {
      ++pos;
      continue;
    }
    Rational f = -r.entries()[pos].second;
    r.add_scaled(it->second.vec, f);
    if (track_) {
      SparseVector other = it->second.combo;
      SparseVector widened(inputs_, {other.entries().begin(), other.entries().end()});
      combo.add_scaled(widened, f);
    }
  }
  if (r.is_zero()) return false;
  Rational inv = 1 / Rational(r.entries().front().second);
  std::size_t pivot = r.entries().front().first;
  Row row{r.scaled(inv), track_ ? combo.scaled(inv) : SparseVector()};
  rows_.emplace(pivot, std::move(row));
  return true;
}

std::optional<SparseVector> EchelonBasis::solve(const SparseVector& v) const {
  if (!track_) throw ArgumentError("EchelonBasis::solve requires tracking");
  if (v.dim() != dim_) throw DimensionError("echelon basis dimension mismatch");
  SparseVector r = v;
  SparseVector coords(inputs_);
  std::size_t pos = 0;
  while (pos < r.nnz()) {
    std::size_t idx = r.entries()[pos].first;
    auto it = rows_.find(idx);
    if (it == rows_.end()) return std::nullopt;
    Rational f = r.entries()[pos].second;
    r.add_scaled(it->second.vec, -f);
    const auto& combo = it->second.combo;
    coords.add_scaled(SparseVector(inputs_, {combo.entries().begin(), combo.entries().end()}), f);
  }
  return coords;
}

std::vector<std::size_t> EchelonBasis::pivots() const {
  std::vector<std::size_t> p;
  p.reserve(rows_.size());
  for (const auto& kv : rows_) p.push_back(kv.first);
  return p;
}

std::vector<SparseVector> EchelonBasis::reduced_rows() const {
  std::vector<std::pair<std::size_t, SparseVector>> rows;
  for (const auto& [p, row] : rows_) rows.emplace_back(p, row.vec);
  for (std::size_t i = rows.size(); i-- > 0;) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      Rational c = rows[i].second.at(rows[j].first);
      if (c != 0) rows[i].second.add_scaled(rows[j].second, -c);
    }
  }
  std::vector<SparseVector> out;
  out.reserve(rows.size());
  for (auto& r : rows) out.push_back(std::move(r.second));
  return out;
}

std::size_t rank(const SparseMatrix& m) {
  EchelonBasis e(m.rows());
  for (const auto& c : m.columns()) {
    e.insert(c);
    if (e.rank() == m.rows()) break;
  }
  return e.rank();
}

bool span_contains(const std::vector<SparseVector>& spanning, const SparseVector& v) {
  EchelonBasis e(v.dim());
  for (const auto& s : spanning) {
    if (s.dim() != v.dim()) throw DimensionError("span_contains: dimension mismatch");
    e.insert(s);
  }
  return e.contains(v);
}

RankFactorization rank_factorization(const SparseMatrix& m) {
  EchelonBasis e(m.rows(), true);
  std::vector<std::size_t> pivots;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (e.insert(m.column(j))) pivots.push_back(j);
  // Re-solve each column against an echelon basis holding only the pivot
  // columns so coordinates refer to pivot positions.
  EchelonBasis p(m.rows(), true);
  std::vector<SparseVector> left_cols;
  for (std::size_t j : pivots) {
    p.insert(m.column(j));
    left_cols.push_back(m.column(j));
  }
  SparseMatrix right(pivots.size(), m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    auto coords = p.solve(m.column(j));
    if (!coords) throw ConsistencyError("rank_factorization: column outside pivot span");
    right.set_column(j, SparseVector(pivots.size(), coords->entries()));
  }
  return {SparseMatrix(m.rows(), std::move(left_cols)), std::move(right), std::move(pivots)};
}

}  // namespace cartan
