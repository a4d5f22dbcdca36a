#include "cartan/vector_fields.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cartan {

namespace {

void require_same(const AlgebraContext& a, const AlgebraContext& b) {
  if (a != b) throw ArgumentError("vector fields from different algebras: " + a.name() + " vs " + b.name());
}

void add_to(Polynomial& p, const MultiIndex& a, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = p.try_emplace(a, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

// d_k(x^alpha) as (coefficient, exponent); empty when zero.
std::optional<std::pair<Rational, MultiIndex>> partial(const MultiIndex& a, int k) {
  auto m = a.minus_unit(k);
  if (!m) return std::nullopt;
  return std::make_pair(Rational(a[k]), *m);
}

int sigma(AlgebraContext ctx, int i) { return i < ctx.r() ? 1 : -1; }
int prime(AlgebraContext ctx, int i) { return i < ctx.r() ? i + ctx.r() : i - ctx.r(); }

}  // namespace

// ---------------------------------------------------------------- VectorField

VectorField VectorField::monomial(AlgebraContext ctx, const MultiIndex& alpha, int dir, const Rational& c) {
  VectorField v(ctx);
  v.add_term(alpha, dir, c);
  return v;
}

Rational VectorField::coefficient(const Term& t) const {
  auto it = terms_.find(t);
  return it == terms_.end() ? Rational(0) : it->second;
}

void VectorField::add_term(const MultiIndex& alpha, int dir, const Rational& c) {
  if (alpha.size() != static_cast<std::size_t>(ctx_.n))
    throw DimensionError("multi-index has " + std::to_string(alpha.size()) + " entries, expected " +
                         std::to_string(ctx_.n));
  if (dir < 0 || dir >= ctx_.n) throw DimensionError("direction out of range");
  if (c == 0) return;
  Term t{alpha, dir};
  auto [it, fresh] = terms_.try_emplace(t, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

VectorField VectorField::operator+(const VectorField& o) const {
  require_same(ctx_, o.ctx_);
  VectorField r = *this;
  for (const auto& [t, c] : o.terms_) r.add_term(t.alpha, t.dir, c);
  return r;
}

VectorField VectorField::operator-(const VectorField& o) const { return *this + o.scaled(-1); }

VectorField VectorField::scaled(const Rational& c) const {
  VectorField r(ctx_);
  if (c == 0) return r;
  for (const auto& [t, x] : terms_) r.terms_.emplace(t, x * c);
  return r;
}

std::optional<int> VectorField::degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = terms_.begin()->first.alpha.degree() - 1;
  for (const auto& [t, c] : terms_)
    if (t.alpha.degree() - 1 != d) return std::nullopt;
  return d;
}

bool VectorField::is_homogeneous_of(int d) const {
  for (const auto& [t, c] : terms_)
    if (t.alpha.degree() - 1 != d) return false;
  return true;
}

Polynomial VectorField::apply(const Polynomial& g) const {
  Polynomial out;
  for (const auto& [t, c] : terms_)
    for (const auto& [b, gc] : g)
      if (auto p = partial(b, t.dir)) add_to(out, t.alpha + p->second, c * gc * p->first);
  return out;
}

VectorField bracket(const VectorField& u, const VectorField& v) {
  require_same(u.context(), v.context());
  VectorField out(u.context());
  for (const auto& [tu, cu] : u.terms())
    for (const auto& [tv, cv] : v.terms()) {
      // f d_i(g) d_j - g d_j(f) d_i with f = x^a (dir i), g = x^b (dir j)
      if (auto p = partial(tv.alpha, tu.dir)) out.add_term(tu.alpha + p->second, tv.dir, cu * cv * p->first);
      if (auto p = partial(tu.alpha, tv.dir)) out.add_term(tv.alpha + p->second, tu.dir, -cu * cv * p->first);
    }
  return out;
}

Polynomial divergence(const VectorField& u) {
  Polynomial out;
  for (const auto& [t, c] : u.terms())
    if (auto p = partial(t.alpha, t.dir)) add_to(out, p->second, c * p->first);
  return out;
}

VectorField d_ij(AlgebraContext ctx, int i, int j, const MultiIndex& alpha) {
  if (i < 1 || j > ctx.n || i >= j)
    throw ArgumentError("D_ij needs 1 <= i < j <= n, got i=" + std::to_string(i) + ", j=" + std::to_string(j));
  if (alpha.size() != static_cast<std::size_t>(ctx.n)) throw DimensionError("multi-index length mismatch");
  const int a = i - 1, b = j - 1;
  VectorField v(ctx);
  if (auto m = alpha.minus_unit(b)) v.add_term(*m, a, alpha[b]);
  if (auto m = alpha.minus_unit(a)) v.add_term(*m, b, -alpha[a]);
  return v;
}

VectorField d_h(AlgebraContext ctx, const MultiIndex& alpha) {
  if (ctx.family != Family::H) throw ArgumentError("D_H is only defined for H(n)");
  if (alpha.size() != static_cast<std::size_t>(ctx.n)) throw DimensionError("multi-index length mismatch");
  if (alpha.is_zero()) throw ArgumentError("D_H(x^alpha) requires alpha != 0");
  VectorField v(ctx);
  for (int i = 0; i < ctx.n; ++i)
    if (auto m = alpha.minus_unit(i)) v.add_term(*m, prime(ctx, i), sigma(ctx, i) * alpha[i]);
  return v;
}

Weight term_weight(AlgebraContext ctx, const Term& t) {
  std::vector<std::int64_t> gl(t.alpha.exponents().begin(), t.alpha.exponents().end());
  gl[t.dir] -= 1;
  return Weight::from_gl(ctx, gl);
}

// ---------------------------------------------------------------- text form

std::string format_field(const VectorField& v) {
  if (v.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, c] : v.terms()) {
    Rational a = c;
    if (first) {
      if (a < 0) {
        os << '-';
        a = -a;
      }
    } else {
      os << (a < 0 ? " - " : " + ");
      if (a < 0) a = -a;
    }
    first = false;
    os << to_string(a) << "*x^(";
    for (std::size_t i = 0; i < t.alpha.size(); ++i) os << (i ? "," : "") << t.alpha[i];
    os << ")d " << (t.dir + 1);
  }
  return os.str();
}

namespace {

class FieldParser {
 public:
  FieldParser(AlgebraContext ctx, const std::string& s) : ctx_(ctx), s_(s) {}

  VectorField parse() {
    VectorField out(ctx_);
    skip();
    if (rest_is("0")) {
      ++pos_;
      skip();
      if (pos_ == s_.size()) return out;
      pos_ = 0;
      skip();
    }
    bool first = true;
    while (true) {
      skip();
      Rational sign = 1;
      if (peek('+') || peek('-')) {
        sign = s_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      skip();
      out = out + item().scaled(sign);
      skip();
      if (pos_ == s_.size()) break;
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ArgumentError("cannot parse vector field '" + s_ + "' at position " + std::to_string(pos_) + ": " +
                        what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }
  bool rest_is(const std::string& t) const { return s_.compare(pos_, t.size(), t) == 0; }
  void expect(char c) {
    skip();
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  long long integer() {
    skip();
    std::size_t start = pos_;
    if (peek('-') || peek('+')) ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start || !std::isdigit(static_cast<unsigned char>(s_[pos_ - 1]))) fail("expected an integer");
    return std::stoll(s_.substr(start, pos_ - start));
  }

  Rational coefficient() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (peek('/')) {
      ++pos_;
      std::size_t d = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (d == pos_) fail("expected a denominator");
    }
    Rational q(s_.substr(start, pos_ - start));
    if (q.get_den() == 0) fail("zero denominator");
    q.canonicalize();
    return q;
  }

  MultiIndex exponents(char open, char close) {
    expect(open);
    std::vector<int> e;
    while (true) {
      long long v = integer();
      if (v < 0) fail("negative exponent");
      e.push_back(static_cast<int>(v));
      skip();
      if (peek(',')) {
        ++pos_;
        continue;
      }
      break;
    }
    expect(close);
    if (e.size() != static_cast<std::size_t>(ctx_.n))
      fail("expected " + std::to_string(ctx_.n) + " exponents, got " + std::to_string(e.size()));
    return MultiIndex(std::move(e));
  }

  int direction() {
    long long k = integer();
    if (k < 1 || k > ctx_.n) fail("direction out of range 1.." + std::to_string(ctx_.n));
    return static_cast<int>(k) - 1;
  }

  VectorField item() {
    Rational c = 1;
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      c = coefficient();
      skip();
      if (!peek('*')) fail("expected '*' after coefficient");
      ++pos_;
      skip();
    }
    return atom().scaled(c);
  }

  VectorField atom() {
    if (rest_is("x^")) {
      pos_ += 2;
      MultiIndex a = exponents('(', ')');
      skip();
      if (!peek('d')) fail("expected 'd'");
      ++pos_;
      return VectorField::monomial(ctx_, a, direction());
    }
    if (rest_is("DH")) {
      pos_ += 2;
      return d_h(ctx_, exponents('[', ']'));
    }
    if (rest_is("D(")) {
      ++pos_;
      expect('(');
      long long i = integer();
      expect(',');
      long long j = integer();
      expect(')');
      return d_ij(ctx_, static_cast<int>(i), static_cast<int>(j), exponents('[', ']'));
    }
    if (peek('d')) {
      ++pos_;
      return VectorField::monomial(ctx_, MultiIndex(static_cast<std::size_t>(ctx_.n)), direction());
    }
    fail("expected x^(...)d k, D(i,j)[...], DH[...] or d k");
  }

  AlgebraContext ctx_;
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

VectorField parse_field(AlgebraContext ctx, const std::string& text) { return FieldParser(ctx, text).parse(); }

// ---------------------------------------------------------------- GradedSlice

GradedSlice::GradedSlice(AlgebraContext ctx, int degree, std::vector<VectorField> basis)
    : ctx_(ctx), degree_(degree), basis_(std::move(basis)) {
  for (const auto& b : basis_) {
    if (b.is_zero() || !b.is_homogeneous_of(degree_))
      throw ConsistencyError("basis element " + format_field(b) + " is not homogeneous of degree " +
                             std::to_string(degree_));
    for (const auto& [t, c] : b.terms()) term_index_.try_emplace(t, 0);
  }
  std::size_t k = 0;
  for (auto& [t, idx] : term_index_) idx = k++;
  solver_ = std::make_shared<EchelonBasis>(term_index_.size(), true);
  for (const auto& b : basis_) {
    SparseAccumulator acc(term_index_.size());
    for (const auto& [t, c] : b.terms()) acc.add(term_index_.at(t), c);
    if (!solver_->insert(acc.finish()))
      throw ConsistencyError("graded basis of degree " + std::to_string(degree_) + " is dependent");
    weights_.push_back(term_weight(ctx_, b.terms().begin()->first));
  }
}

std::optional<SparseVector> GradedSlice::coordinates(const VectorField& v) const {
  require_same(ctx_, v.context());
  SparseAccumulator acc(term_index_.size());
  for (const auto& [t, c] : v.terms()) {
    auto it = term_index_.find(t);
    if (it == term_index_.end()) return std::nullopt;
    acc.add(it->second, c);
  }
  return solver_->solve(acc.finish());
}

// ---------------------------------------------------------------- bases

namespace {

// x_i d_j with 0-based i, j.
VectorField xd(AlgebraContext ctx, int i, int j, const Rational& c = 1) {
  return VectorField::monomial(ctx, MultiIndex::unit(ctx.n, i), j, c);
}

std::vector<VectorField> degree_minus_one(AlgebraContext ctx) {
  std::vector<VectorField> out;
  for (int k = 0; k < ctx.n; ++k) out.push_back(VectorField::monomial(ctx, MultiIndex(static_cast<std::size_t>(ctx.n)), k));
  return out;
}

std::vector<VectorField> s_basis(AlgebraContext ctx, int degree) {
  std::vector<VectorField> span;
  for (const auto& a : MultiIndex::of_degree(ctx.n, degree + 2))
    for (int k = 1; k <= ctx.n; ++k)
      for (int l = k + 1; l <= ctx.n; ++l) {
        auto v = d_ij(ctx, k, l, a);
        if (!v.is_zero()) span.push_back(std::move(v));
      }
  std::map<Term, std::size_t> index;
  for (const auto& v : span)
    for (const auto& [t, c] : v.terms()) index.try_emplace(t, 0);
  std::vector<Term> terms;
  for (auto& [t, i] : index) {
    i = terms.size();
    terms.push_back(t);
  }
  EchelonBasis eb(terms.size());
  for (const auto& v : span) {
    SparseAccumulator acc(terms.size());
    for (const auto& [t, c] : v.terms()) acc.add(index.at(t), c);
    eb.insert(acc.finish());
  }
  std::vector<VectorField> out;
  for (const auto& row : eb.reduced_rows()) {
    VectorField v(ctx);
    for (const auto& [i, c] : row.entries()) v.add_term(terms[i].alpha, terms[i].dir, c);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<VectorField> h_basis(AlgebraContext ctx, int degree) {
  std::vector<VectorField> out;
  for (const auto& a : MultiIndex::of_degree(ctx.n, degree + 2)) out.push_back(d_h(ctx, a));
  return out;
}

}  // namespace

TriangularParts triangular_parts(AlgebraContext ctx) {
  TriangularParts p;
  const int n = ctx.n;
  if (ctx.family == Family::H) {
    const int r = ctx.r();
    // n^-: x_i d_j - x_{j+r} d_{i+r} (j < i), then x_{s+r} d_t + x_{t+r} d_s (s <= t).
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < i; ++j) p.n_minus.push_back(xd(ctx, i, j) - xd(ctx, j + r, i + r));
    for (int s = 0; s < r; ++s)
      for (int t = s; t < r; ++t)
        p.n_minus.push_back(s == t ? xd(ctx, s + r, s) : xd(ctx, s + r, t) + xd(ctx, t + r, s));
    for (int i = 0; i < r; ++i) p.h.push_back(xd(ctx, i, i) - xd(ctx, i + r, i + r));
    // n^+: x_i d_j - x_{j+r} d_{i+r} (i < j), then x_s d_{t+r} + x_t d_{s+r} (s <= t).
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) p.n_plus.push_back(xd(ctx, i, j) - xd(ctx, j + r, i + r));
    for (int s = 0; s < r; ++s)
      for (int t = s; t < r; ++t)
        p.n_plus.push_back(s == t ? xd(ctx, s, s + r) : xd(ctx, s, t + r) + xd(ctx, t, s + r));
    return p;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) p.n_minus.push_back(xd(ctx, i, j));
  if (ctx.family == Family::W) {
    for (int i = 0; i < n; ++i) p.h.push_back(xd(ctx, i, i));
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) p.h.push_back(xd(ctx, i, i) - xd(ctx, j, j));
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) p.n_plus.push_back(xd(ctx, i, j));
  return p;
}

GradedSlice graded_basis(AlgebraContext ctx, int degree) {
  if (degree < -1) throw ArgumentError("graded pieces start at degree -1");
  if (degree == -1) return GradedSlice(ctx, -1, degree_minus_one(ctx));
  if (degree == 0) {
    auto p = triangular_parts(ctx);
    std::vector<VectorField> b = p.n_minus;
    if (ctx.family == Family::S) {
      for (int i = 0; i + 1 < ctx.n; ++i) b.push_back(xd(ctx, i, i) - xd(ctx, ctx.n - 1, ctx.n - 1));
    } else {
      b.insert(b.end(), p.h.begin(), p.h.end());
    }
    b.insert(b.end(), p.n_plus.begin(), p.n_plus.end());
    return GradedSlice(ctx, 0, std::move(b));
  }
  switch (ctx.family) {
    case Family::W: {
      std::vector<VectorField> b;
      for (const auto& a : MultiIndex::of_degree(ctx.n, degree + 1))
        for (int k = 0; k < ctx.n; ++k) b.push_back(VectorField::monomial(ctx, a, k));
      return GradedSlice(ctx, degree, std::move(b));
    }
    case Family::S: return GradedSlice(ctx, degree, s_basis(ctx, degree));
    case Family::H: return GradedSlice(ctx, degree, h_basis(ctx, degree));
  }
  throw ArgumentError("unknown family");
}

// ---------------------------------------------------------------- CartanAlgebra

const GradedSlice& CartanAlgebra::slice(int degree) const {
  {
    std::lock_guard lock(mu_);
    auto it = slices_.find(degree);
    if (it != slices_.end()) return *it->second;
  }
  auto built = std::make_unique<GradedSlice>(graded_basis(ctx_, degree));
  std::lock_guard lock(mu_);
  auto [it, fresh] = slices_.try_emplace(degree, std::move(built));
  return *it->second;
}

const SparseVector& CartanAlgebra::structure(int da, std::size_t a, int db, std::size_t b) const {
  auto key = std::make_tuple(da, a, db, b);
  {
    std::lock_guard lock(mu_);
    auto it = structure_.find(key);
    if (it != structure_.end()) return it->second;
  }
  SparseVector coords;
  if (da + db >= -1) {
    auto br = bracket(element(da, a), element(db, b));
    auto c = slice(da + db).coordinates(br);
    if (!c)
      throw ConsistencyError("bracket of basis elements leaves " + ctx_.name() + "_[" + std::to_string(da + db) +
                             "]");
    coords = std::move(*c);
  }
  std::lock_guard lock(mu_);
  auto [it, fresh] = structure_.try_emplace(key, std::move(coords));
  return it->second;
}

std::shared_ptr<const CartanAlgebra> algebra_for(AlgebraContext ctx) {
  static std::mutex mu;
  static std::map<AlgebraContext, std::shared_ptr<const CartanAlgebra>> registry;
  std::lock_guard lock(mu);
  auto& slot = registry[ctx];
  if (!slot) slot = std::make_shared<const CartanAlgebra>(ctx);
  return slot;
}

// ---------------------------------------------------------------- checks

bool check_generation(AlgebraContext ctx, int i) {
  if (i < 2) throw ArgumentError("generation is checked for degrees i >= 2");
  auto alg = algebra_for(ctx);
  const auto& target = alg->slice(i);
  const auto& lower = alg->slice(i - 1);
  const auto& one = alg->slice(1);
  EchelonBasis eb(target.dim());
  for (std::size_t u = 0; u < lower.dim() && eb.rank() < target.dim(); ++u)
    for (std::size_t v = 0; v < one.dim() && eb.rank() < target.dim(); ++v)
      eb.insert(alg->structure(i - 1, u, 1, v));
  return eb.rank() == target.dim();
}

Rational semi_infinite_character(const VectorField& x) {
  if (x.context().family != Family::W) return 0;
  Rational s = 0;
  for (const auto& [t, c] : x.terms())
    if (t.alpha.degree() == 1 && t.alpha[t.dir] == 1) s += c;
  return s;
}

Rational adjoint_trace(AlgebraContext ctx, const VectorField& x, const VectorField& y) {
  const auto& g0 = algebra_for(ctx)->slice(0);
  Rational tr = 0;
  for (std::size_t b = 0; b < g0.dim(); ++b) {
    auto img = bracket(x, bracket(y, g0[b]));
    auto c = g0.coordinates(img);
    if (!c) throw ConsistencyError("ad X ad Y does not preserve g_[0]");
    tr += c->at(b);
  }
  return tr;
}

SemiInfiniteReport semi_infinite_check(AlgebraContext ctx) {
  SemiInfiniteReport rep;
  auto alg = algebra_for(ctx);
  const auto& g1 = alg->slice(1);
  const auto& gm = alg->slice(-1);
  for (std::size_t a = 0; a < g1.dim(); ++a)
    for (std::size_t b = 0; b < gm.dim(); ++b) {
      ++rep.pairs_checked;
      Rational lhs = semi_infinite_character(bracket(g1[a], gm[b]));
      Rational rhs = adjoint_trace(ctx, g1[a], gm[b]);
      if (lhs != rhs && rep.all_pass) {
        rep.all_pass = false;
        rep.witness = "X=" + format_field(g1[a]) + ", Y=" + format_field(gm[b]) + ": character " + to_string(lhs) +
                      " vs trace " + to_string(rhs);
      }
    }
  return rep;
}

LieCheckReport check_lie_structure(AlgebraContext ctx, int max_degree) {
  LieCheckReport rep;
  auto alg = algebra_for(ctx);
  std::vector<std::pair<int, const VectorField*>> elems;
  for (int d = -1; d <= max_degree; ++d)
    for (const auto& v : alg->slice(d).basis()) elems.emplace_back(d, &v);
  auto flag = [&](const std::string& w) {
    if (rep.all_pass) rep.witness = w;
    rep.all_pass = false;
  };
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i; j < elems.size(); ++j) {
      ++rep.pairs_checked;
      const auto& [di, u] = elems[i];
      const auto& [dj, v] = elems[j];
      auto uv = bracket(*u, *v);
      auto vu = bracket(*v, *u);
      const std::string pair = "[" + format_field(*u) + ", " + format_field(*v) + "]";
      if (!(uv + vu).is_zero()) flag("antisymmetry fails for " + pair);
      if (!uv.is_homogeneous_of(di + dj)) flag("grading fails for " + pair);
      if (di + dj >= -1 && !alg->slice(di + dj).coordinates(uv)) flag("closure fails for " + pair);
      if (ctx.family == Family::S && !divergence(uv).empty()) flag("divergence nonzero for " + pair);
    }
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j)
      for (std::size_t k = j + 1; k < elems.size(); ++k) {
        ++rep.triples_checked;
        const auto& a = *elems[i].second;
        const auto& b = *elems[j].second;
        const auto& c = *elems[k].second;
        auto jac = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b));
        if (!jac.is_zero())
          flag("Jacobi fails for " + format_field(a) + ", " + format_field(b) + ", " + format_field(c));
      }
  return rep;
}

}  // namespace cartan
