#include "cartan/graded_modules.hpp"

#include <algorithm>
#include <sstream>

namespace cartan {

std::string to_string(ModuleKind k) {
  switch (k) {
    case ModuleKind::Standard: return "standard";
    case ModuleKind::Costandard: return "costandard";
    case ModuleKind::ComplexTerm: return "complex-term";
  }
  return "?";
}

ModuleData::ModuleData(AlgebraContext ctx, ModuleKind kind, Weight lambda, int truncation,
                       std::shared_ptr<const G0Module> g0)
    : ctx_(ctx), kind_(kind), lambda_(std::move(lambda)), n_(truncation), g0_(std::move(g0)) {
  if (truncation < 0) throw ArgumentError("truncation must be nonnegative");
}

const SparseMatrix& ModuleData::action(int deg, std::size_t b, int m) const {
  if (m < 0 || m > n_) throw ArgumentError("module degree " + std::to_string(m) + " outside 0.." + std::to_string(n_));
  if (m + deg > n_)
    throw ArgumentError("degree-" + std::to_string(deg) + " action on block " + std::to_string(m) +
                        " leaves the truncation " + std::to_string(n_));
  std::lock_guard lock(mu_);
  auto key = std::make_tuple(deg, b, m);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  SparseMatrix a = m + deg < 0 ? SparseMatrix(0, dim(m)) : compute_action(deg, b, m);
  return cache_.emplace(key, std::move(a)).first->second;
}

SparseMatrix GradedModule::action_of(const VectorField& x, int deg, int m) const {
  auto c = algebra_for(context())->slice(deg).coordinates(x);
  if (!c) throw ArgumentError("element " + format_field(x) + " is not in degree " + std::to_string(deg));
  const std::size_t rows = m + deg < 0 ? 0 : dim(m + deg);
  SparseMatrix out(rows, dim(m));
  for (const auto& [b, coef] : c->entries()) out = out + action(deg, b, m).scaled(coef);
  return out;
}

FormalCharacter GradedModule::character() const {
  FormalCharacter c(context(), truncation());
  for (int m = 0; m <= truncation(); ++m)
    for (const auto& w : weights(m)) c.add(m, w, 1);
  return c;
}

GradedModule shift_grading(const GradedModule& m, int d) { return m.with_depth(m.depth() + d); }

// ---------------------------------------------------------------- jets

namespace {

std::vector<Jet> collect(AlgebraContext ctx, std::map<MultiIndex, VectorField>& acc) {
  std::vector<Jet> out;
  for (auto& [g, a] : acc)
    if (!a.is_zero()) out.push_back({g, a});
  (void)ctx;
  return out;
}

void add_jet(AlgebraContext ctx, std::map<MultiIndex, VectorField>& acc, const std::optional<MultiIndex>& gamma,
             const VectorField& a, const Rational& c) {
  if (!gamma || c == 0 || a.is_zero()) return;
  auto [it, fresh] = acc.try_emplace(*gamma, VectorField(ctx));
  it->second = it->second + a.scaled(c);
}

VectorField xd(AlgebraContext ctx, int i, int j) { return VectorField::monomial(ctx, MultiIndex::unit(ctx.n, i), j); }

std::optional<MultiIndex> minus2(const MultiIndex& a, int i, int j) {
  auto b = a.minus_unit(i);
  if (!b) return std::nullopt;
  return b->minus_unit(j);
}

// Expansion of basis elements of g_[deg] in a family of generators.
struct GeneratorExpansion {
  std::vector<std::tuple<int, int, MultiIndex>> generators;  // (k, l, alpha); k = l = -1 for D_H
  std::vector<SparseVector> coords;                           // per basis element, over generators
};

const GeneratorExpansion& expansion(AlgebraContext ctx, int deg) {
  static std::mutex mu;
  static std::map<std::pair<AlgebraContext, int>, GeneratorExpansion> cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(ctx, deg);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  GeneratorExpansion ex;
  std::vector<VectorField> fields;
  for (const auto& a : MultiIndex::of_degree(ctx.n, deg + 2)) {
    if (ctx.family == Family::H) {
      ex.generators.emplace_back(-1, -1, a);
      fields.push_back(d_h(ctx, a));
    } else {
      for (int k = 1; k <= ctx.n; ++k)
        for (int l = k + 1; l <= ctx.n; ++l) {
          auto f = d_ij(ctx, k, l, a);
          if (f.is_zero()) continue;
          ex.generators.emplace_back(k, l, a);
          fields.push_back(std::move(f));
        }
    }
  }
  std::map<Term, std::size_t> index;
  for (const auto& f : fields)
    for (const auto& [t, c] : f.terms()) index.try_emplace(t, 0);
  std::size_t k = 0;
  for (auto& [t, i] : index) i = k++;
  auto vec = [&](const VectorField& f) {
    SparseAccumulator acc(index.size());
    for (const auto& [t, c] : f.terms()) acc.add(index.at(t), c);
    return acc.finish();
  };
  EchelonBasis eb(index.size(), true);
  for (const auto& f : fields) eb.insert(vec(f));
  const auto& slice = algebra_for(ctx)->slice(deg);
  for (const auto& b : slice.basis()) {
    for (const auto& [t, c] : b.terms())
      if (!index.count(t)) throw ConsistencyError("basis element outside the generator span");
    auto c = eb.solve(vec(b));
    if (!c) throw ConsistencyError("basis element " + format_field(b) + " is not a combination of generators");
    ex.coords.push_back(std::move(*c));
  }
  return cache.emplace(key, std::move(ex)).first->second;
}

// Displayed S formula for D_kl(x^alpha) with 0-based k < l.
void s_generator_jets(AlgebraContext ctx, int k, int l, const MultiIndex& a, const Rational& c,
                      std::map<MultiIndex, VectorField>& acc) {
  const int n = ctx.n;
  add_jet(ctx, acc, minus2(a, k, l), xd(ctx, k, k) - xd(ctx, l, l), c * a[k] * a[l]);
  for (int j = 0; j < n; ++j) {
    if (j != k) add_jet(ctx, acc, minus2(a, j, l), xd(ctx, j, k), c * a[l] * (a[j] - (j == l ? 1 : 0)));
    if (j != l) add_jet(ctx, acc, minus2(a, j, k), xd(ctx, j, l), -c * a[k] * (a[j] - (j == k ? 1 : 0)));
  }
}

// Displayed H formula for D_H(x^alpha).
void h_generator_jets(AlgebraContext ctx, const MultiIndex& a, const Rational& c,
                      std::map<MultiIndex, VectorField>& acc) {
  const int r = ctx.r(), n = ctx.n;
  auto prime = [&](int i) { return i < r ? i + r : i - r; };
  auto sigma = [&](int i) { return i < r ? 1 : -1; };
  for (int j = 0; j < n; ++j)
    add_jet(ctx, acc, minus2(a, j, j), xd(ctx, j, prime(j)), c * sigma(j) * a[j] * (a[j] - 1));
  for (int j = 0; j < r; ++j)
    for (int k = j + 1; k < r; ++k)
      add_jet(ctx, acc, minus2(a, j, k), xd(ctx, k, prime(j)) + xd(ctx, j, prime(k)), c * a[j] * a[k]);
  for (int k = 0; k < r; ++k)
    for (int j = r; j < n; ++j)
      add_jet(ctx, acc, minus2(a, j, k), xd(ctx, k, prime(j)) - xd(ctx, j, prime(k)), -c * a[j] * a[k]);
  for (int j = r; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      add_jet(ctx, acc, minus2(a, j, k), xd(ctx, k, prime(j)) + xd(ctx, j, prime(k)), -c * a[j] * a[k]);
}

}  // namespace

std::vector<Jet> jacobian_jets(const VectorField& x) {
  const auto ctx = x.context();
  std::map<MultiIndex, VectorField> acc;
  for (const auto& [t, c] : x.terms())
    for (int j = 0; j < ctx.n; ++j)
      add_jet(ctx, acc, t.alpha.minus_unit(j), xd(ctx, j, t.dir), c * t.alpha[j]);
  return collect(ctx, acc);
}

std::vector<Jet> family_jets(AlgebraContext ctx, int deg, std::size_t b) {
  if (ctx.family == Family::W) return jacobian_jets(algebra_for(ctx)->element(deg, b));
  const auto& ex = expansion(ctx, deg);
  std::map<MultiIndex, VectorField> acc;
  for (const auto& [g, c] : ex.coords.at(b).entries()) {
    const auto& [k, l, a] = ex.generators[g];
    if (ctx.family == Family::S) {
      s_generator_jets(ctx, k - 1, l - 1, a, c, acc);
    } else {
      h_generator_jets(ctx, a, c, acc);
    }
  }
  return collect(ctx, acc);
}

// ---------------------------------------------------------------- costandard

namespace {

std::string mono_label(const MultiIndex& a) {
  std::ostringstream os;
  os << "x^(";
  for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << a[i];
  os << ")";
  return os.str();
}

class ProlongationData : public ModuleData {
 public:
  ProlongationData(std::shared_ptr<const G0Module> g0, int truncation, ModuleKind kind)
      : ModuleData(g0->context(), kind, g0->lowest_weight(), truncation, g0) {
    const std::size_t d = g0_->dim();
    for (int m = 0; m <= n_; ++m) {
      monos_.push_back(MultiIndex::of_degree(ctx_.n, m));
      std::map<MultiIndex, std::size_t> idx;
      std::vector<Weight> w;
      for (std::size_t p = 0; p < monos_[m].size(); ++p) {
        idx.emplace(monos_[m][p], p);
        std::vector<std::int64_t> gl(monos_[m][p].exponents().begin(), monos_[m][p].exponents().end());
        Weight mw = Weight::from_gl(ctx_, gl);
        for (std::size_t v = 0; v < d; ++v) w.push_back(mw + g0_->weights()[v]);
      }
      index_.push_back(std::move(idx));
      weights_.push_back(std::move(w));
    }
  }

  std::string label(int m, std::size_t i) const override {
    const std::size_t d = g0_->dim();
    return mono_label(monos_.at(m).at(i / d)) + "*" + g0_->labels()[i % d];
  }

  std::size_t mono_index(const MultiIndex& a) const { return index_.at(a.degree()).at(a); }

 protected:
  SparseMatrix compute_action(int deg, std::size_t b, int m) const override {
    const std::size_t d = g0_->dim();
    const int t = m + deg;
    const auto& x = algebra_for(ctx_)->element(deg, b);
    auto key = std::make_pair(deg, b);
    auto it = jets_.find(key);
    if (it == jets_.end()) {
      std::vector<std::pair<MultiIndex, SparseMatrix>> mats;
      for (const auto& j : family_jets(ctx_, deg, b)) mats.emplace_back(j.gamma, g0_->act(j.a));
      it = jets_.emplace(key, std::move(mats)).first;
    }
    std::vector<SparseVector> cols;
    cols.reserve(dim(m));
    for (const auto& beta : monos_[m]) {
      for (std::size_t v = 0; v < d; ++v) {
        SparseAccumulator acc(dim(t));
        for (const auto& [term, c] : x.terms()) {
          if (beta[term.dir] == 0) continue;
          auto target = (term.alpha + beta).minus_unit(term.dir);
          acc.add(index_[t].at(*target) * d + v, c * beta[term.dir]);
        }
        for (const auto& [gamma, mat] : it->second) {
          std::size_t p = index_[t].at(gamma + beta);
          for (const auto& [u, c] : mat.column(v).entries()) acc.add(p * d + u, c);
        }
        cols.push_back(acc.finish());
      }
    }
    return SparseMatrix(dim(t), std::move(cols));
  }

 private:
  std::vector<std::vector<MultiIndex>> monos_;
  std::vector<std::map<MultiIndex, std::size_t>> index_;
  mutable std::map<std::pair<int, std::size_t>, std::vector<std::pair<MultiIndex, SparseMatrix>>> jets_;
};

}  // namespace

GradedModule build_prolongation(std::shared_ptr<const G0Module> m, int truncation, ModuleKind kind) {
  return GradedModule(std::make_shared<const ProlongationData>(std::move(m), truncation, kind));
}

GradedModule build_costandard(const Weight& lambda, int truncation) {
  return build_prolongation(build_L0(lambda), truncation, ModuleKind::Costandard);
}

// ---------------------------------------------------------------- standard

namespace {

class StandardData : public ModuleData {
 public:
  using Mono = std::vector<int>;  // nondecreasing positions in gens_

  StandardData(const Weight& lambda, int truncation)
      : ModuleData(lambda.context(), ModuleKind::Standard, lambda, truncation, build_L0(lambda)) {
    auto alg = algebra_for(ctx_);
    for (int deg = 1; deg <= n_; ++deg) {
      offset_.push_back(gens_.size());
      for (std::size_t b = 0; b < alg->dim(deg); ++b) gens_.emplace_back(deg, b);
    }
    offset_.push_back(gens_.size());
    monos_.resize(n_ + 1);
    Mono cur;
    enumerate(cur, 0, 0);
    const std::size_t d = g0_->dim();
    for (int m = 0; m <= n_; ++m) {
      std::sort(monos_[m].begin(), monos_[m].end());
      std::map<Mono, std::size_t> idx;
      std::vector<Weight> w;
      for (std::size_t p = 0; p < monos_[m].size(); ++p) {
        idx.emplace(monos_[m][p], p);
        Weight mw = Weight::zero(ctx_);
        for (int g : monos_[m][p]) mw = mw + alg->slice(gens_[g].first).weights()[gens_[g].second];
        for (std::size_t v = 0; v < d; ++v) w.push_back(mw + g0_->weights()[v]);
      }
      index_.push_back(std::move(idx));
      weights_.push_back(std::move(w));
    }
  }

  std::string label(int m, std::size_t i) const override {
    const std::size_t d = g0_->dim();
    std::string s;
    for (int g : monos_.at(m).at(i / d))
      s += "e(" + std::to_string(gens_[g].first) + "," + std::to_string(gens_[g].second) + ")";
    return (s.empty() ? "1" : s) + "*" + g0_->labels()[i % d];
  }

  int mono_degree(const Mono& mo) const {
    int s = 0;
    for (int g : mo) s += gens_[g].first;
    return s;
  }
  const std::vector<Mono>& monos(int m) const { return monos_.at(m); }
  std::size_t mono_index(const Mono& mo) const { return index_.at(mono_degree(mo)).at(mo); }
  std::pair<int, std::size_t> generator(int g) const { return gens_[g]; }

 protected:
  SparseMatrix compute_action(int deg, std::size_t b, int m) const override {
    const std::size_t d = g0_->dim();
    std::vector<SparseVector> cols;
    for (const auto& mo : monos_[m])
      for (std::size_t v = 0; v < d; ++v) cols.push_back(act(deg, b, mo, v));
    return SparseMatrix(dim(m + deg), std::move(cols));
  }

 private:
  void enumerate(Mono& cur, int min_gen, int degree) {
    monos_[degree].push_back(cur);
    for (int g = min_gen; g < static_cast<int>(gens_.size()); ++g) {
      int nd = degree + gens_[g].first;
      if (nd > n_) break;
      cur.push_back(g);
      enumerate(cur, g, nd);
      cur.pop_back();
    }
  }

  // Straightened product e(deg,b) * (mono (x) v), as a vector in block
  // |mono| + deg. Caller holds the module lock.
  SparseVector act(int deg, std::size_t b, const Mono& mo, std::size_t v) const {
    const int src = mono_degree(mo);
    const int t = src + deg;
    const std::size_t d = g0_->dim();
    if (t < 0) return SparseVector(0);
    auto key = std::make_tuple(deg, b, mo, v);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    auto alg = algebra_for(ctx_);
    SparseAccumulator acc(dim(t));
    const int pos = deg >= 1 ? static_cast<int>(offset_[deg - 1] + b) : -1;
    if (mo.empty()) {
      if (deg >= 1) {
        acc.add(index_[t].at(Mono{pos}) * d + v, 1);
      } else if (deg == 0) {
        for (const auto& [u, c] : g0_->xi(b).column(v).entries()) acc.add(u, c);
      }
    } else if (deg >= 1 && pos <= mo.front()) {
      Mono out{pos};
      out.insert(out.end(), mo.begin(), mo.end());
      acc.add(index_[t].at(out) * d + v, 1);
    } else {
      // x y rest = y (x rest) + [x, y] rest
      const auto [dy, iy] = gens_[mo.front()];
      Mono rest(mo.begin() + 1, mo.end());
      SparseVector inner = act(deg, b, rest, v);
      const int inner_deg = src - dy + deg;
      for (const auto& [idx, c] : inner.entries()) {
        const Mono& m2 = monos_[inner_deg][idx / d];
        SparseVector outer = act(dy, iy, m2, idx % d);
        for (const auto& [j, x] : outer.entries()) acc.add(j, c * x);
      }
      if (deg + dy >= -1) {
        const auto& br = alg->structure(deg, b, dy, iy);
        for (const auto& [k, c] : br.entries()) {
          SparseVector part = act(deg + dy, k, rest, v);
          for (const auto& [j, x] : part.entries()) acc.add(j, c * x);
        }
      }
    }
    return memo_.emplace(key, acc.finish()).first->second;
  }

  std::vector<std::pair<int, std::size_t>> gens_;
  std::vector<std::size_t> offset_;
  std::vector<std::vector<Mono>> monos_;
  std::vector<std::map<Mono, std::size_t>> index_;
  mutable std::map<std::tuple<int, std::size_t, Mono, std::size_t>, SparseVector> memo_;
};

// Rank of a matrix whose columns are weight vectors, eliminating per weight.
std::size_t blocked_rank(const SparseMatrix& a, const std::vector<Weight>& col_weights) {
  std::map<Weight, EchelonBasis> eb;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (a.column(j).is_zero()) continue;
    auto it = eb.try_emplace(col_weights[j], a.rows()).first;
    it->second.insert(a.column(j));
  }
  std::size_t r = 0;
  for (const auto& [w, e] : eb) r += e.rank();
  return r;
}

std::string describe_pair(const VectorField& u, const VectorField& v) {
  return "u=" + format_field(u) + ", v=" + format_field(v);
}

}  // namespace

GradedModule build_standard(const Weight& lambda, int truncation) {
  require_antidominant(lambda);
  return GradedModule(std::make_shared<const StandardData>(lambda, truncation));
}

// ---------------------------------------------------------------- verification

AxiomReport verify_module_axiom(const GradedModule& mod, int dmax) {
  AxiomReport rep;
  const int n = mod.truncation();
  if (dmax > n) throw ArgumentError("degree bound exceeds the truncation");
  auto alg = algebra_for(mod.context());
  std::vector<std::pair<int, std::size_t>> elems;
  for (int deg = -1; deg <= dmax; ++deg)
    for (std::size_t b = 0; b < alg->dim(deg); ++b) elems.emplace_back(deg, b);
  auto fail = [&](const std::string& w) {
    if (rep.all_pass) rep.witness = w;
    rep.all_pass = false;
  };
  // Weight additivity of every matrix in range.
  for (const auto& [deg, b] : elems)
    for (int j = 0; j <= dmax; ++j) {
      if (j + deg > n || j + deg < 0) continue;
      const auto& a = mod.action(deg, b, j);
      const Weight& shift = alg->slice(deg).weights()[b];
      for (std::size_t col = 0; col < a.cols(); ++col)
        for (const auto& [row, c] : a.column(col).entries())
          if (mod.weights(j + deg)[row] != mod.weights(j)[col] + shift)
            fail("weight additivity fails for " + format_field(alg->element(deg, b)) + " on block " +
                 std::to_string(j));
    }
  for (std::size_t p = 0; p < elems.size(); ++p)
    for (std::size_t q = p; q < elems.size(); ++q) {
      const auto [du, bu] = elems[p];
      const auto [dv, bv] = elems[q];
      if (du + dv > n - dmax) continue;
      ++rep.pairs_checked;
      for (int j = 0; j <= dmax; ++j) {
        const int t = j + du + dv;
        if (t < 0 || j + du > n || j + dv > n) continue;
        SparseMatrix lhs(mod.dim(t), mod.dim(j));
        if (du + dv >= -1)
          for (const auto& [k, c] : alg->structure(du, bu, dv, bv).entries())
            lhs = lhs + mod.action(du + dv, k, j).scaled(c);
        SparseMatrix uv(mod.dim(t), mod.dim(j)), vu(mod.dim(t), mod.dim(j));
        if (j + dv >= 0) uv = mod.action(du, bu, j + dv) * mod.action(dv, bv, j);
        if (j + du >= 0) vu = mod.action(dv, bv, j + du) * mod.action(du, bu, j);
        if (!(lhs == uv - vu))
          fail("rho([u,v]) != [rho(u),rho(v)] on block " + std::to_string(j) + " for " +
               describe_pair(alg->element(du, bu), alg->element(dv, bv)));
      }
    }
  return rep;
}

ModuleMap canonical_map(const Weight& lambda, int truncation) {
  auto delta = build_standard(lambda, truncation);
  auto nabla = build_costandard(lambda, truncation);
  const auto& sd = static_cast<const StandardData&>(delta.data());
  const std::size_t d = delta.g0().dim();
  ModuleMap f{delta, nabla, 0, {}};
  for (int m = 0; m <= truncation; ++m) {
    std::vector<SparseVector> cols;
    for (const auto& mo : sd.monos(m))
      for (std::size_t v = 0; v < d; ++v) {
        if (mo.empty()) {
          cols.push_back(SparseVector::unit(nabla.dim(0), v));
          continue;
        }
        auto [dy, iy] = sd.generator(mo.front());
        StandardData::Mono rest(mo.begin() + 1, mo.end());
        const int rd = m - dy;
        const auto& prev = f.blocks[rd].column(sd.mono_index(rest) * d + v);
        cols.push_back(nabla.action(dy, iy, rd).apply(prev));
      }
    f.blocks.emplace_back(nabla.dim(m), std::move(cols));
  }
  return f;
}

AxiomReport check_module_map(const ModuleMap& f, int max_deg) {
  AxiomReport rep;
  auto alg = algebra_for(f.source.context());
  const int n = f.source.truncation();
  const int nt = f.target.truncation();
  for (int deg = -1; deg <= max_deg; ++deg)
    for (std::size_t b = 0; b < alg->dim(deg); ++b) {
      ++rep.pairs_checked;
      for (int m = 0; m <= n; ++m) {
        const int sm = m + deg;             // source block after acting
        const int tm = m + f.shift;         // target block of f on block m
        const int tt = m + deg + f.shift;   // target block after both
        if (sm > n || sm < 0 || tm < 0 || tm > nt || tt > nt || tt < 0) continue;
        auto lhs = f.blocks[sm] * f.source.action(deg, b, m);
        auto rhs = f.target.action(deg, b, tm) * f.blocks[m];
        if (!(lhs == rhs) && rep.all_pass) {
          rep.all_pass = false;
          rep.witness = "map does not commute with " + format_field(alg->element(deg, b)) + " on block " +
                        std::to_string(m);
        }
      }
    }
  return rep;
}

// ---------------------------------------------------------------- simple characters

namespace {

FormalCharacter compute_simple_character(const Weight& lambda, int truncation) {
  auto v = build_costandard(lambda, truncation);
  auto alg = algebra_for(lambda.context());
  FormalCharacter ch(lambda.context(), truncation);
  // image[m] keeps a spanning list of the image in degree m.
  std::vector<std::vector<SparseVector>> image(truncation + 1);
  std::vector<std::vector<Weight>> image_w(truncation + 1);
  for (std::size_t i = 0; i < v.dim(0); ++i) {
    image[0].push_back(SparseVector::unit(v.dim(0), i));
    image_w[0].push_back(v.weights(0)[i]);
    ch.add(0, v.weights(0)[i], 1);
  }
  for (int m = 1; m <= truncation; ++m) {
    std::map<Weight, std::int64_t> full;
    for (const auto& w : v.weights(m)) ++full[w];
    std::map<Weight, EchelonBasis> eb;
    for (int i = 1; i <= m; ++i) {
      const auto& sl = alg->slice(i);
      for (std::size_t b = 0; b < sl.dim(); ++b) {
        const auto& a = v.action(i, b, m - i);
        for (std::size_t u = 0; u < image[m - i].size(); ++u) {
          Weight w = image_w[m - i][u] + sl.weights()[b];
          auto it = eb.try_emplace(w, v.dim(m)).first;
          if (static_cast<std::int64_t>(it->second.rank()) == full[w]) continue;
          auto y = a.apply(image[m - i][u]);
          if (y.is_zero()) continue;
          if (it->second.insert(y)) {
            image[m].push_back(std::move(y));
            image_w[m].push_back(w);
          }
        }
      }
    }
    for (const auto& [w, e] : eb)
      if (e.rank() > 0) ch.add(m, w, static_cast<std::int64_t>(e.rank()));
  }
  return ch;
}

}  // namespace

FormalCharacter simple_character(const Weight& lambda, int truncation) {
  require_antidominant(lambda);
  static std::mutex mu;
  static std::map<Weight, FormalCharacter> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find(lambda);
    if (it != cache.end() && it->second.truncation() >= truncation) return it->second.truncated(truncation);
  }
  auto ch = compute_simple_character(lambda, truncation);
  std::lock_guard lock(mu);
  auto it = cache.find(lambda);
  if (it == cache.end()) {
    cache.emplace(lambda, ch);
  } else if (it->second.truncation() < truncation) {
    it->second = ch;
  }
  return ch;
}

FormalCharacter canonical_image_character(const Weight& lambda, int truncation) {
  auto f = canonical_map(lambda, truncation);
  FormalCharacter ch(lambda.context(), truncation);
  for (int m = 0; m <= truncation; ++m) {
    std::map<Weight, EchelonBasis> eb;
    const auto& blk = f.blocks[m];
    for (std::size_t j = 0; j < blk.cols(); ++j) {
      if (blk.column(j).is_zero()) continue;
      eb.try_emplace(f.source.weights(m)[j], blk.rows()).first->second.insert(blk.column(j));
    }
    for (const auto& [w, e] : eb)
      if (e.rank() > 0) ch.add(m, w, static_cast<std::int64_t>(e.rank()));
  }
  return ch;
}

std::int64_t hom_from_standard(const Weight& lambda, const GradedModule& m) {
  WeightMultiset chi;
  for (const auto& w : m.weights(0)) ++chi[w];
  for (const auto& [w, k] : decompose_g0_character(m.context(), chi))
    if (w == lambda) return k;
  return 0;
}

std::map<std::pair<Weight, int>, std::int64_t> composition_multiplicities(const GradedModule& m, int truncation) {
  if (truncation > m.truncation()) throw ArgumentError("peel truncation exceeds the module truncation");
  const auto ctx = m.context();
  auto left = m.character().truncated(truncation);
  std::map<std::pair<Weight, int>, std::int64_t> out;
  for (int d = 0; d <= truncation; ++d) {
    while (!left.slice(d).empty()) {
      const Weight* best = nullptr;
      for (const auto& [w, k] : left.slice(d)) {
        if (k < 0)
          throw ConsistencyError("negative multiplicity " + std::to_string(k) + " at weight " + w.to_string() +
                                 " in degree " + std::to_string(d));
        if (!best || w.height() < best->height()) best = &w;
      }
      Weight low = *best;
      if (!is_antidominant(low))
        throw ConsistencyError("extreme weight " + low.to_string() + " in degree " + std::to_string(d) +
                               " is not antidominant");
      const std::int64_t k = left.at(d, low);
      out[{low, d}] += k;
      auto sc = simple_character(low, truncation - d);
      FormalCharacter lifted(ctx, truncation);
      for (int e = 0; e + d <= truncation; ++e)
        for (const auto& [w, c] : sc.slice(e)) lifted.add(e + d, w, c * k);
      left = left - lifted;
      for (int e = d; e <= truncation; ++e)
        for (const auto& [w, c] : left.slice(e))
          if (c < 0)
            throw ConsistencyError("peeling L" + low.to_string() + "[" + std::to_string(d) +
                                   "] leaves a negative multiplicity at " + w.to_string() + " in degree " +
                                   std::to_string(e));
    }
  }
  return out;
}

// ---------------------------------------------------------------- complex

namespace {

ModuleMap dk_between(const GradedModule& src, const GradedModule& tgt, int k) {
  const auto ctx = src.context();
  const int n = ctx.n;
  const int trunc = src.truncation();
  auto sub_k = exterior_module_subsets(n, k);
  auto sub_k1 = exterior_module_subsets(n, k + 1);
  std::map<std::vector<int>, std::size_t> idx_k1;
  for (std::size_t i = 0; i < sub_k1.size(); ++i) idx_k1[sub_k1[i]] = i;
  const std::size_t dk = sub_k.size(), dk1 = sub_k1.size();
  ModuleMap f{src, tgt, -1, {}};
  for (int m = 0; m <= trunc; ++m) {
    if (m == 0) {
      f.blocks.emplace_back(0, src.dim(0));
      continue;
    }
    auto monos = MultiIndex::of_degree(n, m);
    auto lower = MultiIndex::of_degree(n, m - 1);
    std::map<MultiIndex, std::size_t> lidx;
    for (std::size_t p = 0; p < lower.size(); ++p) lidx[lower[p]] = p;
    std::vector<SparseVector> cols;
    for (const auto& beta : monos)
      for (std::size_t s = 0; s < dk; ++s) {
        SparseAccumulator acc(tgt.dim(m - 1));
        const auto& set = sub_k[s];
        for (int i = 0; i < n; ++i) {
          if (beta[i] == 0 || std::count(set.begin(), set.end(), i)) continue;
          // w ^ x_i: move x_i left past the larger indices.
          int greater = 0;
          for (int x : set) greater += x > i;
          auto t = set;
          t.push_back(i);
          std::sort(t.begin(), t.end());
          Rational c = beta[i] * (greater % 2 ? -1 : 1);
          acc.add(lidx.at(*beta.minus_unit(i)) * dk1 + idx_k1.at(t), c);
        }
        cols.push_back(acc.finish());
      }
    f.blocks.emplace_back(tgt.dim(m - 1), std::move(cols));
  }
  return f;
}

}  // namespace

ModuleMap build_dk(AlgebraContext ctx, int k, int truncation) {
  if (ctx.family == Family::H) throw ArgumentError("the complex is defined for W(n) and S(n)");
  if (k < 0 || k > ctx.n - 1) throw ArgumentError("d_k needs 0 <= k <= n-1");
  auto src = build_prolongation(exterior_power_module(ctx, k), truncation, ModuleKind::ComplexTerm);
  auto tgt = build_prolongation(exterior_power_module(ctx, k + 1), truncation, ModuleKind::ComplexTerm);
  return dk_between(src, tgt, k);
}

ComplexReport verify_complex(AlgebraContext ctx, int truncation) {
  if (ctx.family == Family::H) throw ArgumentError("the complex is defined for W(n) and S(n)");
  ComplexReport rep;
  const int n = ctx.n;
  std::vector<GradedModule> terms;
  auto ew = exceptional_weights(ctx);
  for (int k = 0; k <= n; ++k) {
    auto e = exterior_power_module(ctx, k);
    Weight omega = k < static_cast<int>(ew.size()) ? ew[k] : Weight::zero(ctx);
    auto parts = decompose_g0_character(ctx, module_character(*e));
    if (e->lowest_weight() != omega || module_character(*e) != g0_character(omega) || parts.size() != 1 ||
        parts[0].second != 1) {
      rep.identification_ok = false;
      rep.failures.push_back("Lambda^" + std::to_string(k) + " is not L0" + omega.to_string());
    }
    terms.push_back(build_prolongation(e, truncation, ModuleKind::ComplexTerm));
  }
  std::vector<ModuleMap> d;
  for (int k = 0; k < n; ++k) {
    d.push_back(dk_between(terms[k], terms[k + 1], k));
    auto eq = check_module_map(d.back(), 1);
    if (!eq.all_pass) {
      rep.maps_equivariant = false;
      rep.failures.push_back("d_" + std::to_string(k) + ": " + eq.witness);
    }
  }
  for (int k = 0; k + 1 < n; ++k)
    for (int m = 2; m <= truncation; ++m)
      if (!(d[k + 1].blocks[m - 1] * d[k].blocks[m]).is_zero()) {
        rep.dd_zero = false;
        rep.failures.push_back("d_" + std::to_string(k + 1) + " d_" + std::to_string(k) + " != 0 in degree " +
                               std::to_string(m));
      }
  for (int k = 0; k <= n; ++k) {
    const int top = k == 0 ? truncation : truncation - 1;
    for (int m = 0; m <= top; ++m) {
      ComplexEntry e;
      e.position = k;
      e.degree = m;
      e.dim = terms[k].dim(m);
      if (k < n) e.rank_out = blocked_rank(d[k].blocks[m], terms[k].weights(m));
      if (k > 0) e.rank_in = blocked_rank(d[k - 1].blocks[m + 1], terms[k - 1].weights(m + 1));
      e.exact = e.rank_in + e.rank_out == e.dim;
      if (!e.exact) {
        std::string what = k == 0 ? "injectivity" : k == n ? "surjectivity" : "exactness";
        rep.failures.push_back(what + " fails at V(omega_" + std::to_string(k) + ") in degree " +
                               std::to_string(m) + ": dim " + std::to_string(e.dim) + ", rank in " +
                               std::to_string(e.rank_in) + ", rank out " + std::to_string(e.rank_out));
        (k == 0 ? rep.start_injective : k == n ? rep.end_surjective : rep.exact_internal) = false;
      }
      rep.entries.push_back(e);
    }
  }
  return rep;
}

}  // namespace cartan
