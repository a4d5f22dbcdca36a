#include "cartan/g0_module.hpp"

#include <algorithm>
#include <deque>
#include <mutex>

namespace cartan {

G0Module::G0Module(AlgebraContext ctx, Weight lowest, std::vector<std::string> labels, std::vector<Weight> weights,
                   std::vector<SparseMatrix> xi)
    : ctx_(ctx), lowest_(std::move(lowest)), labels_(std::move(labels)), weights_(std::move(weights)),
      xi_(std::move(xi)) {
  if (weights_.size() != labels_.size()) throw DimensionError("G0Module: label and weight counts differ");
  for (const auto& m : xi_)
    if (m.rows() != dim() || m.cols() != dim()) throw DimensionError("G0Module: action matrix has wrong shape");
}

SparseMatrix G0Module::act(const VectorField& x) const {
  const auto& g0 = algebra_for(ctx_)->slice(0);
  auto c = g0.coordinates(x);
  if (!c) throw ArgumentError("element " + format_field(x) + " is not in " + ctx_.name() + "_[0]");
  SparseMatrix out(dim(), dim());
  for (const auto& [b, coef] : c->entries()) out = out + xi_[b].scaled(coef);
  return out;
}

// ---------------------------------------------------------------- tensor model

namespace {

// Matrix of a linear vector field on span{x_1..x_m}: column j is X(x_j).
SparseMatrix natural_matrix(const VectorField& x) {
  const int n = x.context().n;
  std::vector<SparseAccumulator> cols(n, SparseAccumulator(n));
  for (const auto& [t, c] : x.terms()) {
    int a = -1;
    for (int i = 0; i < n; ++i)
      if (t.alpha[i] == 1) a = i;
    if (t.alpha.degree() != 1 || a < 0) throw ArgumentError("natural action needs a linear field");
    cols[t.dir].add(a, c);
  }
  std::vector<SparseVector> out;
  for (auto& c : cols) out.push_back(c.finish());
  return SparseMatrix(n, std::move(out));
}

Rational trace(const SparseMatrix& m) {
  Rational t = 0;
  for (std::size_t j = 0; j < m.cols(); ++j) t += m.at(j, j);
  return t;
}

void subsets(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

// Action of a matrix on Lambda^k by derivation, with sign-normalized wedges.
SparseMatrix wedge_action(const SparseMatrix& nat, int n, const std::vector<std::vector<int>>& basis) {
  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = i;
  std::vector<SparseVector> cols;
  for (const auto& s : basis) {
    SparseAccumulator acc(basis.size());
    for (std::size_t p = 0; p < s.size(); ++p)
      for (const auto& [a, c] : nat.column(s[p]).entries()) {
        auto t = s;
        t[p] = static_cast<int>(a);
        if (std::count(t.begin(), t.end(), t[p]) > 1) continue;
        // Sort with sign.
        int sign = 1;
        for (std::size_t i = 0; i < t.size(); ++i)
          for (std::size_t j = i + 1; j < t.size(); ++j)
            if (t[i] > t[j]) sign = -sign;
        std::sort(t.begin(), t.end());
        acc.add(index.at(t), c * sign);
      }
    cols.push_back(acc.finish());
  }
  (void)n;
  return SparseMatrix(basis.size(), std::move(cols));
}

struct Factor {
  std::size_t dim;
  std::size_t lowest;
  std::vector<SparseMatrix> mats;  // one per g_[0] basis element
};

Factor wedge_factor(AlgebraContext ctx, int k, const std::vector<SparseMatrix>& nat) {
  const int m = ctx.n;
  auto basis = wedge_basis(m, k);
  std::vector<int> low;
  if (ctx.family == Family::H) {
    for (int i = 0; i < k; ++i) low.push_back(ctx.r() + i);
  } else {
    for (int i = m - k; i < m; ++i) low.push_back(i);
  }
  Factor f{basis.size(), wedge_index(m, low), {}};
  for (const auto& a : nat) f.mats.push_back(wedge_action(a, m, basis));
  return f;
}

class TensorSpace {
 public:
  explicit TensorSpace(std::vector<Factor> factors) : factors_(std::move(factors)) {
    dim_ = 1;
    for (const auto& f : factors_) dim_ *= f.dim;
  }
  std::size_t dim() const { return dim_; }

  std::size_t lowest() const {
    std::size_t idx = 0;
    for (const auto& f : factors_) idx = idx * f.dim + f.lowest;
    return idx;
  }

  SparseVector act(std::size_t b, const SparseVector& v) const {
    SparseAccumulator acc(dim_);
    std::vector<std::size_t> digits(factors_.size());
    for (const auto& [idx, c] : v.entries()) {
      std::size_t rest = idx;
      for (std::size_t f = factors_.size(); f-- > 0;) {
        digits[f] = rest % factors_[f].dim;
        rest /= factors_[f].dim;
      }
      std::size_t stride = 1;
      for (std::size_t f = factors_.size(); f-- > 0;) {
        for (const auto& [a, x] : factors_[f].mats[b].column(digits[f]).entries())
          acc.add(idx + (a - digits[f]) * stride, c * x);
        stride *= factors_[f].dim;
      }
    }
    return acc.finish();
  }

 private:
  std::vector<Factor> factors_;
  std::size_t dim_;
};

std::shared_ptr<const G0Module> generate(const Weight& lambda, const TensorSpace& space, const Rational& twist,
                                         const std::vector<Rational>& twist_traces) {
  const auto ctx = lambda.context();
  const auto& g0 = algebra_for(ctx)->slice(0);
  auto parts = triangular_parts(ctx);
  const std::size_t n_minus = parts.n_minus.size();
  const std::size_t h_count = g0.dim() - n_minus - parts.n_plus.size();
  const std::size_t plus_start = n_minus + h_count;

  struct Block {
    EchelonBasis eb;
    std::vector<std::size_t> slot_to_basis;
  };
  std::map<Weight, Block> blocks;
  std::vector<SparseVector> basis;
  std::vector<Weight> weights;
  std::deque<std::size_t> queue;

  auto offer = [&](SparseVector v, const Weight& w) {
    auto it = blocks.find(w);
    if (it == blocks.end()) it = blocks.emplace(w, Block{EchelonBasis(space.dim(), true), {}}).first;
    bool fresh = it->second.eb.insert(v);
    it->second.slot_to_basis.push_back(fresh ? basis.size() : SIZE_MAX);
    if (!fresh) return;
    queue.push_back(basis.size());
    basis.push_back(std::move(v));
    weights.push_back(w);
  };

  offer(SparseVector::unit(space.dim(), space.lowest()), lambda);
  while (!queue.empty()) {
    std::size_t j = queue.front();
    queue.pop_front();
    for (std::size_t b = plus_start; b < g0.dim(); ++b) {
      auto y = space.act(b, basis[j]);
      if (!y.is_zero()) offer(std::move(y), weights[j] + g0.weights()[b]);
    }
  }

  const std::size_t d = basis.size();
  std::vector<SparseMatrix> xi;
  for (std::size_t b = 0; b < g0.dim(); ++b) {
    std::vector<SparseVector> cols;
    for (std::size_t j = 0; j < d; ++j) {
      SparseAccumulator acc(d);
      auto y = space.act(b, basis[j]);
      if (!y.is_zero()) {
        Weight w = weights[j] + g0.weights()[b];
        auto it = blocks.find(w);
        auto c = it == blocks.end() ? std::nullopt : it->second.eb.solve(y);
        if (!c) throw ConsistencyError("L0 " + lambda.to_string() + " is not stable under g_[0]");
        for (const auto& [slot, x] : c->entries()) {
          std::size_t target = it->second.slot_to_basis[slot];
          if (target == SIZE_MAX) throw ConsistencyError("L0 coordinate on a dependent input");
          acc.add(target, x);
        }
      }
      if (twist != 0 && twist_traces[b] != 0) acc.add(j, twist * twist_traces[b]);
      cols.push_back(acc.finish());
    }
    xi.emplace_back(d, std::move(cols));
  }
  std::vector<std::string> labels;
  for (std::size_t j = 0; j < d; ++j) labels.push_back("v" + std::to_string(j));
  return std::make_shared<const G0Module>(ctx, lambda, std::move(labels), std::move(weights), std::move(xi));
}

std::shared_ptr<const G0Module> construct_L0(const Weight& lambda) {
  const auto ctx = lambda.context();
  const auto& g0 = algebra_for(ctx)->slice(0);
  std::vector<SparseMatrix> nat;
  for (const auto& x : g0.basis()) nat.push_back(natural_matrix(x));
  const auto& c = lambda.coords();
  std::vector<Factor> factors;
  Rational twist = 0;
  std::vector<Rational> traces(g0.dim(), 0);
  if (ctx.family == Family::H) {
    const int r = ctx.r();
    for (int k = 1; k <= r; ++k) {
      auto mult = k == r ? -c[r - 1] : c[k] - c[k - 1];
      for (std::int64_t i = 0; i < mult; ++i) factors.push_back(wedge_factor(ctx, k, nat));
    }
  } else {
    const int n = ctx.n;
    // lambda = lambda_1 (1,...,1) + sum_k (lambda_{n-k+1} - lambda_{n-k}) omega_k.
    for (int k = 1; k < n; ++k) {
      auto mult = c[n - k] - c[n - k - 1];
      for (std::int64_t i = 0; i < mult; ++i) factors.push_back(wedge_factor(ctx, k, nat));
    }
    if (ctx.family == Family::W) {
      twist = c[0];
      for (std::size_t b = 0; b < g0.dim(); ++b) traces[b] = trace(nat[b]);
    }
  }
  return generate(lambda, TensorSpace(std::move(factors)), twist, traces);
}

}  // namespace

std::vector<std::vector<int>> wedge_basis(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  if (k >= 0 && k <= n) subsets(n, k, 0, cur, out);
  return out;
}

std::size_t wedge_index(int n, const std::vector<int>& subset) {
  auto basis = wedge_basis(n, static_cast<int>(subset.size()));
  auto it = std::find(basis.begin(), basis.end(), subset);
  if (it == basis.end()) throw ArgumentError("not an increasing subset");
  return static_cast<std::size_t>(it - basis.begin());
}

std::vector<std::vector<int>> exterior_module_subsets(int n, int k) {
  auto lex = wedge_basis(n, k);
  if (lex.empty()) return lex;
  std::vector<std::vector<int>> out{lex.back()};
  out.insert(out.end(), lex.begin(), lex.end() - 1);
  return out;
}

std::shared_ptr<const G0Module> build_L0(const Weight& lambda) {
  require_antidominant(lambda);
  static std::mutex mu;
  static std::map<Weight, std::shared_ptr<const G0Module>> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find(lambda);
    if (it != cache.end()) return it->second;
  }
  auto built = construct_L0(lambda);
  std::lock_guard lock(mu);
  return cache.try_emplace(lambda, std::move(built)).first->second;
}

std::shared_ptr<const G0Module> exterior_power_module(AlgebraContext ctx, int k) {
  if (ctx.family == Family::H) throw ArgumentError("exterior powers are provided for W and S only");
  if (k < 0 || k > ctx.n) throw ArgumentError("exterior degree k must lie in 0.." + std::to_string(ctx.n));
  const auto& g0 = algebra_for(ctx)->slice(0);
  auto basis = wedge_basis(ctx.n, k);
  std::vector<SparseMatrix> xi;
  for (const auto& x : g0.basis()) xi.push_back(wedge_action(natural_matrix(x), ctx.n, basis));
  std::vector<std::string> labels;
  std::vector<Weight> weights;
  for (const auto& s : basis) {
    std::string l;
    std::vector<std::int64_t> gl(ctx.n, 0);
    for (int i : s) {
      l += (l.empty() ? "x" : "^x") + std::to_string(i + 1);
      gl[i] += 1;
    }
    labels.push_back(l.empty() ? "1" : l);
    weights.push_back(Weight::from_gl(ctx, gl));
  }
  // The lowest wedge x_{n-k+1}^...^x_n is the last basis element; move it to
  // position 0 so the lowest-weight convention holds.
  const std::size_t d = basis.size();
  std::vector<std::size_t> perm(d);  // new position of old index
  for (std::size_t i = 0; i < d; ++i) perm[i] = i == d - 1 ? 0 : i + 1;
  auto permute = [&](const SparseMatrix& m) {
    std::vector<SparseVector> cols(d, SparseVector(d));
    for (std::size_t j = 0; j < d; ++j) {
      SparseAccumulator acc(d);
      for (const auto& [i, c] : m.column(j).entries()) acc.add(perm[i], c);
      cols[perm[j]] = acc.finish();
    }
    return SparseMatrix(d, std::move(cols));
  };
  std::vector<SparseMatrix> pxi;
  for (const auto& m : xi) pxi.push_back(permute(m));
  std::vector<std::string> plabels(d);
  std::vector<Weight> pweights(d);
  for (std::size_t i = 0; i < d; ++i) {
    plabels[perm[i]] = labels[i];
    pweights[perm[i]] = weights[i];
  }
  Weight lowest = pweights[0];
  return std::make_shared<const G0Module>(ctx, lowest, std::move(plabels), std::move(pweights), std::move(pxi));
}

WeightMultiset module_character(const G0Module& m) {
  WeightMultiset out;
  for (const auto& w : m.weights()) ++out[w];
  return out;
}

WeightMultiset g0_character(const Weight& lambda) { return module_character(*build_L0(lambda)); }

std::vector<std::pair<Weight, std::int64_t>> decompose_g0_character(AlgebraContext ctx, WeightMultiset chi) {
  std::vector<std::pair<Weight, std::int64_t>> out;
  while (true) {
    for (auto it = chi.begin(); it != chi.end();) {
      if (it->second < 0) throw ConsistencyError("negative multiplicity at weight " + it->first.to_string());
      it = it->second == 0 ? chi.erase(it) : std::next(it);
    }
    if (chi.empty()) break;
    const Weight* best = nullptr;
    for (const auto& [w, m] : chi)
      if (!best || w.height() < best->height()) best = &w;
    Weight low = *best;
    if (low.context() != ctx) throw ArgumentError("character from a different algebra");
    if (!is_antidominant(low))
      throw ConsistencyError("extreme weight " + low.to_string() + " of a g_[0]-character is not antidominant");
    std::int64_t mult = chi.at(low);
    for (const auto& [w, m] : g0_character(low)) chi[w] -= mult * m;
    out.emplace_back(low, mult);
  }
  return out;
}

G0CheckReport check_g0_module(const G0Module& m) {
  G0CheckReport rep;
  const auto ctx = m.context();
  auto alg = algebra_for(ctx);
  const auto& g0 = alg->slice(0);
  auto fail = [&](bool G0CheckReport::*flag, const std::string& w) {
    if (rep.all_pass()) rep.witness = w;
    rep.*flag = false;
  };
  for (std::size_t a = 0; a < g0.dim(); ++a)
    for (std::size_t b = a + 1; b < g0.dim(); ++b) {
      ++rep.pairs_checked;
      SparseMatrix lhs(m.dim(), m.dim());
      for (const auto& [k, c] : alg->structure(0, a, 0, b).entries()) lhs = lhs + m.xi(k).scaled(c);
      auto rhs = m.xi(a) * m.xi(b) - m.xi(b) * m.xi(a);
      if (!(lhs == rhs)) fail(&G0CheckReport::brackets_ok, "xi bracket fails for " + format_field(g0[a]) + ", " +
                                                               format_field(g0[b]));
    }
  auto parts = triangular_parts(ctx);
  for (std::size_t b = 0; b < parts.n_minus.size(); ++b)
    if (!m.xi(b).column(0).is_zero()) fail(&G0CheckReport::lowest_ok, "n^- does not kill basis vector 0");
  if (m.weights().empty() || m.weights()[0] != m.lowest_weight())
    fail(&G0CheckReport::lowest_ok, "basis vector 0 does not carry the lowest weight");
  // Cartan elements act diagonally by the weights.
  const std::size_t h_start = parts.n_minus.size();
  const std::size_t h_count = g0.dim() - parts.n_minus.size() - parts.n_plus.size();
  for (std::size_t h = 0; h < h_count; ++h) {
    const auto& x = m.xi(h_start + h);
    for (std::size_t j = 0; j < m.dim(); ++j) {
      const auto& w = m.weights()[j];
      Rational expect = ctx.family == Family::S ? Rational(w[h] - w[ctx.n - 1]) : Rational(w[h]);
      SparseVector col = x.column(j);
      if (!(col == SparseVector::unit(m.dim(), j).scaled(expect)))
        fail(&G0CheckReport::weights_ok, "Cartan element " + std::to_string(h) + " is not diagonal with weight " +
                                             w.to_string() + " on basis vector " + std::to_string(j));
    }
  }
  if (Integer(static_cast<unsigned long>(m.dim())) != weyl_dim(m.lowest_weight()))
    fail(&G0CheckReport::dim_ok, "dimension " + std::to_string(m.dim()) + " differs from the Weyl dimension " +
                                     weyl_dim(m.lowest_weight()).get_str());
  return rep;
}

}  // namespace cartan
