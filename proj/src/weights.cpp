#include "cartan/weights.hpp"

#include <algorithm>
#include <sstream>

namespace cartan {

std::string to_string(Family f) {
  switch (f) {
    case Family::W: return "W";
    case Family::S: return "S";
    case Family::H: return "H";
  }
  return "?";
}

Family parse_family(const std::string& s) {
  if (s == "W" || s == "w") return Family::W;
  if (s == "S" || s == "s") return Family::S;
  if (s == "H" || s == "h") return Family::H;
  throw ArgumentError("unknown algebra family '" + s + "' (expected W, S or H)");
}

AlgebraContext::AlgebraContext(Family f, int n_) : family(f), n(n_) {
  if (n < 2) throw ArgumentError("n must be at least 2");
  if (f == Family::H && n % 2 != 0) throw ArgumentError("H(n) requires n even");
}

std::string AlgebraContext::name() const {
  return to_string(family) + "(" + std::to_string(n) + ")";
}

// ---------------------------------------------------------------- Weight

Weight::Weight(AlgebraContext ctx, std::vector<std::int64_t> coords)
    : ctx_(ctx), coords_(std::move(coords)) {
  if (coords_.size() != static_cast<std::size_t>(ctx_.weight_rank()))
    throw DimensionError("weight has " + std::to_string(coords_.size()) + " coordinates, expected " +
                         std::to_string(ctx_.weight_rank()));
  if (ctx_.family == Family::S) {
    std::int64_t last = coords_.back();
    for (auto& c : coords_) c -= last;
  }
}

Weight Weight::zero(AlgebraContext ctx) {
  return Weight(ctx, std::vector<std::int64_t>(ctx.weight_rank(), 0));
}

Weight Weight::from_gl(AlgebraContext ctx, const std::vector<std::int64_t>& gl) {
  if (gl.size() != static_cast<std::size_t>(ctx.n)) throw DimensionError("gl weight length mismatch");
  if (ctx.family != Family::H) return Weight(ctx, gl);
  std::vector<std::int64_t> h(ctx.r());
  for (int i = 0; i < ctx.r(); ++i) h[i] = gl[i] - gl[i + ctx.r()];
  return Weight(ctx, std::move(h));
}

Weight Weight::unit(AlgebraContext ctx, int i) {
  std::vector<std::int64_t> c(ctx.weight_rank(), 0);
  c.at(i) = 1;
  return Weight(ctx, std::move(c));
}

Weight Weight::operator+(const Weight& o) const {
  if (ctx_ != o.ctx_) throw ArgumentError("weight context mismatch");
  auto c = coords_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
  return Weight(ctx_, std::move(c));
}

Weight Weight::operator-(const Weight& o) const { return *this + (-o); }

Weight Weight::operator-() const { return scaled(-1); }

Weight Weight::scaled(std::int64_t k) const {
  auto c = coords_;
  for (auto& x : c) x *= k;
  return Weight(ctx_, std::move(c));
}

std::int64_t Weight::height() const {
  std::int64_t h = 0;
  const auto m = static_cast<std::int64_t>(coords_.size());
  for (std::int64_t i = 0; i < m; ++i) {
    std::int64_t two_rho = ctx_.family == Family::H ? 2 * (m - i) : (m - 1 - 2 * i);
    h += two_rho * coords_[i];
  }
  return h;
}

std::string Weight::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? "," : "") << coords_[i];
  os << ')';
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Weight& w) { return os << w.to_string(); }

Weight parse_weight(AlgebraContext ctx, const std::string& text) {
  std::vector<std::int64_t> coords;
  std::string s = text;
  if (!s.empty() && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw ArgumentError("bad weight coordinate '" + item + "'");
    }
    while (used < item.size() && item[used] == ' ') ++used;
    if (used != item.size()) throw ArgumentError("bad weight coordinate '" + item + "'");
    coords.push_back(v);
  }
  if (ctx.family == Family::S && coords.size() + 1 == static_cast<std::size_t>(ctx.n))
    coords.push_back(0);
  if (coords.size() != static_cast<std::size_t>(ctx.weight_rank()))
    throw ArgumentError("weight '" + text + "' has " + std::to_string(coords.size()) +
                        " coordinates; " + ctx.name() + " expects " +
                        std::to_string(ctx.weight_rank()));
  return Weight(ctx, std::move(coords));
}

std::string antidominance_violation(const Weight& w) {
  const auto& c = w.coords();
  for (std::size_t i = 0; i + 1 < c.size(); ++i)
    if (c[i] > c[i + 1])
      return "lambda_" + std::to_string(i + 1) + " <= lambda_" + std::to_string(i + 2) + " fails (" +
             std::to_string(c[i]) + " > " + std::to_string(c[i + 1]) + ")";
  if (w.context().family == Family::H && c.back() > 0)
    return "lambda_" + std::to_string(c.size()) + " <= 0 fails (" + std::to_string(c.back()) + " > 0)";
  return {};
}

bool is_antidominant(const Weight& w) { return antidominance_violation(w).empty(); }

void require_antidominant(const Weight& w) {
  auto v = antidominance_violation(w);
  if (!v.empty()) throw ArgumentError("weight " + w.to_string() + " is not antidominant: " + v);
}

std::vector<Weight> exceptional_weights(AlgebraContext ctx) {
  std::vector<Weight> out{Weight::zero(ctx)};
  const int n = ctx.n;
  const int top = ctx.family == Family::W ? n : ctx.family == Family::S ? n - 1 : ctx.r();
  for (int k = 1; k <= top; ++k) {
    std::vector<std::int64_t> c(ctx.weight_rank(), 0);
    if (ctx.family == Family::H) {
      for (int i = 0; i < k; ++i) c[i] = -1;
    } else {
      for (int i = n - k; i < n; ++i) c[i] = 1;
    }
    out.emplace_back(ctx, std::move(c));
  }
  return out;
}

Weight w0_apply(const Weight& w) {
  auto c = w.coords();
  if (w.context().family == Family::H) {
    for (auto& x : c) x = -x;
  } else {
    std::reverse(c.begin(), c.end());
  }
  return Weight(w.context(), std::move(c));
}

Weight semi_infinite_weight(AlgebraContext ctx) {
  if (ctx.family == Family::W) return Weight(ctx, std::vector<std::int64_t>(ctx.n, 1));
  return Weight::zero(ctx);
}

Integer weyl_dim(const Weight& w) {
  require_antidominant(w);
  const auto& c = w.coords();
  const auto m = static_cast<std::int64_t>(c.size());
  Rational d = 1;
  if (w.context().family == Family::H) {
    // Highest weight -w with rho = (r, r-1, ..., 1) for C_r.
    std::vector<std::int64_t> l(m), rho(m);
    for (std::int64_t i = 0; i < m; ++i) {
      rho[i] = m - i;
      l[i] = -c[i] + rho[i];
    }
    for (std::int64_t i = 0; i < m; ++i) {
      d *= Rational(l[i], rho[i]);
      for (std::int64_t j = i + 1; j < m; ++j)
        d *= Rational((l[i] - l[j]) * (l[i] + l[j]), (rho[i] - rho[j]) * (rho[i] + rho[j]));
    }
  } else {
    // Highest weight is the reversal of the lowest weight.
    std::vector<std::int64_t> hw(c.rbegin(), c.rend());
    for (std::int64_t i = 0; i < m; ++i)
      for (std::int64_t j = i + 1; j < m; ++j) d *= Rational(hw[i] - hw[j] + j - i, j - i);
  }
  d.canonicalize();
  if (d.get_den() != 1) throw ConsistencyError("Weyl dimension is not an integer");
  return d.get_num();
}

std::vector<Weight> antidominant_weights_in_box(AlgebraContext ctx, int bound) {
  std::vector<Weight> out;
  const int m = ctx.weight_rank();
  const int free = ctx.family == Family::S ? m - 1 : m;
  std::vector<std::int64_t> cur(m, 0);
  auto rec = [&](auto&& self, int pos, std::int64_t lo) -> void {
    if (pos == free) {
      Weight w(ctx, cur);
      if (is_antidominant(w)) out.push_back(w);
      return;
    }
    for (std::int64_t v = lo; v <= bound; ++v) {
      cur[pos] = v;
      self(self, pos + 1, v);
    }
  };
  rec(rec, 0, -bound);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace cartan
