#include "cartan/character.hpp"

namespace cartan {

FormalCharacter::FormalCharacter(AlgebraContext ctx, int truncation) : ctx_(ctx), n_(truncation) {
  if (truncation < 0) throw ArgumentError("truncation must be nonnegative");
  slices_.resize(truncation + 1);
}

FormalCharacter FormalCharacter::from_g0(AlgebraContext ctx, int truncation, const WeightMultiset& chi) {
  FormalCharacter c(ctx, truncation);
  for (const auto& [w, m] : chi) c.add(0, w, m);
  return c;
}

FormalCharacter FormalCharacter::monomial(AlgebraContext ctx, int truncation, int degree, const Weight& w,
                                          std::int64_t mult) {
  FormalCharacter c(ctx, truncation);
  if (degree >= 0 && degree <= truncation) c.add(degree, w, mult);
  return c;
}

std::int64_t FormalCharacter::at(int degree, const Weight& w) const {
  if (degree < 0 || degree > n_) return 0;
  auto it = slices_[degree].find(w);
  return it == slices_[degree].end() ? 0 : it->second;
}

std::int64_t FormalCharacter::total(int degree) const {
  std::int64_t t = 0;
  for (const auto& [w, m] : slices_.at(degree)) t += m;
  return t;
}

bool FormalCharacter::is_zero() const {
  for (const auto& s : slices_)
    if (!s.empty()) return false;
  return true;
}

bool FormalCharacter::is_nonnegative() const {
  for (const auto& s : slices_)
    for (const auto& [w, m] : s)
      if (m < 0) return false;
  return true;
}

void FormalCharacter::add(int degree, const Weight& w, std::int64_t mult) {
  if (degree < 0 || degree > n_) throw ArgumentError("degree outside the truncation");
  if (w.context() != ctx_) throw ArgumentError("weight from a different algebra");
  if (mult == 0) return;
  auto& s = slices_[degree];
  auto [it, fresh] = s.try_emplace(w, mult);
  if (!fresh) {
    it->second += mult;
    if (it->second == 0) s.erase(it);
  }
}

void FormalCharacter::require_compatible(const FormalCharacter& o) const {
  if (ctx_ != o.ctx_) throw ArgumentError("characters of different algebras");
  if (n_ != o.n_) throw ArgumentError("characters with different truncations");
}

FormalCharacter FormalCharacter::operator+(const FormalCharacter& o) const {
  require_compatible(o);
  FormalCharacter r = *this;
  for (int d = 0; d <= n_; ++d)
    for (const auto& [w, m] : o.slices_[d]) r.add(d, w, m);
  return r;
}

FormalCharacter FormalCharacter::operator-(const FormalCharacter& o) const { return *this + o.scaled(-1); }

FormalCharacter FormalCharacter::operator*(const FormalCharacter& o) const {
  require_compatible(o);
  FormalCharacter r(ctx_, n_);
  for (int a = 0; a <= n_; ++a)
    for (int b = 0; a + b <= n_; ++b)
      for (const auto& [w1, m1] : slices_[a])
        for (const auto& [w2, m2] : o.slices_[b]) r.add(a + b, w1 + w2, m1 * m2);
  return r;
}

FormalCharacter FormalCharacter::scaled(std::int64_t k) const {
  FormalCharacter r(ctx_, n_);
  for (int d = 0; d <= n_; ++d)
    for (const auto& [w, m] : slices_[d]) r.add(d, w, m * k);
  return r;
}

FormalCharacter FormalCharacter::shifted(int s) const {
  FormalCharacter r(ctx_, n_);
  for (int d = 0; d <= n_; ++d)
    if (d + s >= 0 && d + s <= n_)
      for (const auto& [w, m] : slices_[d]) r.add(d + s, w, m);
  return r;
}

FormalCharacter FormalCharacter::twisted(const Weight& x) const {
  FormalCharacter r(ctx_, n_);
  for (int d = 0; d <= n_; ++d)
    for (const auto& [w, m] : slices_[d]) r.add(d, w + x, m);
  return r;
}

FormalCharacter FormalCharacter::truncated(int n) const {
  if (n > n_) throw ArgumentError("cannot raise the truncation of a character");
  FormalCharacter r(ctx_, n);
  for (int d = 0; d <= n; ++d) r.slices_[d] = slices_[d];
  return r;
}

nlohmann::json FormalCharacter::to_json(const std::string& object, const std::optional<Weight>& weight) const {
  nlohmann::json j;
  j["algebra"] = to_string(ctx_.family);
  j["n"] = ctx_.n;
  j["truncation"] = n_;
  j["object"] = object;
  j["weight"] = weight ? nlohmann::json(weight->coords()) : nlohmann::json(nullptr);
  auto degrees = nlohmann::json::array();
  for (int d = 0; d <= n_; ++d) {
    auto ws = nlohmann::json::array();
    for (const auto& [w, m] : slices_[d]) ws.push_back({{"coords", w.coords()}, {"mult", m}});
    degrees.push_back({{"degree", d}, {"total_dim", total(d)}, {"weights", ws}});
  }
  j["degrees"] = degrees;
  return j;
}

FormalCharacter FormalCharacter::from_json(const nlohmann::json& j) {
  try {
    AlgebraContext ctx(parse_family(j.at("algebra").get<std::string>()), j.at("n").get<int>());
    FormalCharacter c(ctx, j.at("truncation").get<int>());
    for (const auto& d : j.at("degrees")) {
      int deg = d.at("degree").get<int>();
      std::int64_t sum = 0;
      for (const auto& w : d.at("weights")) {
        auto m = w.at("mult").get<std::int64_t>();
        c.add(deg, Weight(ctx, w.at("coords").get<std::vector<std::int64_t>>()), m);
        sum += m;
      }
      if (sum != d.at("total_dim").get<std::int64_t>()) throw ArgumentError("total_dim does not match the weights");
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("malformed character JSON: ") + e.what());
  }
}

}  // namespace cartan
