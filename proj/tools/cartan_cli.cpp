// Command-line front end: graded bases, verifications, characters and
// multiplicity tables for W(n), S(n) and H(2r).
//
// Exit codes: 0 success, 1 verification failure or disagreement, 2 invalid
// input.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cartan/graded_modules.hpp"
#include "cartan/tilting.hpp"

using namespace cartan;

namespace {

constexpr int kVerifyFailed = 1;
constexpr int kInvalidInput = 2;

struct Options {
  std::string algebra;
  int n = 0;
  int trunc = 6;
  std::string format = "table";
  std::string output;
  std::optional<int> degree;
  std::string weight, lambda, mu;
  std::string which;
};

// One command's result in all three renderings.
struct Result {
  nlohmann::json json;
  std::vector<std::string> notes;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  bool ok = true;
};

std::string render(const Result& r, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    os << r.json.dump(2) << "\n";
  } else if (format == "csv") {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
      os << "\n";
    };
    line(r.header);
    for (const auto& row : r.rows) line(row);
  } else {
    for (const auto& n : r.notes) os << n << "\n";
    std::vector<std::size_t> width(r.header.size(), 0);
    for (std::size_t i = 0; i < r.header.size(); ++i) width[i] = r.header[i].size();
    for (const auto& row : r.rows)
      for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
    auto line = [&](const std::vector<std::string>& cells) {
      std::string s;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        s += cells[i];
        if (i + 1 < cells.size()) s += std::string(width[i] - cells[i].size() + 2, ' ');
      }
      os << s << "\n";
    };
    if (!r.header.empty()) line(r.header);
    for (const auto& row : r.rows) line(row);
  }
  return os.str();
}

AlgebraContext context_of(const Options& o) { return AlgebraContext(parse_family(o.algebra), o.n); }

// Parses a weight, announcing a change of representative and rejecting
// weights that are not antidominant.
Weight read_weight(AlgebraContext ctx, const std::string& text, const std::string& flag, bool antidominant = true) {
  if (text.empty()) throw ArgumentError("--" + flag + " is required");
  Weight w = parse_weight(ctx, text);
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');) parts.push_back(p);
  std::vector<std::int64_t> given;
  for (const auto& p : parts) given.push_back(std::stoll(p));
  if (given != w.coords())
    std::cerr << "note: --" << flag << " " << text << " read as the representative " << w.to_string() << "\n";
  if (antidominant && !is_antidominant(w))
    throw ArgumentError("--" + flag + " " + w.to_string() + " is not antidominant: " + antidominance_violation(w));
  return w;
}

std::string head_note(AlgebraContext ctx, const std::string& what, int trunc) {
  return "# " + ctx.name() + " " + what + (trunc >= 0 ? ", truncation " + std::to_string(trunc) : "");
}

Result character_result(const FormalCharacter& c, const std::string& object, const std::optional<Weight>& w) {
  Result r;
  r.json = c.to_json(object, w);
  const auto ctx = c.context();
  r.notes.push_back(head_note(ctx, object + (w ? " " + w->to_string() : ""), c.truncation()));
  r.header.push_back("degree");
  for (int i = 1; i <= ctx.weight_rank(); ++i) r.header.push_back("w" + std::to_string(i));
  r.header.push_back("mult");
  for (int d = 0; d <= c.truncation(); ++d)
    for (const auto& [x, m] : c.slice(d)) {
      std::vector<std::string> row{std::to_string(d)};
      for (auto v : x.coords()) row.push_back(std::to_string(v));
      row.push_back(std::to_string(m));
      r.rows.push_back(std::move(row));
    }
  for (int d = 0; d <= c.truncation(); ++d)
    r.notes.push_back("# degree " + std::to_string(d) + " total " + std::to_string(c.total(d)));
  return r;
}

// ---------------------------------------------------------------- commands

Result cmd_basis(const Options& o) {
  const auto ctx = context_of(o);
  if (!o.degree) throw ArgumentError("--degree is required");
  if (*o.degree < -1) throw ArgumentError("--degree must be at least -1");
  const auto& slice = algebra_for(ctx)->slice(*o.degree);
  Result r;
  r.json = {{"algebra", to_string(ctx.family)}, {"n", ctx.n}, {"degree", *o.degree}, {"dim", slice.dim()}};
  auto elems = nlohmann::json::array();
  r.header = {"index", "weight", "element"};
  for (std::size_t i = 0; i < slice.dim(); ++i) {
    const auto field = format_field(slice[i]);
    elems.push_back({{"index", i}, {"weight", slice.weights()[i].coords()}, {"element", field}});
    r.rows.push_back({std::to_string(i), slice.weights()[i].to_string(), field});
  }
  r.json["basis"] = elems;
  // The plain listing is one element per line.
  if (o.format == "table") {
    r.header.clear();
    for (auto& row : r.rows) row = {row[2]};
  }
  return r;
}

Result verify_result(AlgebraContext ctx, const std::string& check, bool ok, nlohmann::json details,
                     const std::vector<std::string>& witnesses) {
  Result r;
  r.ok = ok;
  r.json = {{"check", check}, {"algebra", to_string(ctx.family)}, {"n", ctx.n}, {"pass", ok}};
  r.json["details"] = std::move(details);
  r.json["failures"] = witnesses;
  r.notes.push_back(head_note(ctx, "verify " + check, -1));
  r.header = {"check", "algebra", "result"};
  r.rows.push_back({check, ctx.name(), ok ? "pass" : "FAIL"});
  for (const auto& w : witnesses) r.notes.push_back("# witness: " + w);
  return r;
}

Result cmd_verify(const Options& o) {
  const auto ctx = context_of(o);
  const auto& which = o.which;
  if (which == "jacobi") {
    auto rep = check_lie_structure(ctx, o.degree.value_or(2));
    std::vector<std::string> w;
    if (!rep.all_pass) w.push_back(rep.witness);
    return verify_result(ctx, which, rep.all_pass,
                         {{"max_degree", o.degree.value_or(2)},
                          {"triples_checked", rep.triples_checked},
                          {"pairs_checked", rep.pairs_checked}},
                         w);
  }
  if (which == "si") {
    auto rep = semi_infinite_check(ctx);
    std::vector<std::string> w;
    if (!rep.all_pass) w.push_back(rep.witness);
    return verify_result(ctx, which, rep.all_pass, {{"pairs_checked", rep.pairs_checked}}, w);
  }
  if (which == "generation") {
    std::vector<int> degrees;
    if (o.degree) {
      if (*o.degree < 2) throw ArgumentError("generation needs --degree >= 2");
      degrees.push_back(*o.degree);
    } else {
      degrees = {2, 3, 4};
    }
    bool ok = true;
    nlohmann::json per = nlohmann::json::object();
    std::vector<std::string> w;
    for (int i : degrees) {
      bool g = check_generation(ctx, i);
      per[std::to_string(i)] = g;
      if (!g) w.push_back("g_[" + std::to_string(i) + "] is not spanned by [g_[" + std::to_string(i - 1) + "], g_[1]]");
      ok = ok && g;
    }
    return verify_result(ctx, which, ok, {{"degrees", per}}, w);
  }
  if (which == "module-axioms") {
    const Weight l = read_weight(ctx, o.weight, "weight");
    const int d = o.degree.value_or(std::min(3, o.trunc));
    if (d < 0 || d > o.trunc) throw ArgumentError("--degree must lie in 0..--trunc");
    auto rep = verify_module_axiom(build_costandard(l, o.trunc), d);
    std::vector<std::string> w;
    if (!rep.all_pass) w.push_back(rep.witness);
    return verify_result(ctx, which, rep.all_pass,
                         {{"weight", l.coords()}, {"truncation", o.trunc}, {"degree_bound", d},
                          {"pairs_checked", rep.pairs_checked}},
                         w);
  }
  if (which == "complex") {
    if (ctx.family == Family::H) throw ArgumentError("the complex is defined for W(n) and S(n)");
    auto rep = verify_complex(ctx, o.trunc);
    auto entries = nlohmann::json::array();
    for (const auto& e : rep.entries)
      entries.push_back({{"position", e.position},
                         {"degree", e.degree},
                         {"dim", e.dim},
                         {"rank_in", e.rank_in},
                         {"rank_out", e.rank_out},
                         {"exact", e.exact}});
    auto r = verify_result(ctx, which, rep.all_pass(),
                           {{"truncation", o.trunc},
                            {"dd_zero", rep.dd_zero},
                            {"exact_internal", rep.exact_internal},
                            {"start_injective", rep.start_injective},
                            {"end_surjective", rep.end_surjective},
                            {"maps_equivariant", rep.maps_equivariant},
                            {"identification_ok", rep.identification_ok},
                            {"entries", entries}},
                           rep.failures);
    r.notes.insert(r.notes.begin() + 1, "# truncation " + std::to_string(o.trunc));
    return r;
  }
  throw ArgumentError("unknown check '" + which + "'");
}

Result cmd_char(const Options& o) {
  const auto ctx = context_of(o);
  const auto& obj = o.which;
  if (obj == "pi") return character_result(pi_product(ctx, o.trunc), "pi", std::nullopt);
  const Weight l = read_weight(ctx, o.weight, "weight");
  if (obj == "delta") return character_result(char_standard(l, o.trunc), obj, l);
  if (obj == "nabla") return character_result(build_costandard(l, o.trunc).character(), obj, l);
  if (obj == "simple") return character_result(simple_character(l, o.trunc), obj, l);
  if (obj == "tilting") return character_result(char_tilting(l, o.trunc), obj, l);
  throw ArgumentError("unknown character object '" + obj + "'");
}

Result cmd_compmult(const Options& o) {
  const auto ctx = context_of(o);
  const Weight l = read_weight(ctx, o.weight, "weight");
  auto res = composition_multiplicities(build_costandard(l, o.trunc), o.trunc);
  Result r;
  r.notes.push_back(head_note(ctx, "composition factors of V" + l.to_string(), o.trunc));
  r.header = {"factor", "shift", "mult"};
  auto rows = nlohmann::json::array();
  for (const auto& [key, m] : res) {
    r.rows.push_back({"L" + key.first.to_string(), std::to_string(key.second), std::to_string(m)});
    rows.push_back({{"weight", key.first.coords()}, {"shift", key.second}, {"mult", m}});
  }
  if (o.format == "csv") {
    r.header = {"weight", "shift", "mult"};
    for (auto& row : r.rows) row[0] = "\"" + row[0].substr(2, row[0].size() - 3) + "\"";
  }
  r.json = {{"algebra", to_string(ctx.family)}, {"n", ctx.n}, {"truncation", o.trunc}, {"weight", l.coords()},
            {"factors", rows}};
  return r;
}

Result cmd_tiltmult(const Options& o) {
  const auto ctx = context_of(o);
  const Weight l = read_weight(ctx, o.lambda, "lambda");
  Result r;
  r.json = {{"algebra", to_string(ctx.family)}, {"n", ctx.n}, {"lambda", l.coords()}};
  if (!o.mu.empty()) {
    const Weight m = read_weight(ctx, o.mu, "mu");
    const auto v = tilting_multiplicity(l, m);
    r.json["mu"] = m.coords();
    r.json["multiplicity"] = v;
    r.header = {"lambda", "mu", "mult"};
    r.rows.push_back({l.to_string(), m.to_string(), std::to_string(v)});
    if (o.format == "table") {
      r.header.clear();
      r.rows = {{std::to_string(v)}};
    }
  } else {
    auto flag = nlohmann::json::array();
    r.header = {"lambda", "mu", "mult"};
    for (const auto& [m, v] : tilting_flag(l)) {
      flag.push_back({{"mu", m.coords()}, {"mult", v}});
      r.rows.push_back({l.to_string(), m.to_string(), std::to_string(v)});
    }
    r.json["flag"] = flag;
  }
  if (o.format == "csv")
    for (auto& row : r.rows)
      for (int i = 0; i < 2; ++i) row[i] = "\"" + row[i].substr(1, row[i].size() - 2) + "\"";
  return r;
}

Result cmd_soergel(const Options& o) {
  const auto ctx = context_of(o);
  const Weight l = read_weight(ctx, o.lambda, "lambda");
  const Weight m = read_weight(ctx, o.mu, "mu");
  auto rep = soergel_crosscheck(l, m, o.trunc);
  Result r;
  r.ok = !rep.applicable || rep.agree;
  r.notes.push_back(head_note(ctx, "[T" + l.to_string() + ":Delta" + m.to_string() + "]", o.trunc));
  nlohmann::json by_shift = nlohmann::json::object();
  for (const auto& [s, v] : rep.oracle_by_shift) by_shift[std::to_string(s)] = v;
  r.json = {{"algebra", to_string(ctx.family)}, {"n", ctx.n},     {"truncation", o.trunc},
            {"lambda", l.coords()},             {"mu", m.coords()}, {"applicable", rep.applicable}};
  if (!rep.applicable) {
    r.json["reason"] = rep.reason;
    r.notes.push_back("# not applicable: " + rep.reason);
    r.header = {"lambda", "mu", "status"};
    r.rows.push_back({l.to_string(), m.to_string(), "not-applicable"});
    return r;
  }
  r.json["lambda_dual"] = rep.lambda_dual.coords();
  r.json["mu_dual"] = rep.mu_dual.coords();
  r.json["closed_form"] = rep.closed_form;
  r.json["oracle"] = rep.oracle;
  r.json["oracle_by_shift"] = by_shift;
  r.json["agree"] = rep.agree;
  r.notes.push_back("# oracle: [V" + rep.mu_dual.to_string() + ":L" + rep.lambda_dual.to_string() + "]");
  r.header = {"lambda", "mu", "closed_form", "oracle", "result"};
  r.rows.push_back({l.to_string(), m.to_string(), std::to_string(rep.closed_form), std::to_string(rep.oracle),
                    rep.agree ? "agree" : "DISAGREE"});
  if (o.format == "csv")
    for (int i = 0; i < 2; ++i) r.rows[0][i] = "\"" + r.rows[0][i].substr(1, r.rows[0][i].size() - 2) + "\"";
  return r;
}

void add_common(CLI::App* sub, Options& o, bool needs_trunc) {
  sub->add_option("--algebra", o.algebra, "W, S or H")->required()->check(CLI::IsMember({"W", "S", "H"}));
  sub->add_option("--n", o.n, "number of variables")->required();
  if (needs_trunc) sub->add_option("--trunc", o.trunc, "truncation degree N")->capture_default_str()->check(CLI::NonNegativeNumber);
  sub->add_option("--format", o.format, "table, json or csv")
      ->capture_default_str()
      ->check(CLI::IsMember({"table", "json", "csv"}));
  sub->add_option("--output", o.output, "write to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graded representation theory of W(n), S(n) and H(2r) in exact arithmetic"};
  app.require_subcommand(1);
  Options o;

  auto* basis = app.add_subcommand("basis", "list the graded basis of g_[degree]");
  add_common(basis, o, false);
  basis->add_option("--degree", o.degree, "degree i >= -1")->required();

  auto* verify = app.add_subcommand("verify", "run a verification");
  verify->add_option("check", o.which, "jacobi, si, generation, module-axioms or complex")
      ->required()
      ->check(CLI::IsMember({"jacobi", "si", "generation", "module-axioms", "complex"}));
  add_common(verify, o, true);
  verify->add_option("--degree", o.degree, "degree bound (jacobi, module-axioms) or degree (generation)");
  verify->add_option("--weight", o.weight, "lowest weight for module-axioms, e.g. -1,0");

  auto* chr = app.add_subcommand("char", "print a formal character");
  chr->add_option("object", o.which, "delta, nabla, simple, tilting or pi")
      ->required()
      ->check(CLI::IsMember({"delta", "nabla", "simple", "tilting", "pi"}));
  add_common(chr, o, true);
  chr->add_option("--weight", o.weight, "lowest weight, e.g. -1,0");

  auto* comp = app.add_subcommand("compmult", "composition factors of V(weight)");
  add_common(comp, o, true);
  comp->add_option("--weight", o.weight, "lowest weight")->required();

  auto* tilt = app.add_subcommand("tiltmult", "closed-form [T(lambda):Delta(mu)]");
  add_common(tilt, o, false);
  tilt->add_option("--lambda", o.lambda, "weight lambda")->required();
  tilt->add_option("--mu", o.mu, "weight mu; omitted lists the whole Delta-flag");

  auto* soergel = app.add_subcommand("soergel", "closed form against the composition-factor oracle");
  add_common(soergel, o, true);
  soergel->add_option("--lambda", o.lambda, "weight lambda")->required();
  soergel->add_option("--mu", o.mu, "weight mu")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInvalidInput;
  }

  try {
    Result r;
    if (*basis) r = cmd_basis(o);
    else if (*verify) r = cmd_verify(o);
    else if (*chr) r = cmd_char(o);
    else if (*comp) r = cmd_compmult(o);
    else if (*tilt) r = cmd_tiltmult(o);
    else r = cmd_soergel(o);
    const std::string text = render(r, o.format);
    if (o.output.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(o.output);
      if (!out) throw ArgumentError("cannot write " + o.output);
      out << text;
    }
    if (!r.ok) {
      std::cerr << "verification failed\n";
      return kVerifyFailed;
    }
    return 0;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: invalid number: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: number out of range: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const ConsistencyError& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return kVerifyFailed;
  }
}
