// canyonlab: identity cards and non-equivalence certificates for plane
// curve germs.
//
//   canyonlab card "1/3*x^3 - t^2*x*y^10 + y^12" --bind t=1
//   canyonlab compare <expr> <expr> [--certificate]
//   canyonlab sweep <expr-with-param> --param t --values 1,2,3

#include <CLI11.hpp>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "canyonlab/equivalence.hpp"
#include "canyonlab/errors.hpp"
#include "canyonlab/json_io.hpp"
#include "canyonlab/parser.hpp"

using namespace canyonlab;

namespace {

struct Common {
  std::vector<std::string> binds;
  std::string trunc;
  long precision_bits = 256;
  long zero_tol = -128;
  bool pretty = false;
  bool json = false;  // compact; accepted for symmetry with --pretty
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--bind", c.binds,
                  "parameter binding name=value (value is a rational)");
  cmd->add_option("--trunc", c.trunc, "series truncation override (rational)");
  cmd->add_option("--precision-bits", c.precision_bits,
                  "working precision in bits");
  cmd->add_option("--zero-tol", c.zero_tol,
                  "zero-test threshold as a power of two");
  cmd->add_flag("--pretty", c.pretty, "indented JSON output");
  cmd->add_flag("--json", c.json, "compact JSON output (default)");
}

Rat parse_rat(const std::string& s) {
  Rat r(s);
  r.canonicalize();
  return r;
}

std::map<std::string, Rat> bindings_of(const Common& c) {
  std::map<std::string, Rat> out;
  for (const std::string& b : c.binds) {
    auto eq = b.find('=');
    if (eq == std::string::npos)
      throw ParseError("--bind expects name=value, got '" + b + "'", 0);
    out[b.substr(0, eq)] = parse_rat(b.substr(eq + 1));
  }
  return out;
}

void apply_numerics(const Common& c) {
  Numerics::default_prec = (mpfr_prec_t)c.precision_bits;
  Numerics::zero_tol_log2 = c.zero_tol;
}

std::optional<Rat> trunc_of(const Common& c) {
  if (c.trunc.empty()) return {};
  return parse_rat(c.trunc);
}

void emit(const json& doc, const Common& c) {
  if (c.pretty)
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << doc.dump() << "\n";
}

json error_doc(const std::string& kind, const std::string& what) {
  json out = json::object();
  out["error"] = kind;
  out["message"] = what;
  return out;
}

int run_card(const std::string& expr, const Common& c) {
  apply_numerics(c);
  GermExpr germ = parse_germ(expr, bindings_of(c));
  try {
    IdentityCard card = identity_card(germ.poly, trunc_of(c));
    json doc = json::object();
    doc["germ"] = render(germ);
    doc["card"] = card_json(card);
    emit(doc, c);
    return 0;
  } catch (const ComputeError& ex) {
    emit(error_doc("compute", ex.what()), c);
    return 2;
  }
}

int run_compare(const std::string& ef, const std::string& eg, bool cert,
                const Common& c) {
  apply_numerics(c);
  GermExpr f = parse_germ(ef, bindings_of(c));
  GermExpr g = parse_germ(eg, bindings_of(c));
  Verdict v = decide(f.poly, g.poly, trunc_of(c));
  json doc = verdict_json(v, cert);
  emit(doc, c);
  return 0;
}

int run_sweep(const std::string& expr, const std::string& param,
              const std::string& values, bool cert, const Common& c) {
  apply_numerics(c);
  std::vector<Rat> vals;
  std::vector<std::string> val_strs;
  size_t start = 0;
  while (start <= values.size()) {
    size_t comma = values.find(',', start);
    std::string tok = values.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!tok.empty()) {
      vals.push_back(parse_rat(tok));
      val_strs.push_back(tok);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (vals.empty()) throw ParseError("--values expects a nonempty list", 0);

  std::vector<BivarPoly> germs;
  for (auto& v : vals) {
    auto b = bindings_of(c);
    b[param] = v;
    germs.push_back(parse_germ(expr, b).poly);
  }

  json pairs = json::array();
  // union-find over indices: merge whenever a pair is not refuted
  std::vector<size_t> parent(vals.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (size_t i = 0; i < vals.size(); ++i)
    for (size_t j = i + 1; j < vals.size(); ++j) {
      Verdict v = decide(germs[i], germs[j], trunc_of(c));
      json e = json::object();
      e["i"] = val_strs[i];
      e["j"] = val_strs[j];
      e["result"] = verdict_json(v, cert);
      pairs.push_back(std::move(e));
      if (v.kind != Verdict::Kind::NotEquivalent)
        parent[find(i)] = find(j);
    }
  json classes = json::array();
  for (size_t r = 0; r < vals.size(); ++r) {
    if (find(r) != r) continue;
    json cls = json::array();
    for (size_t i = 0; i < vals.size(); ++i)
      if (find(i) == r) cls.push_back(val_strs[i]);
    classes.push_back(std::move(cls));
  }
  json doc = json::object();
  doc["param"] = param;
  doc["values"] = val_strs;
  doc["pairs"] = std::move(pairs);
  doc["not_refuted_classes"] = std::move(classes);
  emit(doc, c);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bi-Lipschitz identity cards for plane curve germs"};
  app.require_subcommand(1);

  Common c_card, c_cmp, c_sweep;
  std::string e_card, e_f, e_g, e_sweep, param, values;
  bool cert_cmp = false, cert_sweep = false;

  CLI::App* card = app.add_subcommand("card", "compute the identity card");
  card->add_option("expr", e_card, "germ expression")->required();
  add_common(card, c_card);

  CLI::App* cmp = app.add_subcommand("compare", "decide non-equivalence");
  cmp->add_option("f", e_f, "first germ")->required();
  cmp->add_option("g", e_g, "second germ")->required();
  cmp->add_flag("--certificate", cert_cmp, "include refutation traces");
  add_common(cmp, c_cmp);

  CLI::App* sweep = app.add_subcommand("sweep", "pairwise compare a family");
  sweep->add_option("expr", e_sweep, "germ template")->required();
  sweep->add_option("--param", param, "parameter name")->required();
  sweep->add_option("--values", values, "comma-separated rationals")
      ->required();
  sweep->add_flag("--certificate", cert_sweep, "include refutation traces");
  add_common(sweep, c_sweep);

  CLI11_PARSE(app, argc, argv);

  try {
    if (card->parsed()) return run_card(e_card, c_card);
    if (cmp->parsed()) return run_compare(e_f, e_g, cert_cmp, c_cmp);
    if (sweep->parsed())
      return run_sweep(e_sweep, param, values, cert_sweep, c_sweep);
  } catch (const ParseError& ex) {
    std::cout << error_doc("parse", ex.what()).dump() << "\n";
    return 3;
  } catch (const ComputeError& ex) {
    std::cout << error_doc("compute", ex.what()).dump() << "\n";
    return 2;
  }
  return 0;
}
