#include "canyonlab/parser.hpp"

#include <cctype>

#include "canyonlab/errors.hpp"

namespace canyonlab {

namespace {

// Polynomial over exact Gaussian rationals, the parser's working value.
struct GPoly {
  std::map<std::pair<int, int>, std::pair<Rat, Rat>> m;

  static GPoly constant(const Rat& re, const Rat& im = 0) {
    GPoly g;
    if (re != 0 || im != 0) g.m[{0, 0}] = {re, im};
    return g;
  }
  static GPoly variable(int dx, int dy) {
    GPoly g;
    g.m[{dx, dy}] = {Rat(1), Rat(0)};
    return g;
  }
  bool is_constant() const {
    return m.empty() || (m.size() == 1 && m.begin()->first == std::pair{0, 0});
  }
};

GPoly add(const GPoly& a, const GPoly& b, int sign) {
  GPoly out = a;
  for (auto& [k, c] : b.m) {
    auto& [re, im] = out.m[k];
    re += sign * c.first;
    im += sign * c.second;
    if (re == 0 && im == 0) out.m.erase(k);
  }
  return out;
}

GPoly mul(const GPoly& a, const GPoly& b) {
  GPoly out;
  for (auto& [ka, ca] : a.m)
    for (auto& [kb, cb] : b.m) {
      std::pair<int, int> k = {ka.first + kb.first, ka.second + kb.second};
      auto& [re, im] = out.m[k];
      re += ca.first * cb.first - ca.second * cb.second;
      im += ca.first * cb.second + ca.second * cb.first;
      if (re == 0 && im == 0) out.m.erase(k);
    }
  return out;
}

struct Parser {
  const std::string& s;
  const std::map<std::string, Rat>& bindings;
  size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }
  char peek() {
    skip();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool eat(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg + " at offset " + std::to_string(pos), pos);
  }

  Rat integer() {
    skip();
    size_t start = pos;
    while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
    if (pos == start) fail("expected integer");
    return Rat(s.substr(start, pos - start));
  }

  GPoly atom() {
    char c = peek();
    if (c == '(') {
      ++pos;
      GPoly e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit((unsigned char)c)) return GPoly::constant(integer());
    if (std::isalpha((unsigned char)c) || c == '_') {
      size_t start = pos;
      while (pos < s.size() &&
             (std::isalnum((unsigned char)s[pos]) || s[pos] == '_'))
        ++pos;
      std::string name = s.substr(start, pos - start);
      if (name == "x") return GPoly::variable(1, 0);
      if (name == "y") return GPoly::variable(0, 1);
      if (name == "i") return GPoly::constant(Rat(0), Rat(1));
      auto it = bindings.find(name);
      if (it == bindings.end())
        throw UnboundParameter("unbound parameter '" + name + "' at offset " +
                                   std::to_string(start),
                               start);
      return GPoly::constant(it->second);
    }
    fail("expected a term");
  }

  GPoly power() {
    GPoly base = atom();
    while (eat('^')) {
      skip();
      if (pos >= s.size() || !std::isdigit((unsigned char)s[pos]))
        fail("expected nonnegative integer exponent");
      Rat e = integer();
      long n = rat_num_l(e);
      GPoly out = GPoly::constant(Rat(1));
      for (long k = 0; k < n; ++k) out = mul(out, base);
      base = out;
    }
    return base;
  }

  GPoly unary() {
    if (eat('-')) return mul(GPoly::constant(Rat(-1)), unary());
    return power();
  }

  GPoly term() {
    GPoly acc = unary();
    for (;;) {
      if (eat('*')) {
        acc = mul(acc, unary());
      } else if (eat('/')) {
        size_t at = pos;
        GPoly den = unary();
        if (!den.is_constant() || den.m.empty())
          throw ParseError("division by a non-constant at offset " +
                               std::to_string(at),
                           at);
        auto [re, im] = den.m.begin()->second;
        Rat n2 = re * re + im * im;
        acc = mul(acc, GPoly::constant(re / n2, -im / n2));
      } else {
        break;
      }
    }
    return acc;
  }

  GPoly expr() {
    GPoly acc = term();
    for (;;) {
      if (eat('+'))
        acc = add(acc, term(), 1);
      else if (eat('-'))
        acc = add(acc, term(), -1);
      else
        break;
    }
    return acc;
  }
};

}  // namespace

GermExpr parse_germ(const std::string& text,
                    const std::map<std::string, Rat>& bindings) {
  Parser p{text, bindings};
  GPoly g = p.expr();
  p.skip();
  if (p.pos != text.size()) p.fail("unexpected trailing input");
  GermExpr out;
  out.source = text;
  out.bindings = bindings;
  out.exact = g.m;
  for (auto& [k, c] : g.m)
    out.poly.add_monomial(k.first, k.second, Coeff::gaussian(c.first, c.second));
  return out;
}

std::string render(const GermExpr& e) {
  if (e.exact.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto& [k, c] : e.exact) {
    auto [dx, dy] = k;
    auto [re, im] = c;
    if (!first) out += " + ";
    first = false;
    out += "(" + rat_str(re);
    if (im != 0) out += " + " + rat_str(im) + "*i";
    out += ")";
    if (dx > 0) out += "*x^" + std::to_string(dx);
    if (dy > 0) out += "*y^" + std::to_string(dy);
  }
  return out;
}

}  // namespace canyonlab
