#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "nambu/expr.hpp"

// Canonical form: every expression is rewritten as a polynomial over
// "atoms" (variables and unexpandable subtrees such as sin(u) or 1/u),
// with exact rational coefficients where no float literal is involved.
// Monomials are ordered graded-lexicographically; an identically zero
// polynomial collapses to the literal 0, which is what certifies the
// symbolic identity checks.

namespace nambu {

namespace {

// A monomial: sorted (atom, positive exponent) pairs.
using Mono = std::vector<std::pair<Expr, int>>;

int mono_degree(const Mono& m) {
  int d = 0;
  for (const auto& [a, k] : m) d += k;
  return d;
}

struct MonoLess {
  bool operator()(const Mono& a, const Mono& b) const {
    int da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da < db;
    size_t n = std::min(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
      if (int c = compare(a[i].first, b[i].first)) return c < 0;
      if (a[i].second != b[i].second) return a[i].second > b[i].second;
    }
    return a.size() < b.size();
  }
};

struct GPoly {
  std::map<Mono, Number, MonoLess> terms;

  static GPoly zero() { return {}; }
  static GPoly constant(Number v) {
    GPoly g;
    if (!v.is_zero()) g.terms.emplace(Mono{}, std::move(v));
    return g;
  }
  static GPoly atom(Expr a) {
    GPoly g;
    g.terms.emplace(Mono{{std::move(a), 1}}, Number(1));
    return g;
  }

  bool is_zero() const { return terms.empty(); }
  bool is_constant() const {
    return terms.empty() || (terms.size() == 1 && terms.begin()->first.empty());
  }
  Number constant_value() const {
    return terms.empty() ? Number(0) : terms.begin()->second;
  }

  void add_term(Mono m, const Number& c) {
    auto it = terms.find(m);
    if (it == terms.end()) {
      if (!c.is_zero()) terms.emplace(std::move(m), c);
    } else {
      it->second = it->second + c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
};

GPoly add(const GPoly& a, const GPoly& b) {
  GPoly out = a;
  for (const auto& [m, c] : b.terms) out.add_term(m, c);
  return out;
}

GPoly scale(const GPoly& a, const Number& s) {
  GPoly out;
  if (s.is_zero()) return out;
  for (const auto& [m, c] : a.terms) out.terms.emplace(m, c * s);
  return out;
}

Mono mono_mul(const Mono& a, const Mono& b) {
  Mono out;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = compare(a[i].first, b[j].first);
    if (c < 0)
      out.push_back(a[i++]);
    else if (c > 0)
      out.push_back(b[j++]);
    else {
      int k = a[i].second + b[j].second;
      if (k != 0) out.emplace_back(a[i].first, k);
      ++i;
      ++j;
    }
  }
  while (i < a.size()) out.push_back(a[i++]);
  while (j < b.size()) out.push_back(b[j++]);
  return out;
}

GPoly mul(const GPoly& a, const GPoly& b) {
  GPoly out;
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms)
      out.add_term(mono_mul(ma, mb), ca * cb);
  return out;
}

GPoly gpow(const GPoly& a, int k) {
  GPoly out = GPoly::constant(Number(1));
  for (int i = 0; i < k; ++i) out = mul(out, a);
  return out;
}

Expr from_gpoly(const GPoly& g);
GPoly to_gpoly(const Expr& e);

Expr term_expr(const Mono& m, const Number& c) {
  std::vector<Expr> factors;
  if (!c.is_one() || m.empty()) factors.push_back(Expr::constant(c));
  for (const auto& [a, k] : m)
    factors.push_back(k == 1 ? a : Expr::int_power(a, k));
  return Expr::product(std::move(factors));
}

Expr from_gpoly(const GPoly& g) {
  if (g.terms.empty()) return Expr::integer(0);
  std::vector<Expr> terms;
  // map iterates ascending; display leading (highest) term first
  for (auto it = g.terms.rbegin(); it != g.terms.rend(); ++it)
    terms.push_back(term_expr(it->first, it->second));
  return Expr::sum(std::move(terms));
}

// Rebuilds a function node over a canonical argument, folding the exact
// special values and any float-constant argument.
GPoly func_atom(ExprKind kind, const Expr& arg_raw) {
  Expr arg = from_gpoly(to_gpoly(arg_raw));
  if (arg.is_constant()) {
    const Number& v = arg.value();
    if (v.exact()) {
      switch (kind) {
        case ExprKind::Sin:
          if (v.is_zero()) return GPoly::zero();
          break;
        case ExprKind::Cos:
        case ExprKind::Exp:
          if (v.is_zero()) return GPoly::constant(Number(1));
          break;
        case ExprKind::Log:
          if (v.is_one()) return GPoly::zero();
          break;
        default:
          break;
      }
    } else {
      double x = v.as_double();
      double r = kind == ExprKind::Sin   ? std::sin(x)
                 : kind == ExprKind::Cos ? std::cos(x)
                 : kind == ExprKind::Exp ? std::exp(x)
                                         : std::log(x);
      if (std::isfinite(r)) return GPoly::constant(Number::real(r));
    }
  }
  switch (kind) {
    case ExprKind::Sin: return GPoly::atom(Expr::sin(arg));
    case ExprKind::Cos: return GPoly::atom(Expr::cos(arg));
    case ExprKind::Exp: return GPoly::atom(Expr::exp(arg));
    default: return GPoly::atom(Expr::log(arg));
  }
}

GPoly to_gpoly(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return GPoly::constant(e.value());
    case ExprKind::Variable:
      return GPoly::atom(e);
    case ExprKind::Sum: {
      GPoly out;
      for (const Expr& c : e.children()) out = add(out, to_gpoly(c));
      return out;
    }
    case ExprKind::Product: {
      GPoly out = GPoly::constant(Number(1));
      for (const Expr& c : e.children()) {
        out = mul(out, to_gpoly(c));
        if (out.is_zero()) return out;
      }
      return out;
    }
    case ExprKind::Negate:
      return scale(to_gpoly(e.child(0)), Number(-1));
    case ExprKind::IntPower: {
      GPoly b = to_gpoly(e.child(0));
      int k = e.exponent();
      if (k == 0) return GPoly::constant(Number(1));
      if (k > 0) return gpow(b, k);
      if (b.is_constant() && !b.constant_value().is_zero())
        return GPoly::constant(b.constant_value().pow(k));
      Expr den = from_gpoly(gpow(b, -k));
      return GPoly::atom(Expr::quotient(Expr::integer(1), den));
    }
    case ExprKind::Quotient: {
      GPoly den = to_gpoly(e.child(1));
      if (den.is_constant()) {
        Number d = den.constant_value();
        if (!d.is_zero())
          return scale(to_gpoly(e.child(0)), Number(1) / d);
        // structural division by zero: keep the node as written
        return GPoly::atom(
            Expr::quotient(from_gpoly(to_gpoly(e.child(0))), Expr::integer(0)));
      }
      GPoly num = to_gpoly(e.child(0));
      if (num.is_zero()) return GPoly::zero();
      Expr inv = Expr::quotient(Expr::integer(1), from_gpoly(den));
      return mul(num, GPoly::atom(inv));
    }
    case ExprKind::Sin:
    case ExprKind::Cos:
    case ExprKind::Exp:
    case ExprKind::Log:
      return func_atom(e.kind(), e.child(0));
  }
  return GPoly::zero();
}

}  // namespace

Expr simplify(const Expr& e) { return from_gpoly(to_gpoly(e)); }

namespace {

Expr diff_raw(const Expr& e, const std::string& var) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return Expr::integer(0);
    case ExprKind::Variable:
      return Expr::integer(e.name() == var ? 1 : 0);
    case ExprKind::Sum: {
      std::vector<Expr> terms;
      for (const Expr& c : e.children()) terms.push_back(diff_raw(c, var));
      return Expr::sum(std::move(terms));
    }
    case ExprKind::Product: {
      std::vector<Expr> terms;
      const auto& kids = e.children();
      for (size_t i = 0; i < kids.size(); ++i) {
        std::vector<Expr> factors = kids;
        factors[i] = diff_raw(kids[i], var);
        terms.push_back(Expr::product(std::move(factors)));
      }
      return Expr::sum(std::move(terms));
    }
    case ExprKind::Quotient: {
      const Expr& a = e.child(0);
      const Expr& b = e.child(1);
      return Expr::quotient(diff_raw(a, var) * b - a * diff_raw(b, var),
                            Expr::int_power(b, 2));
    }
    case ExprKind::IntPower: {
      const Expr& b = e.child(0);
      int k = e.exponent();
      if (k == 0) return Expr::integer(0);
      return Expr::integer(k) * Expr::int_power(b, k - 1) * diff_raw(b, var);
    }
    case ExprKind::Sin:
      return Expr::cos(e.child(0)) * diff_raw(e.child(0), var);
    case ExprKind::Cos:
      return Expr::negate(Expr::sin(e.child(0))) * diff_raw(e.child(0), var);
    case ExprKind::Exp:
      return e * diff_raw(e.child(0), var);
    case ExprKind::Log:
      return Expr::quotient(diff_raw(e.child(0), var), e.child(0));
    case ExprKind::Negate:
      return Expr::negate(diff_raw(e.child(0), var));
  }
  return Expr::integer(0);
}

}  // namespace

Expr differentiate(const Expr& e, const std::string& var) {
  return simplify(diff_raw(e, var));
}

}  // namespace nambu
