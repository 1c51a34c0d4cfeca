#include "nambu/expr.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "nambu/field.hpp"

namespace nambu {

Expr Expr::make(Node n) {
  return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr::Expr() : Expr(constant(Number(0))) {}

Expr Expr::constant(Number v) {
  return make({.kind = ExprKind::Constant, .value = std::move(v)});
}

Expr Expr::variable(std::string name) {
  return make({.kind = ExprKind::Variable, .name = std::move(name)});
}

Expr Expr::sum(std::vector<Expr> terms) {
  if (terms.empty()) return integer(0);
  if (terms.size() == 1) return terms[0];
  return make({.kind = ExprKind::Sum, .children = std::move(terms)});
}

Expr Expr::product(std::vector<Expr> factors) {
  if (factors.empty()) return integer(1);
  if (factors.size() == 1) return factors[0];
  return make({.kind = ExprKind::Product, .children = std::move(factors)});
}

Expr Expr::quotient(Expr num, Expr den) {
  return make({.kind = ExprKind::Quotient,
               .children = {std::move(num), std::move(den)}});
}

Expr Expr::int_power(Expr base, int exponent) {
  return make({.kind = ExprKind::IntPower,
               .exponent = exponent,
               .children = {std::move(base)}});
}

Expr Expr::sin(Expr e) {
  return make({.kind = ExprKind::Sin, .children = {std::move(e)}});
}
Expr Expr::cos(Expr e) {
  return make({.kind = ExprKind::Cos, .children = {std::move(e)}});
}
Expr Expr::exp(Expr e) {
  return make({.kind = ExprKind::Exp, .children = {std::move(e)}});
}
Expr Expr::log(Expr e) {
  return make({.kind = ExprKind::Log, .children = {std::move(e)}});
}
Expr Expr::negate(Expr e) {
  return make({.kind = ExprKind::Negate, .children = {std::move(e)}});
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) {
  return Expr::sum({a, Expr::negate(b)});
}
Expr operator*(const Expr& a, const Expr& b) { return Expr::product({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::quotient(a, b); }
Expr operator-(const Expr& a) { return Expr::negate(a); }

int compare(const Expr& a, const Expr& b) {
  if (a.kind() != b.kind())
    return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
  switch (a.kind()) {
    case ExprKind::Constant:
      return compare(a.value(), b.value());
    case ExprKind::Variable:
      return a.name().compare(b.name());
    case ExprKind::IntPower:
      if (a.exponent() != b.exponent())
        return a.exponent() < b.exponent() ? -1 : 1;
      break;
    default:
      break;
  }
  const auto& ca = a.children();
  const auto& cb = b.children();
  if (ca.size() != cb.size()) return ca.size() < cb.size() ? -1 : 1;
  for (size_t i = 0; i < ca.size(); ++i)
    if (int c = compare(ca[i], cb[i])) return c;
  return 0;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  return compare(a, b) == 0;
}

namespace {

// Printing precedence levels.
enum Prec { kSum = 0, kProd = 1, kUnary = 2, kPow = 3, kAtom = 4 };

void print(std::ostream& os, const Expr& e, int parent_prec);

void print_wrapped(std::ostream& os, const Expr& e, int prec, int own) {
  if (own < prec) {
    os << '(';
    print(os, e, kSum);
    os << ')';
  } else {
    print(os, e, own);
  }
}

bool starts_negative(const Expr& e) {
  if (e.kind() == ExprKind::Negate) return true;
  if (e.kind() == ExprKind::Constant) return e.value().is_negative();
  if (e.kind() == ExprKind::Product && !e.children().empty())
    return starts_negative(e.children().front());
  return false;
}

// Strips one leading minus sign for "a - b" rendering.
Expr strip_negative(const Expr& e) {
  if (e.kind() == ExprKind::Negate) return e.child(0);
  if (e.kind() == ExprKind::Constant) {
    Number v = e.value();
    return Expr::constant(-v);
  }
  if (e.kind() == ExprKind::Product) {
    auto kids = e.children();
    kids[0] = strip_negative(kids[0]);
    if (kids[0].is_literal_one() && kids.size() > 1)
      kids.erase(kids.begin());
    return Expr::product(std::move(kids));
  }
  return e;
}

void print(std::ostream& os, const Expr& e, int parent_prec) {
  switch (e.kind()) {
    case ExprKind::Constant: {
      std::string s = e.value().str();
      bool neg = !s.empty() && s[0] == '-';
      bool frac = s.find('/') != std::string::npos;
      if ((neg && parent_prec > kSum) || (frac && parent_prec > kProd))
        os << '(' << s << ')';
      else
        os << s;
      break;
    }
    case ExprKind::Variable:
      os << e.name();
      break;
    case ExprKind::Sum: {
      bool paren = parent_prec > kSum;
      if (paren) os << '(';
      for (size_t i = 0; i < e.children().size(); ++i) {
        const Expr& t = e.children()[i];
        if (i == 0) {
          print(os, t, kSum + 1);
        } else if (starts_negative(t)) {
          os << " - ";
          print(os, strip_negative(t), kSum + 1);
        } else {
          os << " + ";
          print(os, t, kSum + 1);
        }
      }
      if (paren) os << ')';
      break;
    }
    case ExprKind::Product: {
      bool paren = parent_prec > kProd;
      if (paren) os << '(';
      for (size_t i = 0; i < e.children().size(); ++i) {
        if (i) os << '*';
        print_wrapped(os, e.children()[i], kProd + (i ? 1 : 0), kProd + 1);
      }
      if (paren) os << ')';
      break;
    }
    case ExprKind::Quotient: {
      bool paren = parent_prec > kProd;
      if (paren) os << '(';
      print_wrapped(os, e.child(0), kProd, kProd + 1);
      os << '/';
      print_wrapped(os, e.child(1), kPow, kPow);
      if (paren) os << ')';
      break;
    }
    case ExprKind::IntPower: {
      print_wrapped(os, e.child(0), kPow + 1, kPow + 1);
      os << '^';
      if (e.exponent() < 0)
        os << '(' << e.exponent() << ')';
      else
        os << e.exponent();
      break;
    }
    case ExprKind::Negate: {
      bool paren = parent_prec > kUnary;
      if (paren) os << '(';
      os << '-';
      print_wrapped(os, e.child(0), kUnary, kUnary + 1);
      if (paren) os << ')';
      break;
    }
    case ExprKind::Sin:
    case ExprKind::Cos:
    case ExprKind::Exp:
    case ExprKind::Log: {
      static const char* names[] = {"sin", "cos", "exp", "log"};
      os << names[static_cast<int>(e.kind()) - static_cast<int>(ExprKind::Sin)]
         << '(';
      print(os, e.child(0), kSum);
      os << ')';
      break;
    }
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::ostringstream os;
  print(os, e, kSum);
  return os.str();
}

static void collect_vars(const Expr& e, std::set<std::string>& out) {
  if (e.kind() == ExprKind::Variable) out.insert(e.name());
  for (const Expr& c : e.children()) collect_vars(c, out);
}

std::set<std::string> free_variables(const Expr& e) {
  std::set<std::string> out;
  collect_vars(e, out);
  return out;
}

Expr substitute(const Expr& e, const std::string& var,
                const Expr& replacement) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return e;
    case ExprKind::Variable:
      return e.name() == var ? replacement : e;
    default: {
      std::vector<Expr> kids;
      kids.reserve(e.children().size());
      bool changed = false;
      for (const Expr& c : e.children()) {
        kids.push_back(substitute(c, var, replacement));
        changed = changed || !structurally_equal(kids.back(), c);
      }
      if (!changed) return e;
      switch (e.kind()) {
        case ExprKind::Sum: return Expr::sum(std::move(kids));
        case ExprKind::Product: return Expr::product(std::move(kids));
        case ExprKind::Quotient:
          return Expr::quotient(kids[0], kids[1]);
        case ExprKind::IntPower:
          return Expr::int_power(kids[0], e.exponent());
        case ExprKind::Sin: return Expr::sin(kids[0]);
        case ExprKind::Cos: return Expr::cos(kids[0]);
        case ExprKind::Exp: return Expr::exp(kids[0]);
        case ExprKind::Log: return Expr::log(kids[0]);
        case ExprKind::Negate: return Expr::negate(kids[0]);
        default: return e;
      }
    }
  }
}

namespace {

double eval_rec(const Expr& e, std::span<const std::string> names,
                std::span<const double> values) {
  switch (e.kind()) {
    case ExprKind::Constant:
      return e.value().as_double();
    case ExprKind::Variable: {
      for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == e.name()) return values[i];
      throw EvalError("unbound variable '" + e.name() + "'");
    }
    case ExprKind::Sum: {
      double s = 0;
      for (const Expr& c : e.children()) s += eval_rec(c, names, values);
      return s;
    }
    case ExprKind::Product: {
      double s = 1;
      for (const Expr& c : e.children()) s *= eval_rec(c, names, values);
      return s;
    }
    case ExprKind::Quotient: {
      double den = eval_rec(e.child(1), names, values);
      if (den == 0.0) throw EvalError("division by zero");
      return eval_rec(e.child(0), names, values) / den;
    }
    case ExprKind::IntPower: {
      double b = eval_rec(e.child(0), names, values);
      if (b == 0.0 && e.exponent() < 0)
        throw EvalError("division by zero (negative power of zero)");
      return std::pow(b, e.exponent());
    }
    case ExprKind::Sin:
      return std::sin(eval_rec(e.child(0), names, values));
    case ExprKind::Cos:
      return std::cos(eval_rec(e.child(0), names, values));
    case ExprKind::Exp:
      return std::exp(eval_rec(e.child(0), names, values));
    case ExprKind::Log: {
      double a = eval_rec(e.child(0), names, values);
      if (a <= 0.0) throw EvalError("log of non-positive value");
      return std::log(a);
    }
    case ExprKind::Negate:
      return -eval_rec(e.child(0), names, values);
  }
  throw EvalError("corrupt expression node");
}

}  // namespace

double evaluate(const Expr& e, std::span<const std::string> names,
                std::span<const double> values) {
  double v = eval_rec(e, names, values);
  if (!std::isfinite(v)) throw EvalError("non-finite result");
  return v;
}

CompiledExpr::CompiledExpr(const Expr& e, std::span<const std::string> names) {
  emit(e, names);
  // Stack depth bound: worst case one slot per instruction.
  max_stack_ = tape_.size() + 1;
}

void CompiledExpr::emit(const Expr& e, std::span<const std::string> names) {
  switch (e.kind()) {
    case ExprKind::Constant:
      tape_.push_back({Op::PushConst, 0, e.value().as_double()});
      break;
    case ExprKind::Variable: {
      int slot = -1;
      for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == e.name()) slot = static_cast<int>(i);
      if (slot < 0) throw EvalError("unbound variable '" + e.name() + "'");
      tape_.push_back({Op::Load, slot, 0});
      break;
    }
    case ExprKind::Sum:
      for (const Expr& c : e.children()) emit(c, names);
      tape_.push_back({Op::Add, static_cast<int>(e.children().size()), 0});
      break;
    case ExprKind::Product:
      for (const Expr& c : e.children()) emit(c, names);
      tape_.push_back({Op::Mul, static_cast<int>(e.children().size()), 0});
      break;
    case ExprKind::Quotient:
      emit(e.child(0), names);
      emit(e.child(1), names);
      tape_.push_back({Op::Div, 0, 0});
      break;
    case ExprKind::IntPower:
      emit(e.child(0), names);
      tape_.push_back({Op::PowI, e.exponent(), 0});
      break;
    case ExprKind::Sin:
      emit(e.child(0), names);
      tape_.push_back({Op::Sin, 0, 0});
      break;
    case ExprKind::Cos:
      emit(e.child(0), names);
      tape_.push_back({Op::Cos, 0, 0});
      break;
    case ExprKind::Exp:
      emit(e.child(0), names);
      tape_.push_back({Op::Exp, 0, 0});
      break;
    case ExprKind::Log:
      emit(e.child(0), names);
      tape_.push_back({Op::Log, 0, 0});
      break;
    case ExprKind::Negate:
      emit(e.child(0), names);
      tape_.push_back({Op::Neg, 0, 0});
      break;
  }
}

double CompiledExpr::operator()(std::span<const double> values) const {
  std::vector<double> stack;
  stack.reserve(max_stack_);
  for (const Ins& ins : tape_) {
    switch (ins.op) {
      case Op::PushConst:
        stack.push_back(ins.cval);
        break;
      case Op::Load:
        stack.push_back(values[ins.arg]);
        break;
      case Op::Add: {
        double s = 0;
        for (int i = 0; i < ins.arg; ++i) {
          s += stack.back();
          stack.pop_back();
        }
        stack.push_back(s);
        break;
      }
      case Op::Mul: {
        double s = 1;
        for (int i = 0; i < ins.arg; ++i) {
          s *= stack.back();
          stack.pop_back();
        }
        stack.push_back(s);
        break;
      }
      case Op::Div: {
        double b = stack.back();
        stack.pop_back();
        if (b == 0.0) throw EvalError("division by zero");
        stack.back() /= b;
        break;
      }
      case Op::PowI: {
        double b = stack.back();
        if (b == 0.0 && ins.arg < 0)
          throw EvalError("division by zero (negative power of zero)");
        stack.back() = std::pow(b, ins.arg);
        break;
      }
      case Op::Sin: stack.back() = std::sin(stack.back()); break;
      case Op::Cos: stack.back() = std::cos(stack.back()); break;
      case Op::Exp: stack.back() = std::exp(stack.back()); break;
      case Op::Log:
        if (stack.back() <= 0.0) throw EvalError("log of non-positive value");
        stack.back() = std::log(stack.back());
        break;
      case Op::Neg: stack.back() = -stack.back(); break;
    }
  }
  double v = stack.back();
  if (!std::isfinite(v)) throw EvalError("non-finite result");
  return v;
}

ZeroResult is_zero(const Expr& e, std::span<const std::string> coords,
                   int trials, uint64_t seed, double tol) {
  Expr s = simplify(e);
  if (s.is_literal_zero()) return {ZeroVerdict::CertifiedZero, {}, 0.0};

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  double max_abs = 0.0;
  std::vector<double> worst;
  int done = 0, attempts = 0;
  const int max_attempts = trials * 50 + 100;
  while (done < trials && attempts < max_attempts) {
    ++attempts;
    std::vector<double> p(coords.size());
    for (double& x : p) x = dist(rng);
    try {
      double v = evaluate(s, coords, p);
      ++done;
      if (std::abs(v) > max_abs) {
        max_abs = std::abs(v);
        worst = p;
      }
    } catch (const EvalError&) {
      // singular point: resample
    }
  }
  if (done == 0)
    return {ZeroVerdict::NonzeroWitness, {}, std::nan("")};
  if (max_abs < tol) return {ZeroVerdict::NumericallyZero, {}, max_abs};
  return {ZeroVerdict::NonzeroWitness, worst, max_abs};
}

ScalarField make_field(Expr expr, std::vector<std::string> coords) {
  for (const std::string& v : free_variables(expr)) {
    if (std::find(coords.begin(), coords.end(), v) == coords.end())
      throw DimensionError("expression references undeclared coordinate '" +
                           v + "'");
  }
  return {std::move(expr), std::move(coords)};
}

ScalarField parse_field(std::string_view text,
                        std::vector<std::string> coords) {
  Expr e = parse(text, coords);
  return {std::move(e), std::move(coords)};
}

VectorField make_vector_field(std::vector<Expr> components,
                              std::vector<std::string> coords) {
  for (const Expr& c : components)
    for (const std::string& v : free_variables(c))
      if (std::find(coords.begin(), coords.end(), v) == coords.end())
        throw DimensionError("component references undeclared coordinate '" +
                             v + "'");
  return {std::move(components), std::move(coords)};
}

std::vector<std::string> default_coords(int n) {
  if (n == 1) return {"x"};
  if (n == 2) return {"x", "y"};
  if (n == 3) return {"x", "y", "z"};
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

}  // namespace nambu
