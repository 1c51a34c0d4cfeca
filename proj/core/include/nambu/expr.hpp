#pragma once

#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "nambu/number.hpp"

namespace nambu {

enum class ExprKind {
  Constant,
  Variable,
  Sum,
  Product,
  Quotient,
  IntPower,
  Sin,
  Cos,
  Exp,
  Log,
  Negate,
};

/// Immutable expression tree. Handles share nodes freely; construction is
/// the only mutation point, so concurrent reads are race-free.
class Expr {
 public:
  Expr();  // the constant 0

  static Expr constant(Number v);
  static Expr integer(long long n) { return constant(Number(n)); }
  static Expr real(double d) { return constant(Number::real(d)); }
  static Expr variable(std::string name);
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr quotient(Expr num, Expr den);
  static Expr int_power(Expr base, int exponent);
  static Expr sin(Expr e);
  static Expr cos(Expr e);
  static Expr exp(Expr e);
  static Expr log(Expr e);
  static Expr negate(Expr e);

  ExprKind kind() const { return node_->kind; }
  const Number& value() const { return node_->value; }
  const std::string& name() const { return node_->name; }
  int exponent() const { return node_->exponent; }
  const std::vector<Expr>& children() const { return node_->children; }
  const Expr& child(size_t i) const { return node_->children[i]; }

  bool is_constant() const { return kind() == ExprKind::Constant; }
  bool is_literal_zero() const { return is_constant() && value().is_zero(); }
  bool is_literal_one() const { return is_constant() && value().is_one(); }

 private:
  struct Node {
    ExprKind kind;
    Number value;             // Constant
    std::string name;         // Variable
    int exponent = 0;         // IntPower
    std::vector<Expr> children;
  };
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Expr make(Node n);
  std::shared_ptr<const Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

/// Structural ordering: total, deterministic, used for canonical forms.
int compare(const Expr& a, const Expr& b);
bool structurally_equal(const Expr& a, const Expr& b);

std::string to_string(const Expr& e);
std::set<std::string> free_variables(const Expr& e);
Expr substitute(const Expr& e, const std::string& var, const Expr& replacement);

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Pointwise evaluation; throws EvalError on domain errors or a
/// non-finite result.
double evaluate(const Expr& e, std::span<const std::string> names,
                std::span<const double> values);

/// Expression flattened to a postfix tape with resolved variable slots;
/// much faster than tree walking inside integrator loops.
class CompiledExpr {
 public:
  CompiledExpr() = default;
  CompiledExpr(const Expr& e, std::span<const std::string> names);
  double operator()(std::span<const double> values) const;

 private:
  enum class Op : uint8_t {
    PushConst, Load, Add, Mul, Div, PowI, Sin, Cos, Exp, Log, Neg
  };
  struct Ins {
    Op op;
    int arg = 0;       // Load slot, PowI exponent, Add/Mul arity
    double cval = 0.0; // PushConst
  };
  std::vector<Ins> tape_;
  size_t max_stack_ = 1;
  void emit(const Expr& e, std::span<const std::string> names);
};

/// Exact symbolic partial derivative, canonically simplified.
Expr differentiate(const Expr& e, const std::string& var);

/// Deterministic canonical form. Polynomial content is expanded into a
/// monomial sum over atoms (variables and unexpanded transcendental
/// subtrees) ordered graded-lexicographically with exact rational
/// coefficients; an identically zero polynomial becomes the literal 0.
/// Transcendental atoms are never expanded, so e.g. sin(x)^2 + cos(x)^2
/// stays as written.
Expr simplify(const Expr& e);

enum class ZeroVerdict { CertifiedZero, NumericallyZero, NonzeroWitness };

struct ZeroResult {
  ZeroVerdict verdict;
  std::vector<double> witness;   // filled for NonzeroWitness
  double max_abs = 0.0;
  bool passed() const { return verdict != ZeroVerdict::NonzeroWitness; }
  bool certified() const { return verdict == ZeroVerdict::CertifiedZero; }
};

/// Zero test. Certified iff simplify() yields the literal 0; otherwise
/// samples `trials` random points in [-2,2]^n, rejecting points where
/// evaluation hits a singularity.
ZeroResult is_zero(const Expr& e, std::span<const std::string> coords,
                   int trials = 20, uint64_t seed = 0x9e3779b9,
                   double tol = 1e-9);

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, size_t offset)
      : std::runtime_error(msg), offset(offset) {}
  size_t offset;
};

/// Parses the infix grammar (+ - * / ^ with integer exponents, sin, cos,
/// exp, log, parentheses, numeric literals). Identifiers must be declared
/// coordinates. Integer literals are exact; literals with a decimal point
/// or exponent carry float semantics.
Expr parse(std::string_view text, std::span<const std::string> coords);

}  // namespace nambu
