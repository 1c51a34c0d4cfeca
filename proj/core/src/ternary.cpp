#include "nambu/ternary.hpp"

#include <algorithm>
#include <cmath>

namespace nambu {

SquareMatrix SquareMatrix::identity(int size) {
  SquareMatrix m(size);
  for (int i = 0; i < size; ++i) m.at(i, i) = 1.0;
  return m;
}

double SquareMatrix::trace() const {
  double t = 0;
  for (int i = 0; i < size_; ++i) t += at(i, i);
  return t;
}

double SquareMatrix::max_abs() const {
  double m = 0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.size_ != b.size_) throw DimensionError("matrix size mismatch");
  SquareMatrix out(a.size_);
  for (size_t i = 0; i < a.data_.size(); ++i)
    out.data_[i] = a.data_[i] + b.data_[i];
  return out;
}

SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b) {
  return a + (-1.0 * b);
}

SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
  if (a.size_ != b.size_) throw DimensionError("matrix size mismatch");
  SquareMatrix out(a.size_);
  for (int i = 0; i < a.size_; ++i)
    for (int k = 0; k < a.size_; ++k) {
      double v = a.at(i, k);
      for (int j = 0; j < a.size_; ++j) out.at(i, j) += v * b.at(k, j);
    }
  return out;
}

SquareMatrix operator*(double s, const SquareMatrix& a) {
  SquareMatrix out(a.size_);
  for (size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = s * a.data_[i];
  return out;
}

SquareMatrix commutator(const SquareMatrix& a, const SquareMatrix& b) {
  return a * b - b * a;
}

SquareMatrix alternating_triple(const SquareMatrix& a1, const SquareMatrix& a2,
                                const SquareMatrix& a3) {
  if (a1.size() != a2.size() || a2.size() != a3.size())
    throw DimensionError("matrix size mismatch");
  const SquareMatrix* m[3] = {&a1, &a2, &a3};
  int perm[3] = {0, 1, 2};
  SquareMatrix out(a1.size());
  // even permutations of (0,1,2) are the cyclic ones
  do {
    int inversions = (perm[0] > perm[1]) + (perm[0] > perm[2]) +
                     (perm[1] > perm[2]);
    double sign = inversions % 2 == 0 ? 1.0 : -1.0;
    out = out + sign * (*m[perm[0]] * *m[perm[1]] * *m[perm[2]]);
  } while (std::next_permutation(perm, perm + 3));
  return out;
}

SquareMatrix rho_ternary(const SquareMatrix& a1, const SquareMatrix& a2,
                         const SquareMatrix& a3, RhoFunctional rho) {
  if (a1.size() != a2.size() || a2.size() != a3.size())
    throw DimensionError("matrix size mismatch");
  auto r = [rho](const SquareMatrix& a) {
    return rho == RhoFunctional::Trace ? a.trace() : a.at(0, 0);
  };
  return r(a1) * commutator(a2, a3) + r(a2) * commutator(a3, a1) +
         r(a3) * commutator(a1, a2);
}

namespace {

bool is_polynomial(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Constant:
    case ExprKind::Variable:
      return true;
    case ExprKind::Sum:
    case ExprKind::Product:
    case ExprKind::Negate: {
      for (const Expr& c : e.children())
        if (!is_polynomial(c)) return false;
      return true;
    }
    case ExprKind::IntPower:
      return e.exponent() >= 0 && is_polynomial(e.child(0));
    case ExprKind::Quotient:
      return e.child(1).is_constant() && is_polynomial(e.child(0));
    default:
      return false;
  }
}

}  // namespace

ScalarField deformed_triple(const ScalarField& e, const ScalarField& f,
                            const ScalarField& g,
                            const DeformedProductConfig& cfg) {
  if (e.dim() != 2 || e.coords != f.coords || e.coords != g.coords)
    throw DimensionError("deformed product takes three fields on R^2");
  for (const ScalarField* s : {&e, &f, &g})
    if (!is_polynomial(s->expr))
      throw DimensionError("deformed product requires polynomial input");
  if (cfg.truncation_order < 0)
    throw DimensionError("truncation order must be >= 0");

  const std::string& xb = e.coords[0];
  const std::string& yb = e.coords[1];
  // three independent coordinate copies
  std::vector<std::string> slot_x, slot_y, ring;
  for (int s = 1; s <= 3; ++s) {
    slot_x.push_back(xb + "__" + std::to_string(s));
    slot_y.push_back(yb + "__" + std::to_string(s));
    ring.push_back(slot_x.back());
    ring.push_back(slot_y.back());
  }
  auto on_slot = [&](const ScalarField& field, int s) {
    Expr t = substitute(field.expr, xb, Expr::variable(slot_x[s]));
    return substitute(t, yb, Expr::variable(slot_y[s]));
  };
  Expr tensor = simplify(on_slot(e, 0) * on_slot(f, 1) * on_slot(g, 2));

  auto wedge = [&](const Expr& p, int s1, int s2) {
    return differentiate(differentiate(p, slot_x[s1]), slot_y[s2]) -
           differentiate(differentiate(p, slot_y[s1]), slot_x[s2]);
  };
  auto apply_d = [&](const Expr& p) {
    return simplify(wedge(p, 0, 1) + wedge(p, 1, 2) + wedge(p, 0, 2));
  };

  Expr hval = cfg.h ? Expr::constant(Number::real(*cfg.h))
                    : Expr::variable("h");
  std::vector<Expr> series;
  Expr power = Expr::integer(1);
  Number inv_fact(1);
  Expr current = tensor;
  for (int j = 0; j <= cfg.truncation_order; ++j) {
    if (j > 0) {
      current = apply_d(current);
      power = power * hval;
      inv_fact = inv_fact / Number(j);
    }
    if (current.is_literal_zero()) break;
    series.push_back(Expr::constant(inv_fact) * power * current);
  }
  Expr result = Expr::sum(std::move(series));
  // restrict to the diagonal
  for (int s = 0; s < 3; ++s) {
    result = substitute(result, slot_x[s], Expr::variable(xb));
    result = substitute(result, slot_y[s], Expr::variable(yb));
  }
  std::vector<std::string> coords = e.coords;
  if (!cfg.h) coords.push_back("h");
  return {simplify(result), std::move(coords)};
}

}  // namespace nambu
