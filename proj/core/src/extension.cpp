#include "nambu/extension.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nambu {

namespace {

std::string fresh_name(const std::vector<std::string>& taken,
                       const std::string& base) {
  std::string name = base;
  while (std::find(taken.begin(), taken.end(), name) != taken.end())
    name += "_";
  return name;
}

// (arg)^{1/n} for arg > 0, as exp(log(arg)/n).
Expr nth_root(const Expr& arg, int n) {
  if (n == 1) return arg;
  return Expr::exp(Expr::quotient(Expr::log(arg), Expr::integer(n)));
}

}  // namespace

VectorField ExtendedGenerator::full() const {
  std::vector<Expr> comps = base.L.components;
  comps.push_back(fiber_component);
  return {std::move(comps), coords};
}

KExtension extend_to_k(std::span<const ScalarField> hamiltonians) {
  GeneratorT t = modified_generator(hamiltonians);
  int n = t.L.dim();
  std::string k = fresh_name(t.L.coords, "k");
  std::vector<std::string> ext = t.L.coords;
  ext.push_back(k);

  Expr fiber = simplify(Expr::integer(n) * t.H.expr * Expr::variable(k));
  ExtendedGenerator gen{std::move(t), k, std::move(fiber), ext};

  Expr root = nth_root(Expr::integer(n) * Expr::variable(k), n);
  std::vector<ScalarField> hs;
  for (const ScalarField& H : hamiltonians)
    hs.push_back({simplify(H.expr * root), ext});

  std::vector<ScalarField> base(hamiltonians.begin(), hamiltonians.end());
  return {std::move(gen), std::move(hs), std::move(base)};
}

LPullback pullback_to_l(const KExtension& ext) {
  int n = ext.gen.base.L.dim();
  std::vector<std::string> lcoords = ext.gen.base.L.coords;
  std::string l = fresh_name(lcoords, "l");
  lcoords.push_back(l);
  Expr lv = Expr::variable(l);

  Expr vol = simplify(Expr::integer(n) * Expr::int_power(lv, n - 1));
  Expr tensor = simplify(
      Expr::quotient(Expr::int_power(lv, 1 - n), Expr::integer(n)));

  Expr root_n = nth_root(Expr::integer(n), n);
  std::vector<ScalarField> hs;
  for (const ScalarField& H : ext.base_hamiltonians)
    hs.push_back({simplify(root_n * lv * H.expr), lcoords});

  return {{vol, lcoords}, {tensor, lcoords}, std::move(hs), l};
}

ScalarField homogeneous_bracket(std::span<const ScalarField> fields,
                                const std::string& fiber) {
  if (fields.empty())
    throw DimensionError("homogeneous bracket needs arguments");
  size_t n = fields[0].coords.size();
  if (fields.size() != n + 1)
    throw DimensionError("homogeneous bracket takes n+1 arguments");
  std::vector<std::string> ext = fields[0].coords;
  std::string y = fresh_name(ext, fiber);
  ext.push_back(y);
  Expr yv = Expr::variable(y);

  // Jacobian of the lifts y*f_i with respect to (x_1..x_n, y).
  std::vector<std::vector<Expr>> jac;
  for (const ScalarField& f : fields) {
    Expr lift = yv * f.expr;
    std::vector<Expr> row;
    for (const std::string& c : ext) row.push_back(differentiate(lift, c));
    jac.push_back(std::move(row));
  }
  // cofactor expansion along the fiber column (placed last) differs from
  // the alternating-sum convention by the column swap parity (-1)^n
  Expr bracket = Expr::int_power(yv, 1 - static_cast<int>(n)) * det(jac);
  if (n % 2 == 1) bracket = Expr::negate(bracket);
  return {simplify(bracket), ext};
}

ScalarField modified_from_extension(std::span<const ScalarField> fields) {
  ScalarField hb = homogeneous_bracket(fields);
  const std::string& y = hb.coords.back();
  Expr restricted = substitute(hb.expr, y, Expr::integer(1));
  return {simplify(restricted), fields[0].coords};
}

CocycleResult cyclic_cocycle(std::span<const ScalarField> fields, int grid) {
  if (fields.empty()) throw DimensionError("cocycle needs arguments");
  size_t n = fields[0].coords.size();
  if (fields.size() != n + 1)
    throw DimensionError("cocycle takes n+1 arguments");
  if (grid < 16) throw DimensionError("cocycle grid must be >= 16");

  const auto& coords = fields[0].coords;
  // tau integrand: f0 det[d_j f_i], i = 1..n
  std::vector<std::vector<Expr>> jac;
  for (size_t i = 1; i <= n; ++i) {
    std::vector<Expr> row;
    for (const std::string& c : coords)
      row.push_back(differentiate(fields[i].expr, c));
    jac.push_back(std::move(row));
  }
  Expr tau_integrand = fields[0].expr * det(jac);
  Expr mb = modified_nambu(fields).expr;

  CompiledExpr ct(simplify(tau_integrand), coords);
  CompiledExpr cb(mb, coords);

  double step = 2.0 * std::numbers::pi / grid;
  std::vector<int> idx(n, 0);
  std::vector<double> p(n);
  double tau = 0.0, bi = 0.0;
  for (;;) {
    for (size_t i = 0; i < n; ++i) p[i] = idx[i] * step;
    tau += ct(p);
    bi += cb(p);
    size_t i = 0;
    while (i < n && ++idx[i] == grid) idx[i++] = 0;
    if (i == n) break;
  }
  double weight = std::pow(step, static_cast<double>(n));
  return {tau * weight, bi * weight / static_cast<double>(n + 1)};
}

}  // namespace nambu
