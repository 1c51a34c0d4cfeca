#include "nambu/brackets.hpp"

namespace nambu {

namespace {

void require_same_coords(std::span<const ScalarField> fields) {
  for (size_t i = 1; i < fields.size(); ++i)
    if (fields[i].coords != fields[0].coords)
      throw DimensionError("bracket arguments live in different coordinates");
}

Expr d(const ScalarField& f, int i) {
  return differentiate(f.expr, f.coords[i]);
}

}  // namespace

Expr det(const std::vector<std::vector<Expr>>& m) {
  size_t n = m.size();
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  std::vector<Expr> terms;
  for (size_t j = 0; j < n; ++j) {
    std::vector<std::vector<Expr>> minor;
    for (size_t r = 1; r < n; ++r) {
      std::vector<Expr> row;
      for (size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    Expr t = m[0][j] * det(minor);
    terms.push_back(j % 2 == 0 ? t : Expr::negate(t));
  }
  return Expr::sum(std::move(terms));
}

JacobiStructure make_jacobi_structure(std::vector<std::vector<Expr>> eta,
                                      VectorField E) {
  size_t n = E.coords.size();
  if (eta.size() != n)
    throw DimensionError("eta size does not match coordinate count");
  for (const auto& row : eta)
    if (row.size() != n)
      throw DimensionError("eta is not square");
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (!simplify(eta[i][j] + eta[j][i]).is_literal_zero())
        throw DimensionError("eta is not antisymmetric");
  return {std::move(eta), std::move(E)};
}

ScalarField poisson(const ScalarField& f, const ScalarField& g) {
  require_same_coords(std::array{f, g});
  int n = f.dim();
  if (n % 2 != 0)
    throw DimensionError("Poisson bracket requires even dimension");
  int m = n / 2;
  std::vector<Expr> terms;
  for (int i = 0; i < m; ++i) {
    terms.push_back(d(f, i) * d(g, i + m));
    terms.push_back(Expr::negate(d(f, i + m) * d(g, i)));
  }
  return {simplify(Expr::sum(std::move(terms))), f.coords};
}

ScalarField contact(const ScalarField& f, const ScalarField& g) {
  require_same_coords(std::array{f, g});
  int dim = f.dim();
  if (dim % 2 == 0)
    throw DimensionError("contact bracket requires odd dimension");
  int n = (dim - 1) / 2;
  std::vector<Expr> terms;
  for (int i = 0; i < n; ++i) {
    terms.push_back(d(f, i) * d(g, i + n));
    terms.push_back(Expr::negate(d(g, i) * d(f, i + n)));
  }
  auto multiplier = [&](const ScalarField& h) {
    std::vector<Expr> t;
    for (int i = 0; i < 2 * n; ++i)
      t.push_back(Expr::variable(f.coords[i]) * d(h, i));
    t.push_back(Expr::integer(-2) * h.expr);
    return Expr::sum(std::move(t));
  };
  terms.push_back(d(f, dim - 1) * multiplier(g));
  terms.push_back(Expr::negate(d(g, dim - 1) * multiplier(f)));
  return {simplify(Expr::sum(std::move(terms))), f.coords};
}

ScalarField jacobi(const ScalarField& f, const ScalarField& g,
                   const JacobiStructure& s) {
  require_same_coords(std::array{f, g});
  size_t n = f.coords.size();
  if (s.E.coords != f.coords)
    throw DimensionError("Jacobi structure dimension mismatch");
  std::vector<Expr> terms;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      terms.push_back(s.eta[i][j] * d(f, i) * d(g, j));
  Expr Ef = Expr::integer(0), Eg = Expr::integer(0);
  for (size_t i = 0; i < n; ++i) {
    Ef = Ef + s.E.components[i] * d(f, i);
    Eg = Eg + s.E.components[i] * d(g, i);
  }
  terms.push_back(f.expr * Eg);
  terms.push_back(Expr::negate(g.expr * Ef));
  return {simplify(Expr::sum(std::move(terms))), f.coords};
}

ScalarField nambu(std::span<const ScalarField> fields,
                  const std::optional<NambuDensity>& density) {
  if (fields.empty()) throw DimensionError("Nambu bracket needs arguments");
  require_same_coords(fields);
  size_t n = fields[0].coords.size();
  if (fields.size() != n)
    throw DimensionError("Nambu bracket on R^n takes exactly n arguments");
  std::vector<std::vector<Expr>> jac(n, std::vector<Expr>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      jac[i][j] = d(fields[i], static_cast<int>(j));
  Expr result = det(jac);
  if (density) {
    if (density->c.coords != fields[0].coords)
      throw DimensionError("density dimension mismatch");
    result = density->c.expr * result;
  }
  return {simplify(result), fields[0].coords};
}

ScalarField modified_nambu(std::span<const ScalarField> fields) {
  if (fields.empty())
    throw DimensionError("modified bracket needs arguments");
  require_same_coords(fields);
  size_t n = fields[0].coords.size();
  if (fields.size() != n + 1)
    throw DimensionError(
        "modified bracket on R^n takes exactly n+1 arguments");
  std::vector<Expr> terms;
  for (size_t i = 0; i <= n; ++i) {
    std::vector<ScalarField> rest;
    for (size_t j = 0; j <= n; ++j)
      if (j != i) rest.push_back(fields[j]);
    Expr t = fields[i].expr * nambu(rest).expr;
    terms.push_back(i % 2 == 0 ? t : Expr::negate(t));
  }
  return {simplify(Expr::sum(std::move(terms))), fields[0].coords};
}

}  // namespace nambu
