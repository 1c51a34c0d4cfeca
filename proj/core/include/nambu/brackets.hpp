#pragma once

#include <optional>
#include <span>

#include "nambu/field.hpp"

namespace nambu {

/// Scalar multiple c(x) of the standard n-vector.
struct NambuDensity {
  ScalarField c;
};

/// Bivector components eta[i][j] (antisymmetric) plus a vector field E.
struct JacobiStructure {
  std::vector<std::vector<Expr>> eta;
  VectorField E;
};

/// Validates eta antisymmetry componentwise (certified zero).
JacobiStructure make_jacobi_structure(std::vector<std::vector<Expr>> eta,
                                      VectorField E);

/// Canonical Poisson bracket on R^{2m}, coordinates ordered
/// (x1..xm, y1..ym): {f,g} = sum_i (d_{xi}f d_{yi}g - d_{yi}f d_{xi}g).
ScalarField poisson(const ScalarField& f, const ScalarField& g);

/// Contact bracket on R^{2n+1} in the normal-form coordinates. The -2g
/// and -2f terms sit inside the multiplier groups; of the four possible
/// groupings this is the only one satisfying the Jacobi identity (see
/// the selection test in tests/test_brackets.cpp).
ScalarField contact(const ScalarField& f, const ScalarField& g);

/// {f,g} = eta(df,dg) + f Eg - g Ef.
ScalarField jacobi(const ScalarField& f, const ScalarField& g,
                   const JacobiStructure& s);

/// n-ary Nambu bracket: c(x) * det[d_j f_i]. Default density c = 1.
ScalarField nambu(std::span<const ScalarField> fields,
                  const std::optional<NambuDensity>& density = {});

/// (n+1)-ary modified bracket:
/// sum_i (-1)^{i+1} f_i {f_1,..,^f_i,..,f_{n+1}}_N on R^n.
ScalarField modified_nambu(std::span<const ScalarField> fields);

/// Determinant of a square Expr matrix by Laplace expansion (not
/// simplified).
Expr det(const std::vector<std::vector<Expr>>& m);

}  // namespace nambu
