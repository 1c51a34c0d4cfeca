#pragma once

#include "nambu/dynamics.hpp"

namespace nambu {

/// Generator lifted to the extended phase space R^n x fiber.
struct ExtendedGenerator {
  GeneratorT base;
  std::string fiber;          // fiber coordinate name
  Expr fiber_component;       // coefficient of d/d(fiber)
  std::vector<std::string> coords;  // base coords + fiber

  /// The full vector field on the extended space.
  VectorField full() const;
};

struct KExtension {
  ExtendedGenerator gen;                      // T^(k) = L + n H k d_k
  std::vector<ScalarField> hamiltonians;      // h_i = H_i (n k)^{1/n}
  std::vector<ScalarField> base_hamiltonians; // the H_i
};

/// Lifts n Hamiltonians on R^n to the divergence-free generator T^(k)
/// on R^{n+1} together with the Nambu Hamiltonians generating it.
/// Domain: k > 0.
KExtension extend_to_k(std::span<const ScalarField> hamiltonians);

struct LPullback {
  ScalarField volume_density;            // n l^{n-1}
  ScalarField tensor_density;            // (1/n) l^{1-n}
  std::vector<ScalarField> hamiltonians; // h_i^(l) = n^{1/n} l H_i
  std::string fiber;
};

/// Pulls the k-space data back to the (x, l) coordinate system.
LPullback pullback_to_l(const KExtension& ext);

/// The one-homogeneous lift: y^{1-n} det[d(y f_1),..,d(y f_{n+1})] over
/// (x_1..x_n, y), not yet restricted to y = 1.
ScalarField homogeneous_bracket(std::span<const ScalarField> fields,
                                const std::string& fiber = "y");

/// Restriction of homogeneous_bracket to y = 1; reproduces
/// modified_nambu exactly for polynomial inputs.
ScalarField modified_from_extension(std::span<const ScalarField> fields);

struct CocycleResult {
  double tau;               // int f0 df1 ^ ... ^ dfn over the torus
  double bracket_integral;  // 1/(n+1) int [f0,..,fn] dvol
                            // (by parts, int of the bracket is (n+1) tau)
};

/// Rectangle rule on the uniform periodic grid over [0,2pi)^n; exact to
/// rounding for trigonometric polynomials below the Nyquist degree.
/// Caller contract: fields are periodic. Requires grid >= 16.
CocycleResult cyclic_cocycle(std::span<const ScalarField> fields, int grid);

}  // namespace nambu
