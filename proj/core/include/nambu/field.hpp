#pragma once

#include <string>
#include <vector>

#include "nambu/expr.hpp"

namespace nambu {

/// Coordinates of a point in the ambient space.
using Point = std::vector<double>;

struct DimensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An Expr together with its ambient coordinate system.
struct ScalarField {
  Expr expr;
  std::vector<std::string> coords;

  int dim() const { return static_cast<int>(coords.size()); }
  double operator()(const Point& p) const {
    if (p.size() != coords.size())
      throw DimensionError("point dimension does not match field");
    return evaluate(expr, coords, p);
  }
};

/// Checks that expr only references declared coordinates.
ScalarField make_field(Expr expr, std::vector<std::string> coords);
ScalarField parse_field(std::string_view text, std::vector<std::string> coords);

struct VectorField {
  std::vector<Expr> components;
  std::vector<std::string> coords;

  int dim() const { return static_cast<int>(coords.size()); }
};

VectorField make_vector_field(std::vector<Expr> components,
                              std::vector<std::string> coords);

/// Default coordinate names: x,y for n=2; x,y,z for n=3; x1..xn otherwise.
std::vector<std::string> default_coords(int n);

}  // namespace nambu
