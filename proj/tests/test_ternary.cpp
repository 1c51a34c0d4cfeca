#include <random>

#include "doctest.h"
#include "nambu/ternary.hpp"

using namespace nambu;

namespace {

SquareMatrix random_matrix(std::mt19937_64& rng, int size) {
  std::uniform_real_distribution<double> d(-2, 2);
  SquareMatrix m(size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) m.at(i, j) = d(rng);
  return m;
}

const std::vector<std::string> xy{"x", "y"};
ScalarField f2(const std::string& s) { return parse_field(s, xy); }

}  // namespace

TEST_SUITE_BEGIN("ternary");

TEST_CASE("alternating matrix product against the written-out sum") {
  std::mt19937_64 rng(101);
  for (int size : {2, 3, 4}) {
    for (int i = 0; i < 5; ++i) {
      SquareMatrix a = random_matrix(rng, size), b = random_matrix(rng, size),
                   c = random_matrix(rng, size);
      SquareMatrix got = alternating_triple(a, b, c);
      // independent oracle: the six signed words written out literally
      SquareMatrix want = a * b * c - a * c * b - b * a * c + b * c * a +
                          c * a * b - c * b * a;
      CHECK((got - want).max_abs() < 1e-12);
    }
  }
}

TEST_CASE("alternating product vanishes on repeated or commuting arguments") {
  std::mt19937_64 rng(103);
  SquareMatrix a = random_matrix(rng, 3), b = random_matrix(rng, 3);
  CHECK(alternating_triple(a, a, b).max_abs() < 1e-12);
  // powers of one matrix commute pairwise
  CHECK(alternating_triple(a, a * a, a * a * a).max_abs() < 1e-8);
}

TEST_CASE("functional-weighted ternary bracket") {
  std::mt19937_64 rng(107);
  SquareMatrix a = random_matrix(rng, 3), b = random_matrix(rng, 3),
               c = random_matrix(rng, 3);
  for (auto rho : {RhoFunctional::Trace, RhoFunctional::EntryOneOne}) {
    SquareMatrix lhs = rho_ternary(a, b, c, rho);
    SquareMatrix swapped = rho_ternary(b, a, c, rho);
    CHECK((lhs + swapped).max_abs() < 1e-12);  // alternating
    CHECK(rho_ternary(a, a, a, rho).max_abs() < 1e-12);
  }
  // the two functionals genuinely differ
  SquareMatrix t = rho_ternary(a, b, c, RhoFunctional::Trace);
  SquareMatrix e = rho_ternary(a, b, c, RhoFunctional::EntryOneOne);
  CHECK((t - e).max_abs() > 1e-6);
}

TEST_CASE("deformed triple product, symbolic deformation parameter") {
  ScalarField r = deformed_triple(f2("x"), f2("y"), f2("1"),
                                  {.truncation_order = 1});
  // K(x, y, 1) = x*y + h at first order
  std::vector<std::string> xyh{"x", "y", "h"};
  CHECK(r.coords == xyh);
  CHECK(simplify(r.expr - parse("x*y + h", xyh)).is_literal_zero());
}

TEST_CASE("deformed triple product, numeric deformation parameter") {
  ScalarField r = deformed_triple(f2("x"), f2("y"), f2("1"),
                                  {.truncation_order = 3, .h = 0.25});
  CHECK(r.coords == xy);
  // higher derivatives vanish for linear inputs: same value as order 1
  CHECK(simplify(r.expr - parse("x*y + 0.25", xy)).is_literal_zero());
}

TEST_CASE("deformed product at order zero is the plain product") {
  std::mt19937_64 rng(109);
  std::uniform_int_distribution<int> c(-3, 3);
  for (int i = 0; i < 5; ++i) {
    ScalarField e{simplify(Expr::integer(c(rng)) * parse("x^2 + y", xy)), xy};
    ScalarField f{simplify(Expr::integer(c(rng)) * parse("x*y", xy)), xy};
    ScalarField g{simplify(Expr::integer(c(rng)) * parse("y^2 - x", xy)), xy};
    ScalarField r = deformed_triple(e, f, g, {.truncation_order = 0, .h = 1.0});
    CHECK(simplify(r.expr - e.expr * f.expr * g.expr).is_literal_zero());
  }
}

TEST_CASE("deformed product rejects non-polynomial input") {
  CHECK_THROWS_AS(deformed_triple(f2("sin(x)"), f2("y"), f2("1"),
                                  {.truncation_order = 1}),
                  DimensionError);
}

TEST_CASE("first-order term is the sum of pairwise couplings") {
  // independent oracle: compute the h-coefficient by finite differencing
  // in h and compare against the three wedge couplings applied by hand
  ScalarField e = f2("x^2"), f = f2("y"), g = f2("x*y");
  ScalarField r = deformed_triple(e, f, g, {.truncation_order = 1, .h = 1.0});
  ScalarField r0 = deformed_triple(e, f, g, {.truncation_order = 0, .h = 1.0});
  Expr coeff = simplify(r.expr - r0.expr);

  auto dx = [](const Expr& p) { return differentiate(p, "x"); };
  auto dy = [](const Expr& p) { return differentiate(p, "y"); };
  auto wedge = [&](const Expr& a, const Expr& b) {
    return dx(a) * dy(b) - dy(a) * dx(b);
  };
  Expr want = wedge(e.expr, f.expr) * g.expr +
              e.expr * wedge(f.expr, g.expr) +
              wedge(e.expr, g.expr) * f.expr;
  // the middle slot of the (1,3) coupling passes through untouched
  CHECK(simplify(coeff - want).is_literal_zero());
}

TEST_SUITE_END();
