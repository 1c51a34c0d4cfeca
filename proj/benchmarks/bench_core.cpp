#include <benchmark/benchmark.h>

#include "nambu/extension.hpp"

using namespace nambu;

namespace {

const std::vector<std::string> xy{"x", "y"};
const std::vector<std::string> xyz{"x", "y", "z"};

ScalarField quadratic(const std::vector<std::string>& coords, int salt) {
  Expr e = Expr::integer(salt % 3 - 1);
  int c = salt;
  for (const auto& v : coords) {
    e = e + Expr::integer(++c % 5 - 2) * Expr::variable(v);
    for (const auto& w : coords)
      e = e + Expr::integer(++c % 5 - 2) * Expr::variable(v) *
                  Expr::variable(w);
  }
  return {simplify(e), coords};
}

void BM_simplify_expand(benchmark::State& state) {
  Expr base = parse("(x + 2*y - 1)", xy);
  Expr e = Expr::int_power(base, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(simplify(e));
}
BENCHMARK(BM_simplify_expand)->Arg(4)->Arg(8)->Arg(12);

void BM_modified_bracket_n2(benchmark::State& state) {
  std::vector<ScalarField> fs{quadratic(xy, 1), quadratic(xy, 2),
                              quadratic(xy, 3)};
  for (auto _ : state) benchmark::DoNotOptimize(modified_nambu(fs));
}
BENCHMARK(BM_modified_bracket_n2);

void BM_nambu_bracket_n3(benchmark::State& state) {
  std::vector<ScalarField> fs{quadratic(xyz, 1), quadratic(xyz, 2),
                              quadratic(xyz, 3)};
  for (auto _ : state) benchmark::DoNotOptimize(nambu::nambu(fs));
}
BENCHMARK(BM_nambu_bracket_n3);

void BM_fi_residual_n2(benchmark::State& state) {
  std::vector<ScalarField> hs{quadratic(xy, 1), quadratic(xy, 2)};
  ScalarField f = quadratic(xy, 3), g = quadratic(xy, 4), h = quadratic(xy, 5);
  for (auto _ : state) {
    auto t = [&](const ScalarField& p) {
      return modified_nambu(std::array{hs[0], hs[1], p});
    };
    Expr lhs = t(modified_nambu(std::array{f, g, h})).expr;
    Expr rhs = modified_nambu(std::array{t(f), g, h}).expr +
               modified_nambu(std::array{f, t(g), h}).expr +
               modified_nambu(std::array{f, g, t(h)}).expr;
    benchmark::DoNotOptimize(simplify(lhs - rhs));
  }
}
BENCHMARK(BM_fi_residual_n2);

void BM_compiled_eval(benchmark::State& state) {
  Expr e = parse("x^3*y - 2*sin(x)*cos(y) + exp(x*y/8)", xy);
  CompiledExpr c(e, xy);
  std::vector<double> p{0.7, -1.3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(c(p));
    p[0] = -p[0];
  }
}
BENCHMARK(BM_compiled_eval);

void BM_integrate_characteristic(benchmark::State& state) {
  std::vector<ScalarField> hs{quadratic(xy, 1), quadratic(xy, 2)};
  GeneratorT gen = modified_generator(hs);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        integrate_generator(gen, {0.3, -0.2}, 0.1,
                            static_cast<int>(state.range(0))));
}
BENCHMARK(BM_integrate_characteristic)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
