#include "nambu/dynamics.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace nambu {

ScalarField GeneratorT::compatibility_residual() const {
  ScalarField div = divergence(L);
  int n = L.dim();
  Expr r = div.expr + Expr::integer(n) * H.expr;
  return {simplify(r), L.coords};
}

namespace {

std::string fmt17(double v) {
  char buf[40];
  auto [p, ec] =
      std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  (void)ec;
  return std::string(buf, p);
}

}  // namespace

std::string Trajectory::to_csv(std::span<const std::string> coords) const {
  std::ostringstream os;
  os << "t";
  for (size_t i = 1; i <= coords.size(); ++i) os << ",x" << i;
  os << ",log_amp\n";
  for (size_t r = 0; r < times.size(); ++r) {
    os << fmt17(times[r]);
    for (double v : states[r]) os << ',' << fmt17(v);
    os << ',' << fmt17(log_amplitude[r]) << '\n';
  }
  return os.str();
}

VectorField hamiltonian_vector_field(const ScalarField& H) {
  int n = H.dim();
  if (n % 2 != 0)
    throw DimensionError("Hamiltonian vector field requires even dimension");
  int m = n / 2;
  std::vector<Expr> comps(n);
  for (int i = 0; i < m; ++i) {
    comps[i] = simplify(Expr::negate(differentiate(H.expr, H.coords[i + m])));
    comps[i + m] = differentiate(H.expr, H.coords[i]);
  }
  return {std::move(comps), H.coords};
}

VectorField nambu_vector_field(std::span<const ScalarField> hamiltonians,
                               const std::optional<NambuDensity>& density) {
  if (hamiltonians.empty())
    throw DimensionError("Nambu vector field needs Hamiltonians");
  const auto& coords = hamiltonians[0].coords;
  size_t n = coords.size();
  if (hamiltonians.size() != n - 1)
    throw DimensionError("Nambu vector field on R^n takes n-1 Hamiltonians");
  std::vector<Expr> comps;
  for (size_t i = 0; i < n; ++i) {
    std::vector<ScalarField> args(hamiltonians.begin(), hamiltonians.end());
    args.push_back({Expr::variable(coords[i]), coords});
    comps.push_back(nambu(args, density).expr);
  }
  return {std::move(comps), coords};
}

GeneratorT modified_generator(std::span<const ScalarField> hamiltonians) {
  if (hamiltonians.empty())
    throw DimensionError("modified generator needs Hamiltonians");
  const auto& coords = hamiltonians[0].coords;
  size_t n = coords.size();
  if (hamiltonians.size() != n)
    throw DimensionError("modified generator on R^n takes n Hamiltonians");
  std::vector<Expr> L(n, Expr::integer(0));
  for (size_t i = 0; i < n; ++i) {
    std::vector<ScalarField> rest;
    for (size_t j = 0; j < n; ++j)
      if (j != i) rest.push_back(hamiltonians[j]);
    VectorField x = nambu_vector_field(rest);
    Expr sign = Expr::integer(i % 2 == 0 ? 1 : -1);
    for (size_t c = 0; c < n; ++c)
      L[c] = L[c] + sign * hamiltonians[i].expr * x.components[c];
  }
  for (Expr& c : L) c = simplify(c);
  // multiplier slot of the alternating sum: sign (-1)^n on the last term
  ScalarField H = nambu(hamiltonians);
  if (n % 2 == 1) H.expr = simplify(Expr::negate(H.expr));
  return {{std::move(L), coords}, std::move(H)};
}

ScalarField divergence(const VectorField& v) {
  std::vector<Expr> terms;
  for (size_t i = 0; i < v.coords.size(); ++i)
    terms.push_back(differentiate(v.components[i], v.coords[i]));
  return {simplify(Expr::sum(std::move(terms))), v.coords};
}

GeneratorT automorphism_from_vector_field(const VectorField& v) {
  int n = v.dim();
  ScalarField div = divergence(v);
  Expr h = simplify(Expr::quotient(Expr::negate(div.expr), Expr::integer(n)));
  return {v, {std::move(h), v.coords}};
}

ScalarField apply_generator(const GeneratorT& t, const ScalarField& f) {
  if (f.coords != t.L.coords)
    throw DimensionError("generator and field dimension mismatch");
  std::vector<Expr> terms;
  for (size_t i = 0; i < f.coords.size(); ++i)
    terms.push_back(t.L.components[i] * differentiate(f.expr, f.coords[i]));
  terms.push_back(t.H.expr * f.expr);
  return {simplify(Expr::sum(std::move(terms))), f.coords};
}

namespace {

// RK4 on state (x, a) with dx/dt = V(x), da/dt = H(x).
Trajectory rk4(const std::vector<CompiledExpr>& field,
               const CompiledExpr* amplitude, const Point& p0, double t,
               int steps) {
  if (steps < 1) throw DimensionError("steps must be >= 1");
  size_t n = p0.size();
  for (double v : p0)
    if (!std::isfinite(v)) throw DimensionError("initial point not finite");

  Trajectory out;
  out.times.push_back(0.0);
  out.states.push_back(p0);
  out.log_amplitude.push_back(0.0);
  if (t == 0.0) return out;

  double h = t / steps;
  Point x = p0;
  double a = 0.0;
  auto deriv = [&](const Point& s, Point& dx, double& da) {
    for (size_t i = 0; i < n; ++i) dx[i] = field[i](s);
    da = amplitude ? (*amplitude)(s) : 0.0;
  };
  Point k1(n), k2(n), k3(n), k4(n), tmp(n);
  double a1, a2, a3, a4;
  for (int step = 0; step < steps; ++step) {
    try {
      deriv(x, k1, a1);
      for (size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
      deriv(tmp, k2, a2);
      for (size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
      deriv(tmp, k3, a3);
      for (size_t i = 0; i < n; ++i) tmp[i] = x[i] + h * k3[i];
      deriv(tmp, k4, a4);
    } catch (const EvalError&) {
      throw FlowBlowUp(out.times.back(), out);
    }
    bool finite = true;
    for (size_t i = 0; i < n; ++i) {
      x[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
      finite = finite && std::isfinite(x[i]);
    }
    a += h / 6.0 * (a1 + 2 * a2 + 2 * a3 + a4);
    finite = finite && std::isfinite(a);
    if (!finite) throw FlowBlowUp(out.times.back(), out);
    out.times.push_back(h * (step + 1));
    out.states.push_back(x);
    out.log_amplitude.push_back(a);
  }
  return out;
}

std::vector<CompiledExpr> compile_components(const VectorField& v) {
  std::vector<CompiledExpr> out;
  for (const Expr& c : v.components) out.emplace_back(c, v.coords);
  return out;
}

}  // namespace

Trajectory integrate_flow(const VectorField& v, const Point& p, double t,
                          int steps) {
  if (p.size() != v.coords.size())
    throw DimensionError("point dimension does not match vector field");
  return rk4(compile_components(v), nullptr, p, t, steps);
}

Trajectory integrate_generator(const GeneratorT& gen, const Point& p, double t,
                               int steps) {
  if (p.size() != gen.L.coords.size())
    throw DimensionError("point dimension does not match generator");
  CompiledExpr amp(gen.H.expr, gen.H.coords);
  return rk4(compile_components(gen.L), &amp, p, t, steps);
}

double evolve_graph(const GeneratorT& t_gen, const ScalarField& f,
                    const Point& p, double t, int steps) {
  if (f.coords != t_gen.L.coords)
    throw DimensionError("generator and field dimension mismatch");
  if (t == 0.0) return f(p);
  // backward characteristic: dr/ds = -L(r), amplitude accumulates +H.
  std::vector<Expr> neg;
  for (const Expr& c : t_gen.L.components) neg.push_back(Expr::negate(c));
  GeneratorT back{{std::move(neg), t_gen.L.coords}, t_gen.H};
  Trajectory traj = integrate_generator(back, p, t, steps);
  return f(traj.endpoint()) * std::exp(traj.end_log_amplitude());
}

double evolve_pullback(const GeneratorT& t_gen, const ScalarField& f,
                       const Point& p, double t, int steps) {
  if (f.coords != t_gen.L.coords)
    throw DimensionError("generator and field dimension mismatch");
  if (t == 0.0) return f(p);
  Trajectory traj = integrate_generator(t_gen, p, t, steps);
  return f(traj.endpoint()) * std::exp(traj.end_log_amplitude());
}

}  // namespace nambu
