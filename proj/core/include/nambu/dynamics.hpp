#pragma once

#include "nambu/brackets.hpp"

namespace nambu {

/// First-order-plus-multiplier generator T = L + H.
struct GeneratorT {
  VectorField L;
  ScalarField H;

  /// div L + n*H, simplified; the literal 0 for generators built from
  /// Hamiltonians.
  ScalarField compatibility_residual() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Point> states;
  std::vector<double> log_amplitude;

  const Point& endpoint() const { return states.back(); }
  double end_log_amplitude() const { return log_amplitude.back(); }
  /// CSV with header t,x1,...,xn,log_amp; 17 significant digits.
  std::string to_csv(std::span<const std::string> coords) const;
};

/// Thrown when an integration step leaves the finite domain; carries the
/// last finite time and the trajectory up to it.
struct FlowBlowUp : std::runtime_error {
  FlowBlowUp(double last_time, Trajectory partial)
      : std::runtime_error("flow blew up at t = " + std::to_string(last_time)),
        last_time(last_time),
        partial(std::move(partial)) {}
  double last_time;
  Trajectory partial;
};

/// X_H with X_H f = {H, f}_P; on R^2 this is (-dH/dy, dH/dx), summed per
/// canonical pair in higher even dimension.
VectorField hamiltonian_vector_field(const ScalarField& H);

/// The unique X with X f = {H_1,..,H_{n-1}, f}_N; components are the
/// bracket applied to the coordinate functions.
VectorField nambu_vector_field(std::span<const ScalarField> hamiltonians,
                               const std::optional<NambuDensity>& density = {});

/// T = sum_i (-1)^{i+1} H_i X_{H_1..^H_i..H_n} + {H_1,..,H_n}_N = L + H.
GeneratorT modified_generator(std::span<const ScalarField> hamiltonians);

ScalarField divergence(const VectorField& v);

/// T_V = V - (1/n) div V; a derivation of the modified bracket for any V.
GeneratorT automorphism_from_vector_field(const VectorField& v);

/// L f + H f, simplified.
ScalarField apply_generator(const GeneratorT& t, const ScalarField& f);

/// Classical fixed-step RK4. log_amplitude is identically zero.
Trajectory integrate_flow(const VectorField& v, const Point& p, double t,
                          int steps);

/// RK4 along L, accumulating log_amplitude(t) = int_0^t H along the path.
Trajectory integrate_generator(const GeneratorT& gen, const Point& p, double t,
                               int steps);

/// Graph (Lagrangian) semantics: the graph of f advected by L + H*l*d_l.
/// Integrates backward along L from p, accumulating a = int H, and
/// returns f(q)*exp(a).
double evolve_graph(const GeneratorT& t_gen, const ScalarField& f,
                    const Point& p, double t, int steps);

/// Pullback (semigroup) semantics for d/dt u = L u + H u: integrates
/// forward along L from p and returns f(q')*exp(int H).
double evolve_pullback(const GeneratorT& t_gen, const ScalarField& f,
                       const Point& p, double t, int steps);

}  // namespace nambu
