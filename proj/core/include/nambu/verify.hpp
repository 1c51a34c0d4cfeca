#pragma once

#include <cstdint>
#include <random>

#include "nambu/extension.hpp"
#include "nambu/ternary.hpp"

namespace nambu {

enum class BracketId { Poisson, Contact, Nambu, ModifiedNambu, DeformedTriple };
enum class CheckMode { Symbolic, Sampled };
enum class Verdict { Pass, Fail, Informational };

std::string to_string(CheckMode m);
std::string to_string(Verdict v);

/// Outcome of one property sweep.
struct VerificationReport {
  std::string name;
  CheckMode mode = CheckMode::Symbolic;
  int samples = 0;
  double max_residual = 0.0;
  std::optional<Point> witness;
  Verdict verdict = Verdict::Pass;
  std::vector<std::string> covers;  // identity tags exercised
  std::string detail;

  bool failed() const { return verdict == Verdict::Fail; }
};

struct RandomFieldSpec {
  int dim = 2;
  int max_degree = 2;
  int coeff_range = 3;
  int count = 10;
  uint64_t seed = 1;
};

/// Deterministic source of random polynomial and trig-polynomial fields.
class FieldSampler {
 public:
  explicit FieldSampler(const RandomFieldSpec& spec);

  const std::vector<std::string>& coords() const { return coords_; }
  ScalarField polynomial();
  ScalarField nonzero_polynomial();
  /// Periodic field: a short sum of products of sin/cos in each axis.
  ScalarField trig_polynomial();
  VectorField polynomial_vector_field();
  Point point(double lo, double hi);

 private:
  RandomFieldSpec spec_;
  std::mt19937_64 rng_;
  std::vector<std::string> coords_;
};

VerificationReport check_antisymmetry(BracketId id, const RandomFieldSpec&);
VerificationReport check_leibniz(BracketId id, const RandomFieldSpec&);
/// Fundamental Identity (the Jacobi identity for the binary brackets).
VerificationReport check_fi(BracketId id, const RandomFieldSpec&);
/// div X_Nambu = 0 and div L + n H = 0.
VerificationReport check_divergence(const RandomFieldSpec&);
/// {f_1,..,f_n}_N = [1, f_1,..,f_n]_mN.
VerificationReport check_special_case(const RandomFieldSpec&);
/// V - (1/n) div V acts as a derivation of the modified bracket.
VerificationReport check_automorphism_derivation(const RandomFieldSpec&);
/// T^(k) is generated by the lifted Nambu Hamiltonians, and the
/// one-homogeneous lift reproduces the modified bracket.
VerificationReport check_embedding(const RandomFieldSpec&);

struct NormCheckParams {
  double t = 0.2;
  double box = 6.0;
  int nodes = 201;  // per axis
  int steps = 40;
  double tol = 1e-4;
};
/// n-norm of the graph evolution is preserved; pullback drift recorded
/// as the non-preservation witness.
VerificationReport check_norm_preservation(const RandomFieldSpec&,
                                           const NormCheckParams& = {});
/// Flows are bracket automorphisms: composed-flow Nambu bracket for n=3
/// and the integrated derivation identity (pullback) for the modified
/// bracket on R^2.
VerificationReport check_canonicity(const RandomFieldSpec&, double t = 0.1,
                                    double tol = 1e-5);
/// tau(f_0..f_n) = 1/(n+1) int [f_0..f_n] dvol on the torus.
VerificationReport check_cocycle(const RandomFieldSpec&, int grid = 64);

struct SuiteConfig {
  uint64_t seed = 1;
  std::vector<std::string> checks;  // empty = run all
  bool corrupted_fixture = false;   // adds a deliberately broken bracket
};

std::vector<std::string> suite_check_names();
std::vector<VerificationReport> run_suite(const SuiteConfig& config);

bool any_failed(const std::vector<VerificationReport>& reports);
std::string reports_to_json(const std::vector<VerificationReport>& reports);
std::string reports_to_table(const std::vector<VerificationReport>& reports);

}  // namespace nambu
