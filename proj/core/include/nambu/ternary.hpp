#pragma once

#include <optional>

#include "nambu/field.hpp"

namespace nambu {

/// Small dense real matrix, row-major.
class SquareMatrix {
 public:
  explicit SquareMatrix(int size) : size_(size), data_(size * size, 0.0) {
    if (size < 1) throw DimensionError("matrix size must be >= 1");
  }
  static SquareMatrix identity(int size);

  int size() const { return size_; }
  double& at(int i, int j) { return data_[i * size_ + j]; }
  double at(int i, int j) const { return data_[i * size_ + j]; }
  double trace() const;
  double max_abs() const;

  friend SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b);
  friend SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b);
  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b);
  friend SquareMatrix operator*(double s, const SquareMatrix& a);

 private:
  int size_;
  std::vector<double> data_;
};

SquareMatrix commutator(const SquareMatrix& a, const SquareMatrix& b);

/// Signed sum over all six permutations of A1 A2 A3.
SquareMatrix alternating_triple(const SquareMatrix& a1, const SquareMatrix& a2,
                                const SquareMatrix& a3);

enum class RhoFunctional { Trace, EntryOneOne };

/// rho(A1)[A2,A3] + rho(A2)[A3,A1] + rho(A3)[A1,A2].
SquareMatrix rho_ternary(const SquareMatrix& a1, const SquareMatrix& a2,
                         const SquareMatrix& a3, RhoFunctional rho);

struct DeformedProductConfig {
  int truncation_order = 1;          // order in the deformation parameter
  std::optional<double> h;           // numeric value; symbolic "h" if unset
};

/// Deformed triple product on polynomials over R^2: the three arguments
/// are placed on independent coordinate copies, exp(hD) is expanded to
/// the truncation order with
///   D = dx^dy (x) I + I (x) dx^dy + (dx (x) I (x) dy - dy (x) I (x) dx),
/// and the result is restricted to the diagonal.
ScalarField deformed_triple(const ScalarField& e, const ScalarField& f,
                            const ScalarField& g,
                            const DeformedProductConfig& cfg);

}  // namespace nambu
