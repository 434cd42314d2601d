#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mpent {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Dims = std::vector<int>;

// Error hierarchy. The CLI maps these onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed call: wrong party count, empty subsystem set, bad dims.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A numeric parameter outside its admissible range (q, alpha, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Input violates a state invariant (not Hermitian, not normalized, negative).
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// Measure kind not defined for the given input.
class KindError : public Error {
 public:
  using Error::Error;
};

namespace tol {
inline constexpr double kNorm = 1e-10;
inline constexpr double kHermitian = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kNegativeEigen = 1e-9;
inline constexpr double kRank = 1e-10;
}  // namespace tol

int total_dim(const Dims& dims);
void check_dims(const Dims& dims);

/// Pure state with an ordered list of subsystem dimensions. Party 0 is the
/// leftmost (most significant) tensor factor.
class Ket {
 public:
  Ket(Vector amplitudes, Dims dims);

  /// Normalizes first; throws if the vector is zero.
  static Ket normalized(Vector amplitudes, Dims dims);
  /// Computational basis state |i_0 i_1 ...>.
  static Ket basis(const Dims& dims, const std::vector<int>& digits);

  const Vector& amplitudes() const { return amplitudes_; }
  const Dims& dims() const { return dims_; }
  int parties() const { return static_cast<int>(dims_.size()); }
  int dim() const { return static_cast<int>(amplitudes_.size()); }

 private:
  Vector amplitudes_;
  Dims dims_;
};

/// Hermitian matrix carrying subsystem dimensions; not necessarily positive
/// (partial transposes land here).
class HermitianMatrix {
 public:
  HermitianMatrix(Matrix matrix, Dims dims);

  const Matrix& matrix() const { return matrix_; }
  const Dims& dims() const { return dims_; }

 private:
  Matrix matrix_;
  Dims dims_;
};

/// Hermitian, PSD, unit-trace operator with subsystem dimensions.
class DensityOperator {
 public:
  DensityOperator(Matrix matrix, Dims dims);

  static DensityOperator from_ket(const Ket& psi);
  static DensityOperator maximally_mixed(const Dims& dims);
  /// Skips validation. Only for operators built by invariant-preserving maps.
  static DensityOperator trusted(Matrix matrix, Dims dims);

  const Matrix& matrix() const { return matrix_; }
  const Dims& dims() const { return dims_; }
  int parties() const { return static_cast<int>(dims_.size()); }
  int dim() const { return static_cast<int>(matrix_.rows()); }

 private:
  struct TrustedTag {};
  DensityOperator(TrustedTag, Matrix matrix, Dims dims);

  Matrix matrix_;
  Dims dims_;
};

/// Sorted set of distinct party indices, e.g. the "A" of a cut A|BC.
class SubsystemSet {
 public:
  SubsystemSet() = default;
  SubsystemSet(std::initializer_list<int> indices);
  explicit SubsystemSet(std::vector<int> indices);

  const std::vector<int>& indices() const { return indices_; }
  bool empty() const { return indices_.empty(); }
  int size() const { return static_cast<int>(indices_.size()); }
  bool contains(int party) const;
  void check_range(int parties) const;
  SubsystemSet complement(int parties) const;
  std::string label() const;  // "A", "BC", ...

 private:
  std::vector<int> indices_;
};

/// Descending eigenvalue list.
struct Spectrum {
  std::vector<double> eigenvalues;

  double sum() const;
  /// Throws UsageError unless descending, entries in [-1e-9, 1+1e-9], and
  /// summing to one within 1e-9.
  void validate_density() const;
};

}  // namespace mpent
