#pragma once

#include <span>
#include <utility>
#include <vector>

#include "mpent/types.hpp"

namespace mpent {

Ket tensor(const Ket& a, const Ket& b);
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);

/// Reorders parties: position i of the result holds old party order[i].
Ket permute(const Ket& psi, const std::vector<int>& order);
DensityOperator permute(const DensityOperator& rho, const std::vector<int>& order);

/// Regroups parties into merged subsystems. Each group lists old party
/// indices; groups must partition the parties. The result has one party per
/// group with dimension equal to the product of the members'.
Ket regroup(const Ket& psi, const std::vector<std::vector<int>>& groups);
DensityOperator regroup(const DensityOperator& rho,
                        const std::vector<std::vector<int>>& groups);

/// Two-party view first|rest of a multi-party state.
Ket bipartition(const Ket& psi, const SubsystemSet& first);
DensityOperator bipartition(const DensityOperator& rho, const SubsystemSet& first);

DensityOperator partial_trace(const DensityOperator& rho, const SubsystemSet& keep);
/// Marginal of a pure state, computed as a Gram matrix of the reshaped ket.
DensityOperator reduced(const Ket& psi, const SubsystemSet& keep);

HermitianMatrix partial_transpose(const DensityOperator& rho, const SubsystemSet& subsystem);
HermitianMatrix partial_transpose(const HermitianMatrix& h, const SubsystemSet& subsystem);

double trace_norm(const HermitianMatrix& h);
double trace_norm(const Matrix& hermitian);

/// Descending spectrum with eigenvalues in [-1e-9, 0) clamped to zero.
/// More negative eigenvalues raise InvariantError.
Spectrum spectrum(const DensityOperator& rho);
/// Eigen-decomposition of a Hermitian matrix, eigenvalues descending.
std::pair<RealVector, Matrix> hermitian_eigen(const Matrix& h);

double purity(const DensityOperator& rho);
double von_neumann_entropy(const DensityOperator& rho);
double tsallis_entropy(const DensityOperator& rho, double q);
double renyi_entropy(const DensityOperator& rho, double alpha);
double sqrt_trace(const DensityOperator& rho);

int numerical_rank(const DensityOperator& rho, double threshold = tol::kRank);

/// Purification on dims ++ [rank].
Ket purify(const DensityOperator& rho);

double frobenius_distance(const Matrix& a, const Matrix& b);

/// Scalar functionals of a (clamped, non-negative) probability vector.
namespace spectral {
double entropy(std::span<const double> p);
double power_sum(std::span<const double> p, double exponent);
double sqrt_sum(std::span<const double> p);
double tsallis(std::span<const double> p, double q);
double renyi(std::span<const double> p, double alpha);
/// Binary entropy in nats.
double binary_entropy(double x);
}  // namespace spectral

namespace detail {
/// map[new_index] = old_index for a party permutation.
std::vector<int> permutation_map(const Dims& dims, const std::vector<int>& order);
std::vector<int> digits_of(int index, const Dims& dims);
}  // namespace detail

}  // namespace mpent
