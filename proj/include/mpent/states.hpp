#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mpent/monogamy.hpp"
#include "mpent/types.hpp"

namespace mpent {

/// (1/sqrt d) sum_k |k...k> on `parties` qudits.
Ket ghz(int d, int parties);
/// (|001> + |010> + |100>) / sqrt 3.
Ket w_state();
/// sum_k lams[k] |kkk>. The squares must sum to 1 within 1e-4; the result is
/// renormalized.
Ket generalized_ghz(const std::vector<double>& lams);

struct MemsSpec {
  int m = 2;                  // dim A
  int r = 2;                  // number of branches
  std::vector<double> probs;  // branch probabilities p_k
  std::optional<int> l;       // copies for the doubled construction

  void validate() const;
  /// Probabilities with zero branches removed.
  std::vector<double> pruned() const;
};

/// |psi+><psi+|^{A B1} (x) sum_k p_k |k><k|^{B2} on dims [m, m r'], where r'
/// counts nonzero branches. B index = k m + i.
DensityOperator mems(const MemsSpec& spec);
/// |psi+>^{A B1} (sum_k sqrt(p_k) |k>^{B2} |k>^C) on dims [m, m r', r'].
Ket mems_extension_pure(const MemsSpec& spec);
/// (1/l) sum_s |phi_s><phi_s| on dims [m r, m, r l] (party order B, A, C),
/// |phi_s> = (m r)^{-1/2} sum_{k,i} |k m + i>^B |i>^A |k l + s>^C.
DensityOperator double_mems(int m, int r, int l);

enum class MemsClass { PureMES, MemsUpToA, MemsUpToB, NotMems };

struct MemsVerdict {
  MemsClass verdict;
  bool swapped;  // parties exchanged so that dim A <= dim B
  std::string evidence;
};

std::string to_string(MemsClass c);

MemsVerdict classify_mems(const DensityOperator& rho, const SubsystemSet& first = SubsystemSet{0});

/// Haar-random pure state from normalized complex normals.
Ket random_pure(const Dims& dims, std::uint64_t seed);
/// Induced mixed state of the given rank (ancilla dimension = rank).
DensityOperator random_mixed(const Dims& dims, int rank, std::uint64_t seed);

struct SpectrumTarget {
  Spectrum joint;
  double marginal_a_min;
  double marginal_b_min;
};

enum class SpectraStatus { Found, Infeasible, NotFound };

struct SpectraResult {
  SpectraStatus status;
  std::optional<DensityOperator> state;
  double residual;  // max |marginal minimum - target|
  CompatibilityReport compatibility;
};

/// Two-qubit state U diag(joint) U^dagger whose marginals have the requested
/// minimal eigenvalues.
SpectraResult state_with_spectra(const SpectrumTarget& target, std::uint64_t seed = 0x5eedULL,
                                 int max_iters = 500);

}  // namespace mpent
