#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mpent/measure_kind.hpp"
#include "mpent/types.hpp"

namespace mpent {

/// Probability-weighted pure states realizing a mixed state.
struct Ensemble {
  std::vector<double> weights;
  std::vector<Ket> states;

  std::size_t size() const { return weights.size(); }
  DensityOperator mixture() const;
};

struct RoofConfig {
  int ensemble_size = 0;  // 0: min(rank^2, 16)
  int restarts = 16;
  int max_iters = 3000;
  double rel_tol = 1e-7;
  std::uint64_t seed = 0x5eedULL;
  int threads = 0;  // 0: use MPENT_THREADS

  void validate() const;
};

enum class Direction { Min, Max };

struct RoofResult {
  double value;
  Ensemble ensemble;
  Direction direction;
  bool converged;
  double restart_spread;  // max - min over restart values
};

/// Decomposition from an n x n anti-Hermitian generator applied to the
/// eigen-ensemble. params has n^2 entries: n diagonal phases, then for each
/// k < l (row-major) the real and imaginary parts of G(k, l). Zero
/// parameters reproduce the eigen-decomposition.
Ensemble hjw_ensemble(const DensityOperator& rho, std::span<const double> params, int n);

/// Minimal (E_F) or maximal (E_a) average pure-state measure over
/// decompositions of rho. For Direction::Min the value is a variational upper
/// bound on the roof.
RoofResult convex_roof(const DensityOperator& rho, const MeasureKind& kind, const Scope& scope,
                       Direction direction, const RoofConfig& config = {},
                       BipartiteForm form = BipartiteForm::Standard);

/// Average measure of an externally supplied ensemble.
double ensemble_average(const Ensemble& ensemble, const MeasureKind& kind, const Scope& scope,
                        BipartiteForm form = BipartiteForm::Standard);

struct WoottersResult {
  double concurrence;
  double eof;  // nats
};

/// Closed-form two-qubit concurrence and entanglement of formation.
WoottersResult wootters_ef(const DensityOperator& rho);

}  // namespace mpent
