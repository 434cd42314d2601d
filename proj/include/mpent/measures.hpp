#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mpent/convexroof.hpp"
#include "mpent/measure_kind.hpp"
#include "mpent/types.hpp"

namespace mpent {

/// Pure-state bipartite measure across first|rest (default: party 0 vs the
/// rest). Negativity uses the full state's partial transpose.
double measure_pure_bipartite(const Ket& psi, const MeasureKind& kind,
                              const SubsystemSet& first = SubsystemSet{0},
                              BipartiteForm form = BipartiteForm::Standard);

/// Closed-form tripartite value h^(3)(rho^A (x) rho^B (x) rho^C).
double measure_pure_tripartite(const Ket& psi, const MeasureKind& kind);

/// N = (||rho^T_first|| - 1) / 2 across first|rest.
double negativity_bipartite(const DensityOperator& rho, const SubsystemSet& first = SubsystemSet{0});
/// ||rho^T_first|| + ||rho^T_rest|| - 2, the companion of the tripartite form.
double negativity_bipartite_unified(const DensityOperator& rho,
                                    const SubsystemSet& first = SubsystemSet{0});
/// ||rho^Ta|| + ||rho^Tb|| + ||rho^Tc|| - 3.
double negativity_tripartite(const DensityOperator& rho);

/// Minimum of the three (unified) bipartite cut values.
double e32_pure(const Ket& psi, const MeasureKind& kind);

/// tau_ABC = C^2_{A|BC} - C^2_AB - C^2_AC for three qubits.
double three_tangle(const Ket& psi);

struct GeometricConfig {
  int restarts = 32;
  double tol = 1e-10;
  int max_iters = 10000;
  std::uint64_t seed = 0x9e0de7ULL;
  int threads = 0;  // 0: use MPENT_THREADS
};

struct GeometricResult {
  double value;    // 1 - best overlap
  double overlap;  // sup |<a b c|psi>|^2
  int restarts;
  int agreeing;  // restarts whose overlap is within 1e-8 of the best
  std::vector<Vector> factors;
};

/// 1 - sup |<a (x) b (x) c | psi>|^2 by alternating rank-1 updates.
GeometricResult geometric_measure_pure(const Ket& psi, const GeometricConfig& config = {});

enum class Condition { Unification, Hierarchy };

struct ConditionReport {
  Condition condition;
  std::vector<std::pair<std::string, double>> values;
  bool holds;
  double worst_gap;
};

/// Evaluates the unification or hierarchy condition on a pure tripartite
/// state. Pair values on mixed two-party marginals use convex roofs (closed
/// form for Negativity).
ConditionReport check_condition(const Ket& psi, const MeasureKind& kind, Condition condition,
                                const RoofConfig& roof = {});

/// Value of a unified bipartite companion on a (possibly mixed) two-party
/// state: closed form for Negativity, pure formula for rank one, convex roof
/// otherwise. Sets *converged when a roof was run.
double bipartite_value(const DensityOperator& rho, const MeasureKind& kind,
                       const SubsystemSet& first, const RoofConfig& roof,
                       bool* converged = nullptr);

/// Tripartite value on a (possibly mixed) three-party state.
double tripartite_value(const DensityOperator& rho, const MeasureKind& kind,
                        const RoofConfig& roof, bool* converged = nullptr);

}  // namespace mpent
