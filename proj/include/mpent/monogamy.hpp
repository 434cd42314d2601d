#pragma once

#include <array>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mpent/convexroof.hpp"
#include "mpent/measure_kind.hpp"
#include "mpent/types.hpp"

namespace mpent {

struct MonogamyReport {
  MeasureKind measure = MeasureKind::eof();
  double alpha = 1.0;
  double tripartite_value = 0.0;
  std::array<std::pair<std::string, double>, 3> pair_values;  // AB, AC, BC
  std::array<std::pair<std::string, double>, 3> cut_values;   // A|BC, B|AC, AB|C
  double complete_gap = 0.0;
  std::array<double, 3> tight_gap_per_cut{};
  std::array<bool, 3> pair_disentangling{};  // |E3 - E(pair)| <= 1e-6
  std::array<bool, 3> cut_disentangling{};   // |E3 - E(cut)| <= 1e-6
  bool converged = true;
};

/// Complete and tight monogamy audit of a three-party state.
MonogamyReport audit(const DensityOperator& rho, const MeasureKind& kind, double alpha,
                     const RoofConfig& config = {});

struct ExponentEstimate {
  double alpha_star;
  std::pair<double, double> bracket;
  int samples;
  int violations;    // no finite alpha exists
  int ceiling_hits;  // critical alpha above the search ceiling
};

inline constexpr double kExponentFloor = 1e-3;
inline constexpr double kExponentCeiling = 64.0;

/// Smallest alpha with tri^alpha >= sum pairs^alpha for every sample, by
/// bisection on [1e-3, 64].
ExponentEstimate monogamy_exponent(const std::vector<DensityOperator>& samples,
                                   const MeasureKind& kind, double tol,
                                   const RoofConfig& config = {});

/// Splits |psi> = U_pivot^dagger (|a>^{X B1} |c>^{B2 Y}) where X < Y are the
/// two non-pivot parties.
struct Factorization {
  int pivot;
  std::pair<int, int> split_dims;  // (d_B1, d_B2)
  Matrix local_unitary;            // acts on the pivot; sends the Schmidt vectors to a product basis
  std::pair<Ket, Ket> factors;     // dims [d_X, d_B1] and [d_B2, d_Y]
  double residual;
};

struct NotProduct {
  double deviation;  // ||rho^{XY} - rho^X (x) rho^Y||_F
};

std::variant<Factorization, NotProduct> factorize_pure(const Ket& psi, int pivot);

struct PurityReport {
  double tr2_ab;
  double tr2_a;
  double tr2_b;
  double lhs;             // 1 + max(tr2_a, tr2_b) * tr2_ab
  double slack;           // 1 + tr2_ab - tr2_a - tr2_b, never negative
  double max_form_slack;  // lhs - tr2_a - tr2_b, negative on some mixed states
  bool equality_case;
};

PurityReport purity_inequality(const DensityOperator& rho,
                               const SubsystemSet& first = SubsystemSet{0});

struct CompatibilityReport {
  bool compatible;
  // min(lA,lB) >= l3+l4; lA+lB >= l2+l3+2 l4; |lA-lB| <= min(l1-l3, l2-l4)
  std::array<double, 3> slacks;
  int first_failing() const;  // index of the first negative slack, or -1
};

/// Whether a two-qubit spectrum admits single-qubit marginals with minimal
/// eigenvalues lambda_a and lambda_b.
CompatibilityReport marginal_compatibility(const Spectrum& spectrum, double lambda_a,
                                           double lambda_b);

enum class AdditivityScope { Bipartite, Tripartite };

/// E(rho1 (x) rho2) - E(rho1) - E(rho2) with parties merged pairwise.
double additivity_gap(const DensityOperator& rho1, const DensityOperator& rho2,
                      const MeasureKind& kind, AdditivityScope scope,
                      const RoofConfig& config = {}, bool* converged = nullptr);

}  // namespace mpent
