#include "mpent/measures.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "mpent/pure_functional.hpp"
#include "mpent/qcore.hpp"

namespace mpent {

// ---- MeasureKind -----------------------------------------------------------

MeasureKind MeasureKind::tsallis(double q) {
  if (!(q > 0.0) || q == 1.0) throw ParameterError("Tsallis q must satisfy q > 0 and q != 1");
  return MeasureKind(Kind::Tsallis, q);
}

MeasureKind MeasureKind::renyi(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("Renyi alpha must lie in (0, 1)");
  return MeasureKind(Kind::Renyi, alpha);
}

MeasureKind MeasureKind::parse(std::string_view name, std::optional<double> param) {
  auto need = [&]() {
    if (!param) throw UsageError("measure '" + std::string(name) + "' needs a parameter");
    return *param;
  };
  if (name == "eof") return eof();
  if (name == "concurrence") return concurrence();
  if (name == "tangle") return tangle();
  if (name == "tsallis") return tsallis(need());
  if (name == "renyi") return renyi(need());
  if (name == "negativity") return negativity();
  if (name == "negativity-roof") return negativity_roof();
  if (name == "tau-prime") return tau_prime();
  if (name == "three-tangle") return three_tangle();
  if (name == "geometric") return geometric();
  throw UsageError("unknown measure '" + std::string(name) + "'");
}

std::string MeasureKind::name() const {
  switch (kind_) {
    case Kind::EoF: return "eof";
    case Kind::Concurrence: return "concurrence";
    case Kind::Tangle: return "tangle";
    case Kind::Tsallis: return "tsallis";
    case Kind::Renyi: return "renyi";
    case Kind::Negativity: return "negativity";
    case Kind::NegativityRoof: return "negativity-roof";
    case Kind::TauPrime: return "tau-prime";
    case Kind::ThreeTangle: return "three-tangle";
    case Kind::Geometric: return "geometric";
  }
  return "?";
}

bool MeasureKind::is_unified() const {
  return kind_ != Kind::ThreeTangle && kind_ != Kind::Geometric;
}

bool MeasureKind::has_roof() const { return is_unified(); }

void MeasureKind::require_tripartite() const {
  if (kind_ == Kind::Tsallis && !(param_ > 1.0))
    throw ParameterError("tripartite Tsallis entropy needs q > 1");
}

// ---- helpers ---------------------------------------------------------------

namespace {

const char* kPartyNames = "ABC";

// Bipartite companion used for cut and pair values.
MeasureKind companion(const MeasureKind& kind) {
  if (kind.kind() == Kind::TauPrime) return MeasureKind::tangle();
  return kind;
}

Ket top_ket(const DensityOperator& rho) {
  auto [vals, vecs] = hermitian_eigen(rho.matrix());
  return Ket::normalized(vecs.col(0), rho.dims());
}

void require_three(const Ket& psi) {
  if (psi.parties() != 3) throw UsageError("expected a three-party state");
}

std::string cut_label(int x) {
  std::string s = "E(";
  s += kPartyNames[x];
  s += '|';
  for (int y = 0; y < 3; ++y)
    if (y != x) s += kPartyNames[y];
  return s + ")";
}

}  // namespace

// ---- pure measures ---------------------------------------------------------

double measure_pure_bipartite(const Ket& psi, const MeasureKind& kind, const SubsystemSet& first,
                              BipartiteForm form) {
  if (!kind.has_roof() || kind.kind() == Kind::TauPrime)
    throw KindError(kind.name() + " has no bipartite pure-state value");
  if (kind.is_negativity()) {
    const DensityOperator rho = DensityOperator::from_ket(psi);
    first.check_range(psi.parties());
    return form == BipartiteForm::Unified ? negativity_bipartite_unified(rho, first)
                                          : negativity_bipartite(rho, first);
  }
  const PureFunctional f(kind, Scope::bipartite(first), psi.dims(), form);
  return std::max(0.0, f.value(psi.amplitudes().data()));
}

double measure_pure_tripartite(const Ket& psi, const MeasureKind& kind) {
  require_three(psi);
  if (kind.kind() == Kind::ThreeTangle) return three_tangle(psi);
  if (kind.kind() == Kind::Geometric) return geometric_measure_pure(psi).value;
  const PureFunctional f(kind, Scope::tripartite(), psi.dims());
  return std::max(0.0, f.value(psi.amplitudes().data()));
}

double negativity_bipartite(const DensityOperator& rho, const SubsystemSet& first) {
  return std::max(0.0, 0.5 * (trace_norm(partial_transpose(rho, first)) - 1.0));
}

double negativity_bipartite_unified(const DensityOperator& rho, const SubsystemSet& first) {
  const SubsystemSet rest = first.complement(rho.parties());
  const double a = trace_norm(partial_transpose(rho, first));
  const double b = trace_norm(partial_transpose(rho, rest));
  return std::max(0.0, a + b - 2.0);
}

double negativity_tripartite(const DensityOperator& rho) {
  if (rho.parties() != 3) throw UsageError("tripartite negativity needs three parties");
  double total = -3.0;
  for (int x = 0; x < 3; ++x) total += trace_norm(partial_transpose(rho, SubsystemSet{x}));
  return std::max(0.0, total);
}

double e32_pure(const Ket& psi, const MeasureKind& kind) {
  require_three(psi);
  const MeasureKind c = companion(kind);
  double best = 0.0;
  for (int x = 0; x < 3; ++x) {
    const double v = measure_pure_bipartite(psi, c, SubsystemSet{x}, BipartiteForm::Unified);
    best = x == 0 ? v : std::min(best, v);
  }
  return best;
}

double three_tangle(const Ket& psi) {
  if (psi.dims() != Dims{2, 2, 2}) throw UsageError("three_tangle needs dims [2,2,2]");
  const double c2_a_bc = 2.0 * (1.0 - purity(reduced(psi, SubsystemSet{0})));
  const double c_ab = wootters_ef(reduced(psi, SubsystemSet{0, 1})).concurrence;
  const double c_ac = wootters_ef(reduced(psi, SubsystemSet{0, 2})).concurrence;
  return std::max(0.0, c2_a_bc - c_ab * c_ab - c_ac * c_ac);
}

// ---- mixed values ----------------------------------------------------------

double bipartite_value(const DensityOperator& rho, const MeasureKind& kind,
                       const SubsystemSet& first, const RoofConfig& roof, bool* converged) {
  const MeasureKind c = companion(kind);
  if (converged) *converged = true;
  if (c.kind() == Kind::Negativity) return negativity_bipartite_unified(rho, first);
  if (!c.has_roof()) throw KindError(kind.name() + " has no bipartite mixed-state value");
  if (numerical_rank(rho) == 1)
    return measure_pure_bipartite(top_ket(rho), c, first, BipartiteForm::Unified);
  const RoofResult r =
      convex_roof(rho, c, Scope::bipartite(first), Direction::Min, roof, BipartiteForm::Unified);
  if (converged) *converged = r.converged;
  return r.value;
}

double tripartite_value(const DensityOperator& rho, const MeasureKind& kind,
                        const RoofConfig& roof, bool* converged) {
  if (rho.parties() != 3) throw UsageError("expected a three-party state");
  if (converged) *converged = true;
  if (kind.kind() == Kind::Negativity) return negativity_tripartite(rho);
  if (numerical_rank(rho) == 1) return measure_pure_tripartite(top_ket(rho), kind);
  if (!kind.has_roof()) throw KindError(kind.name() + " is only defined on pure states");
  const RoofResult r = convex_roof(rho, kind, Scope::tripartite(), Direction::Min, roof);
  if (converged) *converged = r.converged;
  return r.value;
}

// ---- conditions ------------------------------------------------------------

ConditionReport check_condition(const Ket& psi, const MeasureKind& kind, Condition condition,
                                const RoofConfig& roof) {
  require_three(psi);
  if (!kind.is_unified()) throw KindError(kind.name() + " is not a unified tripartite measure");
  // Concurrence is compared through its square.
  const MeasureKind tri = kind.kind() == Kind::Concurrence ? MeasureKind::tangle() : kind;
  const MeasureKind bi = companion(tri);

  ConditionReport rep;
  rep.condition = condition;
  const double e3 = measure_pure_tripartite(psi, tri);
  rep.values.emplace_back("E3", e3);
  double worst = std::numeric_limits<double>::infinity();

  if (condition == Condition::Unification) {
    std::array<int, 3> order{0, 1, 2};
    double dev = 0.0;
    do {
      const Ket p = permute(psi, std::vector<int>(order.begin(), order.end()));
      dev = std::max(dev, std::abs(measure_pure_tripartite(p, tri) - e3));
    } while (std::next_permutation(order.begin(), order.end()));
    rep.values.emplace_back("permutation_deviation", dev);
    worst = -dev;
    const DensityOperator rho = DensityOperator::from_ket(psi);
    for (int x = 0; x < 3; ++x)
      for (int y = x + 1; y < 3; ++y) {
        const DensityOperator pair = partial_trace(rho, SubsystemSet{x, y});
        const double v = bipartite_value(pair, bi, SubsystemSet{0}, roof);
        rep.values.emplace_back(std::string("E(") + kPartyNames[x] + kPartyNames[y] + ")", v);
        worst = std::min(worst, e3 - v);
      }
  } else {
    double e32 = 0.0;
    for (int x = 0; x < 3; ++x) {
      const double cut = measure_pure_bipartite(psi, bi, SubsystemSet{x}, BipartiteForm::Unified);
      rep.values.emplace_back(cut_label(x), cut);
      worst = std::min(worst, e3 - cut);
      e32 = x == 0 ? cut : std::min(e32, cut);
    }
    rep.values.emplace_back("E(3-2)", e32);
  }
  rep.worst_gap = worst;
  rep.holds = worst >= -1e-9;
  return rep;
}

}  // namespace mpent
