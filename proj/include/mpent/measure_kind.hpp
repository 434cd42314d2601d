#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "mpent/types.hpp"

namespace mpent {

enum class Kind {
  EoF,
  Concurrence,
  Tangle,
  Tsallis,
  Renyi,
  Negativity,
  NegativityRoof,
  TauPrime,
  ThreeTangle,
  Geometric,
};

/// A measure together with its parameter (q for Tsallis, alpha for Renyi).
/// Each unified kind supplies the marginal function h^(2)/h^(3):
///   EoF          1/2 sum_X S(rho^X)
///   Tangle       3 - sum_X Tr(rho^X)^2          (bipartite 2 - ...)
///   Concurrence  sqrt(tangle)
///   Tsallis(q)   1/2 sum_X T_q(rho^X), q > 1 for three parties
///   Renyi(a)     1/2 sum_X R_a(rho^X)
///   Negativity   sum_X Tr^2 sqrt(rho^X) - 3      (pure); trace norms (mixed)
///   TauPrime     2 [1 - prod_X sqrt(Tr(rho^X)^2)]
class MeasureKind {
 public:
  static MeasureKind eof() { return MeasureKind(Kind::EoF); }
  static MeasureKind concurrence() { return MeasureKind(Kind::Concurrence); }
  static MeasureKind tangle() { return MeasureKind(Kind::Tangle); }
  static MeasureKind tsallis(double q);
  static MeasureKind renyi(double alpha);
  static MeasureKind negativity() { return MeasureKind(Kind::Negativity); }
  static MeasureKind negativity_roof() { return MeasureKind(Kind::NegativityRoof); }
  static MeasureKind tau_prime() { return MeasureKind(Kind::TauPrime); }
  static MeasureKind three_tangle() { return MeasureKind(Kind::ThreeTangle); }
  static MeasureKind geometric() { return MeasureKind(Kind::Geometric); }

  /// Accepts eof, concurrence, tangle, tsallis, renyi, negativity,
  /// negativity-roof, tau-prime, three-tangle, geometric.
  static MeasureKind parse(std::string_view name, std::optional<double> param = std::nullopt);

  Kind kind() const { return kind_; }
  double param() const { return param_; }
  std::string name() const;

  /// Has a tripartite extension obeying the unification condition.
  bool is_unified() const;
  /// Has a pure-state formula usable inside a convex roof.
  bool has_roof() const;
  bool is_negativity() const {
    return kind_ == Kind::Negativity || kind_ == Kind::NegativityRoof;
  }

  /// Throws ParameterError when the tripartite definition rejects the
  /// parameter (Tsallis needs q > 1 there).
  void require_tripartite() const;

  friend bool operator==(const MeasureKind&, const MeasureKind&) = default;

 private:
  explicit MeasureKind(Kind k, double p = 0.0) : kind_(k), param_(p) {}
  Kind kind_;
  double param_;
};

/// Which bipartite normalization to use. Standard is the textbook measure;
/// Unified is the companion E^(2) induced by the tripartite definition. They
/// differ only for the negativity family: Unified = ||rho^Ta|| + ||rho^Tb|| - 2.
enum class BipartiteForm { Standard, Unified };

/// Which entanglement a convex roof / measure evaluation targets.
class Scope {
 public:
  static Scope tripartite() { return Scope(true, {}); }
  static Scope bipartite(SubsystemSet first) { return Scope(false, std::move(first)); }

  bool is_tripartite() const { return tripartite_; }
  const SubsystemSet& first() const { return first_; }

 private:
  Scope(bool tri, SubsystemSet first) : tripartite_(tri), first_(std::move(first)) {}
  bool tripartite_;
  SubsystemSet first_;
};

}  // namespace mpent
