#include "mpent/monogamy.hpp"

#include <algorithm>
#include <cmath>

#include "mpent/measures.hpp"
#include "mpent/parallel.hpp"
#include "mpent/qcore.hpp"

namespace mpent {

namespace {

constexpr double kFlagTol = 1e-6;
constexpr double kProductTol = 1e-8;

bool is_pure(const DensityOperator& rho) { return numerical_rank(rho) == 1; }

Ket top_ket(const DensityOperator& rho) {
  auto [vals, vecs] = hermitian_eigen(rho.matrix());
  return Ket::normalized(vecs.col(0), rho.dims());
}

// Critical alpha for one sample: sum (pair / tri)^alpha <= 1.
struct Critical {
  double lo, hi;
  bool violation = false;
  bool ceiling = false;
};

Critical critical_alpha(double tri, const std::array<double, 3>& pairs, double tol) {
  Critical c{kExponentFloor, kExponentFloor};
  int nonzero = 0;
  double max_pair = 0.0;
  for (double p : pairs) {
    if (p > kFlagTol) ++nonzero;
    max_pair = std::max(max_pair, p);
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (std::abs(tri - pairs[i]) > kFlagTol) continue;
    for (std::size_t j = 0; j < pairs.size(); ++j)
      if (j != i && pairs[j] > kFlagTol) c.violation = true;
  }
  if (tri < max_pair - kFlagTol) c.violation = true;
  if (c.violation || nonzero < 2) return c;

  auto excess = [&](double a) {
    double s = 0.0;
    for (double p : pairs)
      if (p > 0.0) s += std::pow(std::min(p / tri, 1.0), a);
    return s - 1.0;
  };
  if (excess(kExponentFloor) <= 0.0) return c;
  if (excess(kExponentCeiling) > 0.0) {
    c.ceiling = true;
    c.lo = c.hi = kExponentCeiling;
    return c;
  }
  double lo = kExponentFloor, hi = kExponentCeiling;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? lo : hi) = mid;
  }
  c.lo = lo;
  c.hi = hi;
  return c;
}

}  // namespace

// ---- audit -----------------------------------------------------------------

MonogamyReport audit(const DensityOperator& rho, const MeasureKind& kind, double alpha,
                     const RoofConfig& config) {
  if (rho.parties() != 3) throw UsageError("audit needs a three-party state");
  if (!kind.is_unified()) throw KindError(kind.name() + " is not a unified tripartite measure");
  if (!(alpha > 0.0)) throw ParameterError("alpha must be positive");

  MonogamyReport rep;
  rep.measure = kind;
  rep.alpha = alpha;
  bool ok = true;
  rep.tripartite_value = tripartite_value(rho, kind, config, &ok);
  rep.converged = ok;

  const std::array<std::pair<int, int>, 3> pairs{{{0, 1}, {0, 2}, {1, 2}}};
  const char* names = "ABC";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [x, y] = pairs[i];
    const DensityOperator m = partial_trace(rho, SubsystemSet{x, y});
    const double v = bipartite_value(m, kind, SubsystemSet{0}, config, &ok);
    rep.converged = rep.converged && ok;
    rep.pair_values[i] = {std::string{names[x], names[y]}, v};
  }

  const std::array<SubsystemSet, 3> cuts{SubsystemSet{0}, SubsystemSet{1}, SubsystemSet{0, 1}};
  const std::array<const char*, 3> cut_names{"A|BC", "B|AC", "AB|C"};
  const bool pure = is_pure(rho);
  const Ket psi = pure ? top_ket(rho) : Ket::basis(rho.dims(), {0, 0, 0});
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    double v;
    if (pure) {
      const MeasureKind c = kind.kind() == Kind::TauPrime ? MeasureKind::tangle() : kind;
      v = measure_pure_bipartite(psi, c, cuts[i], BipartiteForm::Unified);
    } else {
      v = bipartite_value(rho, kind, cuts[i], config, &ok);
      rep.converged = rep.converged && ok;
    }
    rep.cut_values[i] = {cut_names[i], v};
  }

  double sum = 0.0;
  for (const auto& [name, v] : rep.pair_values) sum += std::pow(v, alpha);
  rep.complete_gap = std::pow(rep.tripartite_value, alpha) - sum;
  for (std::size_t i = 0; i < 3; ++i) {
    rep.tight_gap_per_cut[i] = rep.tripartite_value - rep.cut_values[i].second;
    rep.pair_disentangling[i] =
        std::abs(rep.tripartite_value - rep.pair_values[i].second) <= kFlagTol;
    rep.cut_disentangling[i] = std::abs(rep.tight_gap_per_cut[i]) <= kFlagTol;
  }
  return rep;
}

// ---- exponent --------------------------------------------------------------

ExponentEstimate monogamy_exponent(const std::vector<DensityOperator>& samples,
                                   const MeasureKind& kind, double tol, const RoofConfig& config) {
  if (samples.empty()) throw UsageError("monogamy_exponent needs at least one sample");
  if (!(tol > 0.0)) throw UsageError("tolerance must be positive");
  std::vector<Critical> crit(samples.size());
  RoofConfig inner = config;
  inner.threads = 1;
  parallel_for(static_cast<int>(samples.size()), resolve_width(config.threads), [&](int i) {
    const MonogamyReport r = audit(samples[i], kind, 1.0, inner);
    std::array<double, 3> pairs{};
    for (int k = 0; k < 3; ++k) pairs[k] = r.pair_values[k].second;
    crit[i] = critical_alpha(r.tripartite_value, pairs, tol);
  });

  ExponentEstimate est{kExponentFloor, {kExponentFloor, kExponentFloor},
                       static_cast<int>(samples.size()), 0, 0};
  for (const Critical& c : crit) {
    if (c.violation) {
      ++est.violations;
      continue;
    }
    if (c.ceiling) ++est.ceiling_hits;
    est.bracket.first = std::max(est.bracket.first, c.lo);
    est.bracket.second = std::max(est.bracket.second, c.hi);
  }
  est.alpha_star = est.bracket.second;
  return est;
}

// ---- factorization ---------------------------------------------------------

std::variant<Factorization, NotProduct> factorize_pure(const Ket& psi, int pivot) {
  if (psi.parties() != 3) throw UsageError("factorize_pure needs a three-party state");
  if (pivot < 0 || pivot > 2) throw UsageError("pivot out of range");
  std::vector<int> others;
  for (int i = 0; i < 3; ++i)
    if (i != pivot) others.push_back(i);
  const Ket p = permute(psi, {others[0], pivot, others[1]});
  const int da = p.dims()[0], db = p.dims()[1], dc = p.dims()[2];

  const DensityOperator rho_a = reduced(p, SubsystemSet{0});
  const DensityOperator rho_c = reduced(p, SubsystemSet{2});
  const DensityOperator rho_ac = reduced(p, SubsystemSet{0, 2});
  const double deviation =
      frobenius_distance(rho_ac.matrix(), tensor(rho_a, rho_c).matrix());
  if (deviation > kProductTol) return NotProduct{deviation};

  auto [va, ua] = hermitian_eigen(rho_a.matrix());
  auto [vc, uc] = hermitian_eigen(rho_c.matrix());
  int ra = 0, rc = 0;
  while (ra < va.size() && va(ra) > tol::kRank) ++ra;
  while (rc < vc.size() && vc(rc) > tol::kRank) ++rc;
  if (ra * rc > db) return NotProduct{deviation};

  // psi_ij^B = (<alpha_i| (x) I (x) <gamma_j|) psi / sqrt(a_i c_j)
  const Vector& amp = p.amplitudes();
  Matrix schmidt(db, ra * rc);
  for (int i = 0; i < ra; ++i)
    for (int j = 0; j < rc; ++j) {
      Vector v = Vector::Zero(db);
      for (int x = 0; x < da; ++x)
        for (int b = 0; b < db; ++b)
          for (int z = 0; z < dc; ++z)
            v(b) += std::conj(ua(x, i)) * std::conj(uc(z, j)) * amp((x * db + b) * dc + z);
      schmidt.col(i * rc + j) = v / std::sqrt(va(i) * vc(j));
    }
  // deterministic modified Gram-Schmidt sweep
  for (int k = 0; k < schmidt.cols(); ++k) {
    for (int l = 0; l < k; ++l)
      schmidt.col(k) -= schmidt.col(l).dot(schmidt.col(k)) * schmidt.col(l);
    const double n = schmidt.col(k).norm();
    if (n < 1e-6) return NotProduct{deviation};
    schmidt.col(k) /= n;
  }
  Eigen::HouseholderQR<Matrix> qr(schmidt);
  Matrix q = qr.householderQ();
  q.leftCols(schmidt.cols()) = schmidt;
  const Matrix u = q.adjoint();

  Vector fa = Vector::Zero(da * ra);
  for (int i = 0; i < ra; ++i)
    for (int x = 0; x < da; ++x) fa(x * ra + i) = std::sqrt(va(i)) * ua(x, i);
  Vector fc = Vector::Zero(rc * dc);
  for (int j = 0; j < rc; ++j)
    for (int z = 0; z < dc; ++z) fc(j * dc + z) = std::sqrt(vc(j)) * uc(z, j);

  // apply U on the pivot and compare with the embedded product
  Vector rotated = Vector::Zero(p.dim());
  for (int x = 0; x < da; ++x)
    for (int z = 0; z < dc; ++z)
      for (int b = 0; b < db; ++b) {
        cplx s = 0.0;
        for (int b2 = 0; b2 < db; ++b2) s += u(b, b2) * amp((x * db + b2) * dc + z);
        rotated((x * db + b) * dc + z) = s;
      }
  Vector embedded = Vector::Zero(p.dim());
  for (int x = 0; x < da; ++x)
    for (int i = 0; i < ra; ++i)
      for (int j = 0; j < rc; ++j)
        for (int z = 0; z < dc; ++z)
          embedded((x * db + i * rc + j) * dc + z) = fa(x * ra + i) * fc(j * dc + z);

  Factorization f{pivot,
                  {ra, rc},
                  u,
                  {Ket::normalized(fa, {da, ra}), Ket::normalized(fc, {rc, dc})},
                  (rotated - embedded).norm()};
  return f;
}

// ---- purity lemma ----------------------------------------------------------

PurityReport purity_inequality(const DensityOperator& rho, const SubsystemSet& first) {
  first.check_range(rho.parties());
  const SubsystemSet rest = first.complement(rho.parties());
  if (first.empty() || rest.empty()) throw UsageError("purity_inequality needs a proper cut");
  const DensityOperator ra = partial_trace(rho, first);
  const DensityOperator rb = partial_trace(rho, rest);
  PurityReport r;
  r.tr2_ab = purity(rho);
  r.tr2_a = purity(ra);
  r.tr2_b = purity(rb);
  r.lhs = 1.0 + std::max(r.tr2_a, r.tr2_b) * r.tr2_ab;
  r.slack = 1.0 + r.tr2_ab - r.tr2_a - r.tr2_b;
  r.max_form_slack = r.lhs - r.tr2_a - r.tr2_b;
  const DensityOperator view = bipartition(rho, first);
  const bool product =
      frobenius_distance(view.matrix(), tensor(ra, rb).matrix()) <= kProductTol;
  const bool pure_factor = std::min(1.0 - r.tr2_a, 1.0 - r.tr2_b) <= 1e-9;
  r.equality_case = std::abs(r.slack) <= 1e-9 && product && pure_factor;
  return r;
}

// ---- marginal compatibility ------------------------------------------------

int CompatibilityReport::first_failing() const {
  for (int i = 0; i < 3; ++i)
    if (slacks[i] < -1e-12) return i;
  return -1;
}

CompatibilityReport marginal_compatibility(const Spectrum& spectrum, double la, double lb) {
  const auto& l = spectrum.eigenvalues;
  if (l.size() != 4) throw UsageError("two-qubit spectrum must have four entries");
  spectrum.validate_density();
  for (std::size_t i = 1; i < l.size(); ++i)
    if (l[i] > l[i - 1] + 1e-12) throw UsageError("spectrum must be in descending order");
  for (double v : {la, lb})
    if (v < -1e-12 || v > 0.5 + 1e-12)
      throw UsageError("minimal marginal eigenvalues must lie in [0, 1/2]");
  CompatibilityReport r;
  r.slacks[0] = std::min(la, lb) - (l[2] + l[3]);
  r.slacks[1] = la + lb - (l[1] + l[2] + 2.0 * l[3]);
  r.slacks[2] = std::min(l[0] - l[2], l[1] - l[3]) - std::abs(la - lb);
  r.compatible = r.first_failing() < 0;
  return r;
}

// ---- additivity ------------------------------------------------------------

double additivity_gap(const DensityOperator& rho1, const DensityOperator& rho2,
                      const MeasureKind& kind, AdditivityScope scope, const RoofConfig& config,
                      bool* converged) {
  if (kind.kind() != Kind::EoF) throw KindError("additivity is implemented for EoF only");
  const int parties = scope == AdditivityScope::Bipartite ? 2 : 3;
  if (rho1.parties() != parties || rho2.parties() != parties)
    throw UsageError("additivity factors must have matching party counts");
  const bool pure1 = is_pure(rho1), pure2 = is_pure(rho2);
  if (!pure1 && !pure2 && rho1.dim() * rho2.dim() > 16)
    throw UsageError("mixed (x) mixed additivity is limited to merged dimension 16");

  if (converged) *converged = true;
  if (scope == AdditivityScope::Bipartite) {
    if (pure1 && pure2) {
      const Ket a = top_ket(rho1), b = top_ket(rho2);
      const Ket merged = tensor(a, b);
      return measure_pure_bipartite(merged, kind, SubsystemSet{0, 2}) -
             measure_pure_bipartite(a, kind) - measure_pure_bipartite(b, kind);
    }
    bool c1 = true, c2 = true, c3 = true;
    const double e1 = bipartite_value(rho1, kind, SubsystemSet{0}, config, &c1);
    const double e2 = bipartite_value(rho2, kind, SubsystemSet{0}, config, &c2);
    const double e12 = bipartite_value(tensor(rho1, rho2), kind, SubsystemSet{0, 2}, config, &c3);
    if (converged) *converged = c1 && c2 && c3;
    return e12 - e1 - e2;
  }
  const std::vector<std::vector<int>> groups{{0, 3}, {1, 4}, {2, 5}};
  if (pure1 && pure2) {
    const Ket a = top_ket(rho1), b = top_ket(rho2);
    const Ket merged = regroup(tensor(a, b), groups);
    return measure_pure_tripartite(merged, kind) - measure_pure_tripartite(a, kind) -
           measure_pure_tripartite(b, kind);
  }
  bool c1 = true, c2 = true, c3 = true;
  const double e1 = tripartite_value(rho1, kind, config, &c1);
  const double e2 = tripartite_value(rho2, kind, config, &c2);
  const double e12 = tripartite_value(regroup(tensor(rho1, rho2), groups), kind, config, &c3);
  if (converged) *converged = c1 && c2 && c3;
  return e12 - e1 - e2;
}

}  // namespace mpent
