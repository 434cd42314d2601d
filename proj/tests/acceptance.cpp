// Acceptance harness: one PASS/FAIL line per criterion.

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "mpent/convexroof.hpp"
#include "mpent/measures.hpp"
#include "mpent/monogamy.hpp"
#include "mpent/parallel.hpp"
#include "mpent/qcore.hpp"
#include "mpent/random.hpp"
#include "mpent/states.hpp"
#include "mpent/verify.hpp"

using namespace mpent;

namespace {

constexpr std::uint64_t kSeed = 0x5eedULL;
const double kLn2 = std::log(2.0);

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<double> trace;  // raw values for the determinism rerun

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- independent oracles ---------------------------------------------------

// Single-party marginal of a tripartite ket, by explicit index loops.
Matrix marginal(const Ket& psi, int party) {
  const Dims& d = psi.dims();
  const Vector& a = psi.amplitudes();
  const int n = d[party];
  Matrix m = Matrix::Zero(n, n);
  for (int i = 0; i < d[0]; ++i)
    for (int j = 0; j < d[1]; ++j)
      for (int k = 0; k < d[2]; ++k) {
        const int idx[3] = {i, j, k};
        for (int x = 0; x < n; ++x) {
          int lhs[3] = {i, j, k};
          lhs[party] = x;
          const cplx ax = a((lhs[0] * d[1] + lhs[1]) * d[2] + lhs[2]);
          const cplx ay = a((i * d[1] + j) * d[2] + k);
          m(x, idx[party]) += ax * std::conj(ay);
        }
      }
  return m;
}

Eigen::VectorXd eigs(const Matrix& m) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(m, Eigen::EigenvaluesOnly).eigenvalues();
}

double oracle_entropy(const Matrix& m) {
  double s = 0.0;
  for (double x : eigs(m))
    if (x > 1e-15) s -= x * std::log(x);
  return s;
}

double oracle_purity(const Matrix& m) { return (m * m).trace().real(); }

double oracle_sqrt_trace_sq(const Matrix& m) {
  double s = 0.0;
  for (double x : eigs(m)) s += std::sqrt(std::max(x, 0.0));
  return s * s;
}

// Two-qubit marginals: keep qubit 0 or qubit 1.
Matrix qubit_marginal(const Matrix& rho, int keep) {
  Matrix m = Matrix::Zero(2, 2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int o = 0; o < 2; ++o)
        m(a, b) += keep == 0 ? rho(a * 2 + o, b * 2 + o) : rho(o * 2 + a, o * 2 + b);
  return m;
}

// Marginals of an arbitrary da x db matrix.
std::pair<Matrix, Matrix> bipartite_marginals(const Matrix& rho, int da, int db) {
  Matrix a = Matrix::Zero(da, da), b = Matrix::Zero(db, db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j)
      for (int k = 0; k < db; ++k) a(i, j) += rho(i * db + k, j * db + k);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k) b(i, j) += rho(k * db + i, k * db + j);
  return {a, b};
}

// E3 - max cut from explicit marginal spectra.
double oracle_hierarchy_slack(const Ket& psi, const std::string& kind) {
  std::array<double, 3> s{}, p{};
  for (int x = 0; x < 3; ++x) {
    const Matrix m = marginal(psi, x);
    s[x] = oracle_entropy(m);
    p[x] = oracle_purity(m);
  }
  double e3 = 0.0;
  std::array<double, 3> cut{};
  if (kind == "eof") {
    e3 = 0.5 * (s[0] + s[1] + s[2]);
    cut = s;
  } else if (kind == "tangle" || kind == "concurrence") {
    e3 = 3.0 - p[0] - p[1] - p[2];
    for (int x = 0; x < 3; ++x) cut[x] = 2.0 * (1.0 - p[x]);
  } else {
    e3 = 0.5 * (3.0 - p[0] - p[1] - p[2]);
    for (int x = 0; x < 3; ++x) cut[x] = 1.0 - p[x];
  }
  return e3 - *std::max_element(cut.begin(), cut.end());
}

// ---- criteria --------------------------------------------------------------

Outcome criterion1(int width) {
  Outcome o;
  constexpr int kStates = 50;
  std::vector<double> roof(kStates), exact(kStates);
  const auto t0 = std::chrono::steady_clock::now();
  parallel_for(kStates, width, [&](int i) {
    const DensityOperator rho = random_mixed({2, 2}, 1 + i % 4, derive_seed(kSeed, i));
    RoofConfig cfg;
    cfg.seed = derive_seed(kSeed, 1000 + i);
    cfg.threads = 1;
    roof[i] = convex_roof(rho, MeasureKind::eof(), Scope::bipartite(SubsystemSet{0}),
                          Direction::Min, cfg)
                  .value;
    exact[i] = wootters_ef(rho).eof;
  });
  const double dt = elapsed(t0);
  double worst = 0.0;
  for (int i = 0; i < kStates; ++i) worst = std::max(worst, std::abs(roof[i] - exact[i]));
  o.trace = roof;
  o.require(worst <= 1e-3, "max |roof - wootters| " + fmt("%.3g", worst));
  o.require(dt <= 300.0, "runtime " + fmt("%.1f", dt) + " s");
  o.detail = o.pass ? "50 states, max |roof - wootters| = " + fmt("%.2e", worst) + ", " +
                          fmt("%.1f", dt) + " s"
                    : o.detail;
  return o;
}

Outcome criterion2(int) {
  Outcome o;
  auto near = [&](const std::string& what, double got, double want, double tol) {
    o.trace.push_back(got);
    o.require(std::abs(got - want) <= tol, what + " = " + fmt("%.12g", got));
  };
  const Ket g = ghz(2, 3);
  near("GHZ E_f", measure_pure_tripartite(g, MeasureKind::eof()), 1.5 * kLn2, 1e-9);
  near("GHZ tau", measure_pure_tripartite(g, MeasureKind::tangle()), 1.5, 1e-9);
  near("GHZ C", measure_pure_tripartite(g, MeasureKind::concurrence()), std::sqrt(1.5), 1e-9);
  near("GHZ N", negativity_tripartite(DensityOperator::from_ket(g)), 3.0, 1e-9);
  near("GHZ T2", measure_pure_tripartite(g, MeasureKind::tsallis(2.0)), 0.75, 1e-9);
  const Ket w = w_state();
  near("W tau", measure_pure_tripartite(w, MeasureKind::tangle()), 4.0 / 3.0, 1e-6);
  near("W three-tangle", three_tangle(w), 0.0, 1e-6);

  const Ket bell = ghz(2, 2);
  const Ket bell0 = tensor(bell, Ket::basis({2}, {0}));
  const std::vector<MeasureKind> kinds{
      MeasureKind::eof(),         MeasureKind::concurrence(), MeasureKind::tangle(),
      MeasureKind::tsallis(2.0),  MeasureKind::tsallis(3.0),  MeasureKind::renyi(0.5),
      MeasureKind::negativity(),  MeasureKind::negativity_roof(), MeasureKind::tau_prime()};
  for (const MeasureKind& k : kinds) {
    const MeasureKind bk = k.kind() == Kind::TauPrime ? MeasureKind::tangle() : k;
    const double bi = measure_pure_bipartite(bell, bk, SubsystemSet{0}, BipartiteForm::Unified);
    const double tri = k.kind() == Kind::Negativity
                           ? negativity_tripartite(DensityOperator::from_ket(bell0))
                           : measure_pure_tripartite(bell0, k);
    near("Bell(x)|0> " + k.name(), tri, bi, 1e-9);
  }
  if (o.pass) o.detail = "GHZ, W and Bell(x)|0> closed forms within tolerance";
  return o;
}

Outcome criterion3(int width) {
  Outcome o;
  const std::vector<std::pair<std::string, MeasureKind>> kinds{
      {"eof", MeasureKind::eof()},
      {"concurrence", MeasureKind::concurrence()},
      {"tangle", MeasureKind::tangle()},
      {"tsallis2", MeasureKind::tsallis(2.0)}};
  double min_slack = std::numeric_limits<double>::infinity();
  double max_dev = 0.0;
  for (const Dims& dims : {Dims{2, 2, 2}, Dims{2, 2, 4}}) {
    constexpr int kStates = 200;
    std::vector<double> lib(kStates * kinds.size()), ora(kStates * kinds.size());
    parallel_for(kStates, width, [&](int i) {
      const Ket psi = random_pure(dims, derive_seed(kSeed, 7000 + dims[2] * 1000 + i));
      for (std::size_t k = 0; k < kinds.size(); ++k) {
        lib[i * kinds.size() + k] =
            check_condition(psi, kinds[k].second, Condition::Hierarchy).worst_gap;
        ora[i * kinds.size() + k] = oracle_hierarchy_slack(psi, kinds[k].first);
      }
    });
    for (std::size_t i = 0; i < lib.size(); ++i) {
      min_slack = std::min(min_slack, lib[i]);
      max_dev = std::max(max_dev, std::abs(lib[i] - ora[i]));
    }
    o.trace.insert(o.trace.end(), lib.begin(), lib.end());
  }
  o.require(min_slack >= -1e-9, "min hierarchy slack " + fmt("%.3g", min_slack));
  o.require(max_dev <= 1e-9, "library vs oracle slack deviation " + fmt("%.3g", max_dev));

  const std::vector<std::pair<std::vector<double>, double>> targets{
      {{327.0 / 512, 37.0 / 128, 37.0 / 512, 0.0}, 0.0506086},
      {{87.0 / 128, 37.0 / 128, 1.0 / 32, 0.0}, -0.1593927}};
  std::string gaps;
  for (const auto& [spec, want] : targets) {
    const SpectraResult res = state_with_spectra({Spectrum{spec}, 0.125, 0.25}, kSeed);
    if (!res.state) {
      o.require(false, "no state for target spectrum");
      continue;
    }
    const Matrix& s = res.state->matrix();
    const Matrix b = qubit_marginal(s, 0), c = qubit_marginal(s, 1);
    const double fit = std::max(std::abs(eigs(b)(0) - 0.125), std::abs(eigs(c)(0) - 0.25));
    o.require(fit <= 1e-6, "marginal fit " + fmt("%.3g", fit));
    const double gap = 1.0 + oracle_sqrt_trace_sq(s) - oracle_sqrt_trace_sq(b) -
                       oracle_sqrt_trace_sq(c);
    o.trace.push_back(gap);
    o.require(std::abs(gap - want) <= 1e-4, "hierarchy gap " + fmt("%.7f", gap));
    if (want > 0) {
      const double lib = check_condition(purify(*res.state), MeasureKind::negativity_roof(),
                                         Condition::Hierarchy)
                             .worst_gap;
      o.trace.push_back(lib);
      o.require(lib < 0.0 && std::abs(lib + want) <= 1e-4,
                "negativity hierarchy worst gap " + fmt("%.7f", lib));
    }
    gaps += (gaps.empty() ? "" : ", ") + fmt("%+.7f", gap);
  }
  if (o.pass)
    o.detail = "min slack " + fmt("%.3g", min_slack) + " over 1600 evaluations; gaps " + gaps;
  return o;
}

Outcome criterion4(int) {
  Outcome o;
  const SpectraResult res =
      state_with_spectra({Spectrum{{87.0 / 128, 37.0 / 128, 1.0 / 32, 0.0}}, 0.125, 0.25}, kSeed);
  if (!res.state) {
    o.require(false, "no state for the second target");
    return o;
  }
  const Matrix& s = res.state->matrix();
  const double lhs = oracle_purity(qubit_marginal(s, 0)) * oracle_purity(qubit_marginal(s, 1));
  const double rhs = oracle_purity(s);
  o.trace = {lhs, rhs};
  o.require(std::abs(lhs - 0.4882813) <= 1e-6, "Tr(B)^2 Tr(C)^2 = " + fmt("%.8f", lhs));
  o.require(std::abs(rhs - 0.5465088) <= 1e-6, "Tr(BC)^2 = " + fmt("%.8f", rhs));
  o.require(lhs < rhs, "witness direction");
  if (o.pass) o.detail = fmt("%.7f", lhs) + " < " + fmt("%.7f", rhs);
  return o;
}

Outcome criterion5(int width) {
  Outcome o;
  RoofConfig cfg;
  cfg.threads = width;
  const MonogamyReport w = audit(DensityOperator::from_ket(w_state()), MeasureKind::tangle(), 1.0, cfg);
  const MonogamyReport g = audit(DensityOperator::from_ket(ghz(2, 3)), MeasureKind::tangle(), 1.0, cfg);
  o.trace = {w.complete_gap, g.complete_gap};
  o.require(std::abs(w.complete_gap) <= 2e-3, "W complete gap " + fmt("%.3g", w.complete_gap));
  o.require(std::abs(g.complete_gap - 1.5) <= 2e-3, "GHZ complete gap " + fmt("%.6f", g.complete_gap));

  // breach: E3 equal to one pair while another pair is entangled
  constexpr int kSamples = 100;
  std::vector<int> breach(kSamples * 2);
  std::vector<double> gaps(kSamples * 2);
  parallel_for(kSamples, width, [&](int i) {
    const DensityOperator rho =
        DensityOperator::from_ket(random_pure({2, 2, 2}, derive_seed(kSeed, 9000 + i)));
    RoofConfig inner;
    inner.threads = 1;
    inner.seed = derive_seed(kSeed, 9500 + i);
    int k = 0;
    for (const MeasureKind& kind : {MeasureKind::eof(), MeasureKind::tangle()}) {
      const MonogamyReport r = audit(rho, kind, 1.0, inner);
      bool bad = false;
      for (int p = 0; p < 3; ++p)
        if (r.pair_disentangling[p])
          for (int q = 0; q < 3; ++q)
            if (q != p && r.pair_values[q].second > 1e-6) bad = true;
      breach[2 * i + k] = bad;
      gaps[2 * i + k] = r.complete_gap;
      ++k;
    }
  });
  int violations = 0;
  for (int b : breach) violations += b;
  o.trace.insert(o.trace.end(), gaps.begin(), gaps.end());
  o.require(violations == 0, std::to_string(violations) + " disentangling violations");
  if (o.pass)
    o.detail = "W gap " + fmt("%.2e", w.complete_gap) + ", GHZ gap " + fmt("%.6f", g.complete_gap) +
               ", 0 violations in 200 audits";
  return o;
}

Outcome criterion6(int width) {
  Outcome o;
  const std::vector<MeasureKind> kinds{MeasureKind::eof(), MeasureKind::tangle(),
                                       MeasureKind::concurrence(), MeasureKind::tsallis(2.0)};
  constexpr int kStates = 50;
  std::vector<double> tight(kStates * kinds.size()), pair(kStates * kinds.size());
  parallel_for(kStates, width, [&](int i) {
    // even i: rho^C pure (|phi>^{AB}|c>); odd i: rho^B pure (|phi>^{AC}|b>)
    const int dx = 2 + i % 3;
    const Ket phi = random_pure({2, dx}, derive_seed(kSeed, 11000 + i));
    const Ket single = random_pure({2}, derive_seed(kSeed, 12000 + i));
    const Ket psi = i % 2 == 0 ? tensor(phi, single) : permute(tensor(phi, single), {0, 2, 1});
    const DensityOperator rho = DensityOperator::from_ket(psi);
    const DensityOperator bc = partial_trace(rho, SubsystemSet{1, 2});
    RoofConfig cfg;
    cfg.threads = 1;
    cfg.seed = derive_seed(kSeed, 13000 + i);
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      const MeasureKind tri = kinds[k].kind() == Kind::Concurrence ? MeasureKind::tangle() : kinds[k];
      tight[i * kinds.size() + k] =
          measure_pure_tripartite(psi, tri) -
          measure_pure_bipartite(psi, tri, SubsystemSet{0}, BipartiteForm::Unified);
      pair[i * kinds.size() + k] = bipartite_value(bc, kinds[k], SubsystemSet{0}, cfg);
    }
  });
  int premises = 0, failures = 0;
  for (std::size_t i = 0; i < tight.size(); ++i) {
    if (tight[i] <= 1e-8) {
      ++premises;
      if (pair[i] > 1e-4) ++failures;
    }
  }
  o.trace = pair;
  o.require(premises == static_cast<int>(tight.size()),
            "tightness premise held on " + std::to_string(premises) + " of " +
                std::to_string(tight.size()));
  o.require(failures == 0, std::to_string(failures) + " BC pairs above 1e-4");
  if (o.pass)
    o.detail = std::to_string(premises) + " premises, max BC pair " +
               fmt("%.2e", *std::max_element(pair.begin(), pair.end()));
  return o;
}

Outcome criterion7(int width) {
  Outcome o;
  const DensityOperator bell = DensityOperator::from_ket(ghz(2, 2));
  constexpr int kSeeds = 10;
  std::vector<double> gaps(kSeeds);
  const auto t0 = std::chrono::steady_clock::now();
  parallel_for(kSeeds, width, [&](int i) {
    const DensityOperator rho = random_mixed({2, 2}, 2 + i % 3, derive_seed(kSeed, 14000 + i));
    RoofConfig cfg;
    cfg.threads = 1;
    cfg.seed = derive_seed(kSeed, 15000 + i);
    const double merged =
        bipartite_value(tensor(rho, bell), MeasureKind::eof(), SubsystemSet{0, 2}, cfg);
    gaps[i] = merged - wootters_ef(rho).eof - kLn2;
  });
  const double dt = elapsed(t0);
  double worst = 0.0;
  for (double g : gaps) worst = std::max(worst, std::abs(g));
  o.trace = gaps;
  o.require(worst <= 2e-3, "max |gap| " + fmt("%.3g", worst));

  double exact = 0.0;
  const DensityOperator p1 = DensityOperator::from_ket(random_pure({2, 3}, derive_seed(kSeed, 1)));
  const DensityOperator p2 = DensityOperator::from_ket(random_pure({2, 2}, derive_seed(kSeed, 2)));
  const DensityOperator g3 = DensityOperator::from_ket(ghz(2, 3));
  const DensityOperator w3 = DensityOperator::from_ket(w_state());
  for (double v : {additivity_gap(bell, bell, MeasureKind::eof(), AdditivityScope::Bipartite),
                   additivity_gap(p1, p2, MeasureKind::eof(), AdditivityScope::Bipartite),
                   additivity_gap(g3, w3, MeasureKind::eof(), AdditivityScope::Tripartite)}) {
    exact = std::max(exact, std::abs(v));
    o.trace.push_back(v);
  }
  o.require(exact <= 1e-9, "pure branch gap " + fmt("%.3g", exact));
  o.require(dt <= 600.0, "runtime " + fmt("%.1f", dt) + " s");
  if (o.pass)
    o.detail = "max |gap| " + fmt("%.2e", worst) + ", pure branches " + fmt("%.1e", exact) + ", " +
               fmt("%.1f", dt) + " s";
  return o;
}

Outcome criterion8(int width) {
  Outcome o;
  constexpr int kStates = 1000;
  std::vector<double> lib(kStates), ora(kStates);
  parallel_for(kStates, width, [&](int i) {
    const int da = 2 + i % 3, db = 2 + (i / 3) % 3;
    const int rank = 1 + i % (da * db);
    const DensityOperator rho = random_mixed({da, db}, rank, derive_seed(kSeed, 16000 + i));
    lib[i] = purity_inequality(rho).slack;
    const auto [a, b] = bipartite_marginals(rho.matrix(), da, db);
    ora[i] = 1.0 + oracle_purity(rho.matrix()) - oracle_purity(a) - oracle_purity(b);
  });
  double min_slack = std::numeric_limits<double>::infinity(), dev = 0.0;
  for (int i = 0; i < kStates; ++i) {
    min_slack = std::min(min_slack, lib[i]);
    dev = std::max(dev, std::abs(lib[i] - ora[i]));
  }
  o.trace = lib;
  o.require(min_slack >= -1e-9, "min slack " + fmt("%.3g", min_slack));
  o.require(dev <= 1e-12, "library vs oracle " + fmt("%.3g", dev));

  int eq_true = 0, eq_false = 0;
  for (int i = 0; i < 40; ++i) {
    const int da = 2 + i % 3, db = 2 + (i / 3) % 2;
    const DensityOperator ra = random_mixed({da}, 1 + i % da, derive_seed(kSeed, 17000 + i));
    const DensityOperator pb =
        DensityOperator::from_ket(random_pure({db}, derive_seed(kSeed, 18000 + i)));
    eq_true += purity_inequality(tensor(ra, pb)).equality_case;
    eq_true += purity_inequality(tensor(pb, ra)).equality_case;
    // negative controls: mixed product, and entangled pure
    const DensityOperator rb = random_mixed({db}, 2, derive_seed(kSeed, 19000 + i));
    const DensityOperator mixed_a = random_mixed({da}, 2, derive_seed(kSeed, 20000 + i));
    eq_false += purity_inequality(tensor(mixed_a, rb)).equality_case;
    eq_false += purity_inequality(
                    DensityOperator::from_ket(random_pure({da, db}, derive_seed(kSeed, 21000 + i))))
                    .equality_case;
  }
  o.require(eq_true == 80, std::to_string(eq_true) + "/80 product-with-pure equality cases");
  o.require(eq_false == 0, std::to_string(eq_false) + " false equality cases");
  if (o.pass)
    o.detail = "min slack " + fmt("%.3g", min_slack) + " over 1000 states; equality 80/80, controls 0/80";
  return o;
}

Outcome criterion9(int width) {
  Outcome o;
  const SuiteResult r = run_suite("mems-story", kSeed, width);
  for (const Check& c : r.checks) {
    o.trace.push_back(c.measured);
    o.require(c.pass, c.name + " = " + fmt("%.6g", c.measured));
  }
  if (o.pass) o.detail = std::to_string(r.checks.size()) + " checks";
  return o;
}

Outcome guarded(const std::function<Outcome(int)>& fn, int width) {
  try {
    return fn(width);
  } catch (const std::exception& e) {
    Outcome o;
    o.require(false, std::string("exception: ") + e.what());
    return o;
  }
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         (a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

}  // namespace

int main() {
  using Fn = std::function<Outcome(int)>;
  const std::vector<std::pair<std::string, Fn>> criteria{
      {"oracle equivalence (convex roof vs Wootters)", criterion1},
      {"closed-form spot values", criterion2},
      {"hierarchy split and counterexample gaps", criterion3},
      {"tau-prime witness", criterion4},
      {"complete monogamy regression", criterion5},
      {"tight monogamy", criterion6},
      {"additivity", criterion7},
      {"purity inequality", criterion8},
      {"MEMS relations", criterion9},
  };
  int failed = 0;
  std::vector<std::vector<double>> serial;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Outcome o = guarded(criteria[i].second, 1);
    serial.push_back(o.trace);
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }

  // criterion 10: width 4 reruns, plus every verify suite at widths 1 and 4
  Outcome det;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const Outcome o = guarded(criteria[i].second, 4);
    det.require(bitwise_equal(o.trace, serial[i]), "criterion " + std::to_string(i + 1) + " differs");
  }
  for (const std::string& name : suite_names()) {
    const SuiteResult a = run_suite(name, kSeed, 1);
    const SuiteResult b = run_suite(name, kSeed, 4);
    std::vector<double> va, vb;
    for (const Check& c : a.checks) va.push_back(c.measured);
    for (const Check& c : b.checks) vb.push_back(c.measured);
    det.require(bitwise_equal(va, vb), "suite " + name + " differs");
  }
  if (det.pass) det.detail = "criteria 1-9 and all verify suites bit-identical at widths 1 and 4";
  std::printf("%s 10 determinism: %s\n", det.pass ? "PASS" : "FAIL", det.detail.c_str());
  failed += !det.pass;
  return failed == 0 ? 0 : 1;
}
