#include "mpent/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mpent/convexroof.hpp"
#include "mpent/measures.hpp"
#include "mpent/monogamy.hpp"
#include "mpent/parallel.hpp"
#include "mpent/qcore.hpp"
#include "mpent/random.hpp"
#include "mpent/states.hpp"

namespace mpent {

Check make_check(std::string name, double measured, double expected, double tolerance,
                 Relation relation) {
  bool pass = false;
  switch (relation) {
    case Relation::Near: pass = std::abs(measured - expected) <= tolerance; break;
    case Relation::AtLeast: pass = measured >= expected - tolerance; break;
    case Relation::AtMost: pass = measured <= expected + tolerance; break;
    case Relation::Below: pass = measured < expected; break;
  }
  return {std::move(name), measured, expected, tolerance, relation, pass};
}

const char* relation_symbol(Relation r) {
  switch (r) {
    case Relation::Near: return "~=";
    case Relation::AtLeast: return ">=";
    case Relation::AtMost: return "<=";
    case Relation::Below: return "<";
  }
  return "?";
}

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"additivity", "counterexample", "hierarchy",
                                              "mems-story", "purity-lemma"};
  return names;
}

namespace {

std::string dims_tag(const Dims& d) {
  std::string s;
  for (int x : d) s += std::to_string(x);
  return s;
}

double tr2_sqrt(const DensityOperator& rho) {
  const double t = sqrt_trace(rho);
  return t * t;
}

// ---- hierarchy -------------------------------------------------------------

void hierarchy_suite(std::uint64_t seed, int width, std::vector<Check>& out) {
  const std::vector<std::pair<std::string, MeasureKind>> kinds{
      {"concurrence", MeasureKind::concurrence()},
      {"eof", MeasureKind::eof()},
      {"tangle", MeasureKind::tangle()},
      {"tsallis2", MeasureKind::tsallis(2.0)}};
  const std::vector<Dims> dims_list{{2, 2, 2}, {2, 2, 4}};
  constexpr int kStates = 200;
  for (std::size_t di = 0; di < dims_list.size(); ++di) {
    const Dims& dims = dims_list[di];
    std::vector<Ket> states;
    for (int i = 0; i < kStates; ++i)
      states.push_back(random_pure(dims, derive_seed(seed, di * 100000 + i)));
    for (const auto& [name, kind] : kinds) {
      std::vector<double> slack(kStates), dev(kStates);
      parallel_for(kStates, width, [&](int i) {
        slack[i] = check_condition(states[i], kind, Condition::Hierarchy).worst_gap;
        // E3 = (1/2) sum of cut values; concurrence through its square
        const MeasureKind k = kind.kind() == Kind::Concurrence ? MeasureKind::tangle() : kind;
        double half = 0.0;
        for (int x = 0; x < 3; ++x)
          half += 0.5 * measure_pure_bipartite(states[i], k, SubsystemSet{x}, BipartiteForm::Unified);
        dev[i] = std::abs(measure_pure_tripartite(states[i], k) - half);
      });
      const std::string tag = name + "/" + dims_tag(dims);
      out.push_back(make_check("hierarchy/" + tag + "/min_slack",
                               *std::min_element(slack.begin(), slack.end()), 0.0, 1e-9,
                               Relation::AtLeast));
      out.push_back(make_check("unification/" + tag + "/half_sum_deviation",
                               *std::max_element(dev.begin(), dev.end()), 0.0, 1e-9,
                               Relation::AtMost));
    }
  }
  const Ket g = ghz(2, 3);
  out.push_back(make_check("hierarchy/ghz/eof/worst_gap",
                           check_condition(g, MeasureKind::eof(), Condition::Hierarchy).worst_gap,
                           0.5 * std::log(2.0), 1e-9));
}

// ---- counterexample --------------------------------------------------------

struct SpectrumCase {
  std::string tag;
  std::vector<double> spectrum;
  double gap;
};

void counterexample_suite(std::uint64_t seed, int, std::vector<Check>& out) {
  const std::vector<SpectrumCase> cases{
      {"state1", {327.0 / 512, 37.0 / 128, 37.0 / 512, 0.0}, 0.0506086},
      {"state2", {87.0 / 128, 37.0 / 128, 1.0 / 32, 0.0}, -0.1593927}};
  for (const SpectrumCase& c : cases) {
    const SpectrumTarget target{Spectrum{c.spectrum}, 0.125, 0.25};
    const SpectraResult res = state_with_spectra(target, seed);
    const std::string p = "counterexample/" + c.tag + "/";
    out.push_back(make_check(p + "found", res.status == SpectraStatus::Found ? 1.0 : 0.0, 1.0, 0.0));
    if (!res.state) continue;
    const DensityOperator& s = *res.state;
    const DensityOperator sb = partial_trace(s, SubsystemSet{0});
    const DensityOperator sc = partial_trace(s, SubsystemSet{1});
    out.push_back(make_check(p + "marginal_residual", res.residual, 0.0, 1e-6, Relation::AtMost));
    const Spectrum sp = spectrum(s);
    double spec_dev = 0.0;
    for (int i = 0; i < 4; ++i)
      spec_dev = std::max(spec_dev, std::abs(sp.eigenvalues[i] - c.spectrum[i]));
    out.push_back(make_check(p + "joint_spectrum_deviation", spec_dev, 0.0, 1e-12, Relation::AtMost));
    const double gap = 1.0 + tr2_sqrt(s) - tr2_sqrt(sb) - tr2_sqrt(sc);
    out.push_back(make_check(p + "hierarchy_gap", gap, c.gap, 1e-4));

    if (c.tag == "state1") {
      const ConditionReport rep =
          check_condition(purify(s), MeasureKind::negativity_roof(), Condition::Hierarchy);
      out.push_back(make_check(p + "negativity_hierarchy_worst_gap", rep.worst_gap, -c.gap, 1e-4));
      out.push_back(make_check(p + "negativity_hierarchy_fails", rep.worst_gap, 0.0, 0.0,
                               Relation::Below));
    } else {
      const double lhs = purity(sb) * purity(sc);
      const double rhs = purity(s);
      out.push_back(make_check(p + "tau_prime_witness/lhs", lhs, 0.4882813, 1e-6));
      out.push_back(make_check(p + "tau_prime_witness/rhs", rhs, 0.5465088, 1e-6));
      out.push_back(make_check(p + "tau_prime_witness/lhs_below_rhs", lhs, rhs, 0.0, Relation::Below));
    }
  }
  const CompatibilityReport bad =
      marginal_compatibility(Spectrum{{1.0, 0.0, 0.0, 0.0}}, 0.25, 0.0);
  out.push_back(make_check("counterexample/infeasible_target_rejected", bad.compatible ? 0.0 : 1.0,
                           1.0, 0.0));
}

// ---- additivity ------------------------------------------------------------

void additivity_suite(std::uint64_t seed, int width, std::vector<Check>& out) {
  const DensityOperator bell = DensityOperator::from_ket(ghz(2, 2));
  constexpr int kSeeds = 10;
  std::vector<double> gaps(kSeeds), oracle(kSeeds);
  RoofConfig cfg;
  cfg.seed = seed;
  cfg.threads = 1;
  parallel_for(kSeeds, width, [&](int i) {
    const DensityOperator rho = random_mixed({2, 2}, 2 + i % 3, derive_seed(seed, 1000 + i));
    gaps[i] = additivity_gap(rho, bell, MeasureKind::eof(), AdditivityScope::Bipartite, cfg);
    // merged roof against the two-qubit closed form plus ln 2
    const DensityOperator merged = tensor(rho, bell);
    const double e12 = bipartite_value(merged, MeasureKind::eof(), SubsystemSet{0, 2}, cfg);
    oracle[i] = e12 - wootters_ef(rho).eof - std::log(2.0);
  });
  for (int i = 0; i < kSeeds; ++i) {
    const std::string p = "additivity/rho_x_bell/" + std::to_string(i);
    out.push_back(make_check(p + "/gap", gaps[i], 0.0, 2e-3));
    out.push_back(make_check(p + "/gap_vs_wootters", oracle[i], 0.0, 2e-3));
  }
  out.push_back(make_check("additivity/pure/bell_x_bell",
                           additivity_gap(bell, bell, MeasureKind::eof(), AdditivityScope::Bipartite),
                           0.0, 1e-9));
  const DensityOperator a = DensityOperator::from_ket(random_pure({2, 3}, derive_seed(seed, 1)));
  const DensityOperator b = DensityOperator::from_ket(random_pure({3, 2}, derive_seed(seed, 2)));
  out.push_back(make_check("additivity/pure/random_x_random",
                           additivity_gap(a, b, MeasureKind::eof(), AdditivityScope::Bipartite),
                           0.0, 1e-9));
  const DensityOperator g = DensityOperator::from_ket(ghz(2, 3));
  out.push_back(make_check("additivity/pure/ghz_x_ghz_tripartite",
                           additivity_gap(g, g, MeasureKind::eof(), AdditivityScope::Tripartite),
                           0.0, 1e-9));
}

// ---- purity lemma ----------------------------------------------------------

void purity_suite(std::uint64_t seed, int width, std::vector<Check>& out) {
  const std::vector<Dims> dims_list{{2, 2}, {2, 3}, {3, 2}, {3, 3}, {2, 4},
                                    {4, 2}, {3, 4}, {4, 3}, {4, 4}};
  constexpr int kStates = 1000;
  std::vector<double> slack(kStates), max_form(kStates);
  std::vector<int> equal(kStates);
  parallel_for(kStates, width, [&](int i) {
    const Dims& d = dims_list[i % dims_list.size()];
    const int rank = 1 + static_cast<int>(derive_seed(seed, 50000 + i) % total_dim(d));
    const PurityReport r = purity_inequality(random_mixed(d, rank, derive_seed(seed, i)));
    slack[i] = r.slack;
    max_form[i] = r.max_form_slack;
    equal[i] = r.equality_case;
  });
  out.push_back(make_check("purity/random/min_slack", *std::min_element(slack.begin(), slack.end()),
                           0.0, 1e-9, Relation::AtLeast));
  // the max-weighted variant is not a valid bound; the sweep must exhibit a violation
  out.push_back(make_check("purity/random/max_form_violated",
                           *std::min_element(max_form.begin(), max_form.end()), 0.0, 0.0,
                           Relation::Below));
  int accidental = 0;
  for (int i = 0; i < kStates; ++i) {
    const int rank = 1 + static_cast<int>(derive_seed(seed, 50000 + i) %
                                          total_dim(dims_list[i % dims_list.size()]));
    if (rank > 1 && equal[i]) ++accidental;
  }
  out.push_back(make_check("purity/random/equality_on_mixed", accidental, 0.0, 0.0));

  constexpr int kProducts = 50;
  int hits = 0;
  double worst = 0.0;
  for (int i = 0; i < kProducts; ++i) {
    const int da = 2 + i % 3, db = 2 + (i / 3) % 3;
    const DensityOperator ra = random_mixed({da}, 1 + i % da, derive_seed(seed, 70000 + i));
    const DensityOperator pb = DensityOperator::from_ket(random_pure({db}, derive_seed(seed, 80000 + i)));
    const DensityOperator rho = i % 2 ? tensor(ra, pb) : tensor(pb, ra);
    const PurityReport r = purity_inequality(rho);
    hits += r.equality_case;
    worst = std::max(worst, std::abs(r.slack));
  }
  out.push_back(make_check("purity/product_with_pure/equality_count", hits, kProducts, 0.0));
  out.push_back(make_check("purity/product_with_pure/max_abs_slack", worst, 0.0, 1e-9, Relation::AtMost));

  const PurityReport bell = purity_inequality(DensityOperator::from_ket(ghz(2, 2)));
  out.push_back(make_check("purity/bell/slack", bell.slack, 1.0, 1e-12));
  out.push_back(make_check("purity/bell/max_form_slack", bell.max_form_slack, 0.5, 1e-12));
  out.push_back(make_check("purity/bell/equality_case", bell.equality_case, 0.0, 0.0));
}

// ---- MEMS story ------------------------------------------------------------

void mems_suite(std::uint64_t seed, int width, std::vector<Check>& out) {
  const double ln2 = std::log(2.0);
  constexpr double kTol = 2e-2;
  RoofConfig cfg;
  cfg.seed = seed;
  cfg.threads = 1;

  const MemsSpec spec{2, 2, {0.5, 0.5}, 2};
  const Ket ext = mems_extension_pure(spec);
  const DensityOperator ext_rho = DensityOperator::from_ket(ext);
  const DensityOperator dm = permute(double_mems(2, 2, 2), {1, 0, 2});

  struct Task {
    std::string name;
    const DensityOperator* rho;
    SubsystemSet keep;   // empty: the whole state
    SubsystemSet first;  // bipartite cut inside the kept parties; empty: tripartite
  };
  const std::vector<std::pair<std::string, const DensityOperator*>> states{{"pure", &ext_rho},
                                                                          {"mixed", &dm}};
  std::vector<Task> tasks;
  for (const auto& [tag, rho] : states) {
    tasks.push_back({tag + "/AB", rho, SubsystemSet{0, 1}, SubsystemSet{0}});
    tasks.push_back({tag + "/AC", rho, SubsystemSet{0, 2}, SubsystemSet{0}});
    tasks.push_back({tag + "/BC", rho, SubsystemSet{1, 2}, SubsystemSet{0}});
    tasks.push_back({tag + "/A|BC", rho, SubsystemSet{}, SubsystemSet{0}});
    tasks.push_back({tag + "/B|AC", rho, SubsystemSet{}, SubsystemSet{1}});
    tasks.push_back({tag + "/C|AB", rho, SubsystemSet{}, SubsystemSet{2}});
    tasks.push_back({tag + "/E3", rho, SubsystemSet{}, SubsystemSet{}});
  }
  std::vector<double> val(tasks.size());
  parallel_for(static_cast<int>(tasks.size()), width, [&](int i) {
    const Task& t = tasks[i];
    if (t.first.empty()) {
      val[i] = tripartite_value(*t.rho, MeasureKind::eof(), cfg);
      return;
    }
    const DensityOperator r = t.keep.empty() ? *t.rho : partial_trace(*t.rho, t.keep);
    val[i] = bipartite_value(r, MeasureKind::eof(), t.first, cfg);
  });
  auto get = [&](const std::string& n) {
    for (std::size_t i = 0; i < tasks.size(); ++i)
      if (tasks[i].name == n) return val[i];
    throw UsageError("missing task " + n);
  };
  for (const auto& [tag, rho] : states) {
    const std::string p = "mems/" + tag + "/";
    const double ab = get(tag + "/AB"), ac = get(tag + "/AC"), bc = get(tag + "/BC");
    // the eight bullet relations (four per state)
    out.push_back(make_check(p + "1_A|BC_minus_AB", get(tag + "/A|BC") - ab, 0.0, kTol));
    out.push_back(make_check(p + "1_AC", ac, 0.0, kTol));
    out.push_back(make_check(p + "2_B|AC_minus_AB_plus_BC", get(tag + "/B|AC") - ab - bc, 0.0, kTol));
    out.push_back(make_check(p + "3_C|AB_minus_BC", get(tag + "/C|AB") - bc, 0.0, kTol));
    out.push_back(make_check(p + "4_E3_minus_AB_plus_BC", get(tag + "/E3") - ab - bc, 0.0, kTol));
    out.push_back(make_check(p + "value/AB", ab, ln2, kTol));
    out.push_back(make_check(p + "value/BC", bc, ln2, kTol));
    out.push_back(make_check(p + "value/E3", get(tag + "/E3"), std::log(4.0), kTol));
  }
  out.push_back(make_check("mems/mixed/E3_exceeds_AB", get("mixed/AB"), get("mixed/E3"), 0.0,
                           Relation::Below));

  const DensityOperator ra = reduced(ext, SubsystemSet{0});
  const DensityOperator rc = reduced(ext, SubsystemSet{2});
  out.push_back(make_check("mems/extension/rho_AC_product_deviation",
                           frobenius_distance(reduced(ext, SubsystemSet{0, 2}).matrix(),
                                              tensor(ra, rc).matrix()),
                           0.0, 1e-12, Relation::AtMost));
  out.push_back(make_check("mems/extension/trace_C_matches_mems",
                           frobenius_distance(reduced(ext, SubsystemSet{0, 1}).matrix(),
                                              mems(spec).matrix()),
                           0.0, 1e-12, Relation::AtMost));
  auto verdict = [](const MemsSpec& s) {
    return static_cast<double>(classify_mems(mems(s)).verdict);
  };
  out.push_back(make_check("mems/classify/equal_probs", verdict(spec),
                           static_cast<double>(MemsClass::MemsUpToB), 0.0));
  out.push_back(make_check("mems/classify/probs_0.7_0.3", verdict({2, 2, {0.7, 0.3}, {}}),
                           static_cast<double>(MemsClass::MemsUpToA), 0.0));
  out.push_back(make_check("mems/classify/bell",
                           static_cast<double>(classify_mems(DensityOperator::from_ket(ghz(2, 2))).verdict),
                           static_cast<double>(MemsClass::PureMES), 0.0));
}

}  // namespace

SuiteResult run_suite(std::string_view name, std::uint64_t seed, int threads) {
  const int width = resolve_width(threads);
  SuiteResult r{std::string(name), seed, {}};
  if (name == "hierarchy") hierarchy_suite(seed, width, r.checks);
  else if (name == "counterexample") counterexample_suite(seed, width, r.checks);
  else if (name == "additivity") additivity_suite(seed, width, r.checks);
  else if (name == "purity-lemma") purity_suite(seed, width, r.checks);
  else if (name == "mems-story") mems_suite(seed, width, r.checks);
  else throw UsageError("unknown suite '" + std::string(name) + "'");
  std::stable_sort(r.checks.begin(), r.checks.end(),
                   [](const Check& a, const Check& b) { return a.name < b.name; });
  return r;
}

}  // namespace mpent
