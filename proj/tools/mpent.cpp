#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mpent/measures.hpp"
#include "mpent/monogamy.hpp"
#include "mpent/parallel.hpp"
#include "mpent/qcore.hpp"
#include "mpent/random.hpp"
#include "mpent/report.hpp"
#include "mpent/state_file.hpp"
#include "mpent/states.hpp"
#include "mpent/verify.hpp"

using namespace mpent;
using nlohmann::json;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitParameter = 3;
constexpr int kExitNotConverged = 4;
constexpr int kExitInfeasible = 5;

struct Infeasible : Error {
  using Error::Error;
};

struct RoofFlags {
  int restarts = RoofConfig{}.restarts;
  int max_iters = RoofConfig{}.max_iters;
  double rel_tol = RoofConfig{}.rel_tol;
  int ensemble_size = 0;
  std::uint64_t seed = RoofConfig{}.seed;
  int threads = 0;

  void attach(CLI::App* app) {
    app->add_option("--restarts", restarts, "roof restarts")->check(CLI::PositiveNumber);
    app->add_option("--max-iters", max_iters, "roof iteration cap")->check(CLI::PositiveNumber);
    app->add_option("--rel-tol", rel_tol, "roof relative stopping tolerance");
    app->add_option("--ensemble-size", ensemble_size, "decomposition length (0: automatic)");
    app->add_option("--seed", seed, "master seed");
    app->add_option("--threads", threads, "parallel width (default: MPENT_THREADS or 1)");
  }

  RoofConfig config() const {
    RoofConfig c;
    c.restarts = restarts;
    c.max_iters = max_iters;
    c.rel_tol = rel_tol;
    c.ensemble_size = ensemble_size;
    c.seed = seed;
    c.threads = threads;
    c.validate();
    return c;
  }

  json to_json() const {
    return {{"restarts", restarts}, {"max_iters", max_iters}, {"rel_tol", rel_tol},
            {"ensemble_size", ensemble_size}};
  }
};

// "A", "AB", "0,2" -> party indices.
SubsystemSet parse_cut(const std::string& text) {
  std::vector<int> idx;
  if (!text.empty() && std::isalpha(static_cast<unsigned char>(text[0]))) {
    for (char c : text) {
      const char u = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      if (u < 'A' || u > 'Z') throw UsageError("bad cut '" + text + "'");
      idx.push_back(u - 'A');
    }
  } else {
    for (double v : parse_number_list(text)) idx.push_back(static_cast<int>(v));
  }
  return SubsystemSet(std::move(idx));
}

Dims parse_dims(const std::string& text) {
  Dims d;
  for (double v : parse_number_list(text)) {
    if (v != std::floor(v)) throw UsageError("dims must be integers");
    d.push_back(static_cast<int>(v));
  }
  check_dims(d);
  return d;
}

std::optional<double> opt_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return parse_number(s);
}

void print_record(const std::string& command, const json& params, std::uint64_t seed,
                  const json& outputs, std::chrono::steady_clock::time_point start) {
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const json rec{{"command", command}, {"parameters", params}, {"seed", seed},
                 {"outputs", outputs}, {"wall_time_s", wall}};
  std::cout << "record: " << rec.dump() << "\n";
}

// ---- measure ---------------------------------------------------------------

struct MeasureArgs {
  std::string file;
  std::string kind;
  std::string param;
  std::string scope;
  std::string cut = "A";
  std::string form = "unified";
  std::string csv;
  RoofFlags roof;
};

int run_measure(const MeasureArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  const StateFile sf = read_state_file(a.file);
  const MeasureKind kind = MeasureKind::parse(a.kind, opt_number(a.param));
  const RoofConfig cfg = a.roof.config();
  const DensityOperator rho = sf.density();
  const std::string scope = a.scope.empty() ? (rho.parties() == 3 ? "tripartite" : "bipartite")
                                            : a.scope;
  double value = 0.0;
  bool converged = true;
  if (scope == "tripartite") {
    kind.require_tripartite();
    value = tripartite_value(rho, kind, cfg, &converged);
  } else if (scope == "bipartite") {
    const SubsystemSet first = parse_cut(a.cut);
    first.check_range(rho.parties());
    if (a.form == "standard") {
      if (kind.is_negativity()) {
        value = negativity_bipartite(rho, first);
      } else {
        value = bipartite_value(rho, kind, first, cfg, &converged);
      }
    } else if (a.form == "unified") {
      value = bipartite_value(rho, kind, first, cfg, &converged);
    } else {
      throw UsageError("--form must be standard or unified");
    }
  } else {
    throw UsageError("--scope must be bipartite or tripartite");
  }

  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", value);
  std::cout << "value " << buf << "\n";
  json outputs{{"value", value}};
  if (!converged) {
    outputs["warning"] = "convex roof did not converge";
    std::cout << "warning: convex roof did not converge\n";
  }
  json params{{"file", a.file}, {"kind", kind.name()}, {"scope", scope}, {"roof", a.roof.to_json()}};
  if (!a.param.empty()) params["param"] = kind.param();
  if (scope == "bipartite") {
    params["cut"] = parse_cut(a.cut).label();
    params["form"] = a.form;
  }
  print_record("measure", params, a.roof.seed, outputs, start);
  if (!a.csv.empty()) {
    CsvRow row;
    row.command = "measure";
    row.label = sf.label;
    row.kind = kind.name();
    row.scope = scope == "bipartite" ? parse_cut(a.cut).label() + "|rest" : scope;
    row.value = value;
    if (scope == "tripartite") row.tripartite = value;
    row.seed = a.roof.seed;
    row.converged = converged;
    append_csv(a.csv, {row});
  }
  return converged ? 0 : kExitNotConverged;
}

// ---- audit -----------------------------------------------------------------

struct AuditArgs {
  std::string file;
  std::string kind;
  std::string param;
  double alpha = 1.0;
  bool find_exponent = false;
  double tol = 1e-3;
  int samples = 0;
  std::string random_dims;
  std::string svg;
  std::string csv;
  RoofFlags roof;
};

void print_report(const MonogamyReport& r) {
  auto row = [](const std::string& k, const std::string& v) {
    std::printf("%-22s %s\n", k.c_str(), v.c_str());
  };
  auto num = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9f", v);
    return std::string(buf);
  };
  row("measure", r.measure.name());
  row("alpha", num(r.alpha));
  row("tripartite", num(r.tripartite_value));
  for (std::size_t i = 0; i < 3; ++i) {
    row("pair " + r.pair_values[i].first,
        num(r.pair_values[i].second) + (r.pair_disentangling[i] ? "  [disentangling]" : ""));
  }
  for (std::size_t i = 0; i < 3; ++i) {
    row("cut " + r.cut_values[i].first,
        num(r.cut_values[i].second) + (r.cut_disentangling[i] ? "  [disentangling]" : ""));
  }
  row("complete_gap", num(r.complete_gap));
  for (std::size_t i = 0; i < 3; ++i)
    row("tight_gap " + r.cut_values[i].first, num(r.tight_gap_per_cut[i]));
  row("converged", r.converged ? "true" : "false");
}

double gap_at(const MonogamyReport& r, double alpha) {
  double sum = 0.0;
  for (const auto& [name, v] : r.pair_values) sum += std::pow(v, alpha);
  return std::pow(r.tripartite_value, alpha) - sum;
}

int run_audit(const AuditArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  const MeasureKind kind = MeasureKind::parse(a.kind, opt_number(a.param));
  kind.require_tripartite();
  const RoofConfig cfg = a.roof.config();

  std::vector<DensityOperator> states;
  std::string label;
  if (a.samples > 0) {
    if (!a.file.empty()) throw UsageError("give either a state file or --samples");
    const Dims dims = parse_dims(a.random_dims.empty() ? "2,2,2" : a.random_dims);
    if (dims.size() != 3) throw UsageError("--random needs three dims");
    for (int i = 0; i < a.samples; ++i)
      states.push_back(DensityOperator::from_ket(random_pure(dims, derive_seed(a.roof.seed, i))));
    label = "random";
  } else {
    if (a.file.empty()) throw UsageError("a state file or --samples is required");
    const StateFile sf = read_state_file(a.file);
    states.push_back(sf.density());
    label = sf.label;
  }

  json params{{"kind", kind.name()}, {"roof", a.roof.to_json()}};
  if (!a.file.empty()) params["file"] = a.file;
  if (a.samples > 0) {
    params["samples"] = a.samples;
    params["random"] = a.random_dims.empty() ? "2,2,2" : a.random_dims;
  }
  json outputs;
  bool converged = true;
  std::vector<CsvRow> rows;

  if (a.find_exponent) {
    params["tol"] = a.tol;
    const ExponentEstimate e = monogamy_exponent(states, kind, a.tol, cfg);
    std::printf("%-22s %.9f\n", "alpha_star", e.alpha_star);
    std::printf("%-22s [%.9f, %.9f]\n", "bracket", e.bracket.first, e.bracket.second);
    std::printf("%-22s %d\n", "samples", e.samples);
    std::printf("%-22s %d\n", "violations", e.violations);
    std::printf("%-22s %d\n", "ceiling_hits", e.ceiling_hits);
    const bool floor_hit = e.alpha_star <= kExponentFloor * (1.0 + 1e-12);
    if (floor_hit) std::printf("bracket floor hit: every alpha >= %g satisfies the bound\n", kExponentFloor);
    outputs = {{"alpha_star", e.alpha_star},
               {"bracket_low", e.bracket.first},
               {"bracket_high", e.bracket.second},
               {"violations", e.violations},
               {"ceiling_hits", e.ceiling_hits},
               {"floor_hit", floor_hit}};
    CsvRow row;
    row.command = "audit";
    row.label = label;
    row.kind = kind.name();
    row.scope = "exponent";
    row.alpha = e.alpha_star;
    row.value = e.alpha_star;
    row.tolerance = a.tol;
    row.seed = a.roof.seed;
    rows.push_back(row);
    if (!a.svg.empty()) {
      const MonogamyReport r = audit(states.front(), kind, 1.0, cfg);
      converged = r.converged;
      const double lo = std::max(kExponentFloor, e.bracket.first / 10.0);
      const double hi = std::min(kExponentCeiling, std::max(e.bracket.second * 10.0, lo * 10.0));
      GapCurve curve{"complete gap, " + kind.name(), {}, e.alpha_star};
      for (double x : log_grid(lo, hi, 97)) curve.points.emplace_back(x, gap_at(r, x));
      write_gap_svg(a.svg, curve);
    }
  } else {
    if (states.size() != 1) throw UsageError("--alpha audits a single state; use --find-exponent");
    params["alpha"] = a.alpha;
    const MonogamyReport r = audit(states.front(), kind, a.alpha, cfg);
    converged = r.converged;
    print_report(r);
    outputs = {{"tripartite", r.tripartite_value}, {"complete_gap", r.complete_gap}};
    for (const auto& [name, v] : r.pair_values) outputs["pair_" + name] = v;
    for (const auto& [name, v] : r.cut_values) outputs["cut_" + name] = v;
    CsvRow row;
    row.command = "audit";
    row.label = label;
    row.kind = kind.name();
    row.scope = "tripartite";
    row.alpha = a.alpha;
    row.value = r.complete_gap;
    row.tripartite = r.tripartite_value;
    row.pair_ab = r.pair_values[0].second;
    row.pair_ac = r.pair_values[1].second;
    row.pair_bc = r.pair_values[2].second;
    row.cut_a_bc = r.cut_values[0].second;
    row.cut_b_ac = r.cut_values[1].second;
    row.cut_ab_c = r.cut_values[2].second;
    row.complete_gap = r.complete_gap;
    row.seed = a.roof.seed;
    row.converged = r.converged;
    rows.push_back(row);
    if (!a.svg.empty()) {
      GapCurve curve{"complete gap, " + kind.name(), {}, a.alpha};
      const double lo = std::max(kExponentFloor, a.alpha / 10.0);
      const double hi = std::min(kExponentCeiling, std::max(a.alpha * 10.0, lo * 10.0));
      for (double x : log_grid(lo, hi, 97)) curve.points.emplace_back(x, gap_at(r, x));
      write_gap_svg(a.svg, curve);
    }
  }
  if (!converged) {
    outputs["warning"] = "convex roof did not converge";
    std::cout << "warning: convex roof did not converge\n";
  }
  print_record("audit", params, a.roof.seed, outputs, start);
  if (!a.csv.empty()) append_csv(a.csv, rows);
  return converged ? 0 : kExitNotConverged;
}

// ---- construct -------------------------------------------------------------

struct ConstructArgs {
  std::string family;
  std::string out;
  std::string label;
  int d = 2;
  int parties = 3;
  std::string lams;
  int m = 2;
  int r = 2;
  std::string probs;
  int l = 2;
  std::string dims = "2,2,2";
  int rank = 0;
  std::uint64_t seed = 0x5eedULL;
  std::string joint;
  std::string la;
  std::string lb;
};

const char* kInequality[3] = {"min(lA,lB) >= l3+l4", "lA+lB >= l2+l3+2*l4",
                              "|lA-lB| <= min(l1-l3, l2-l4)"};

int run_construct(const ConstructArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  json params{{"family", a.family}};
  StateFile sf{Ket::basis({2}, {0}), a.label};
  const std::string& f = a.family;
  if (f == "ghz") {
    sf.state = ghz(a.d, a.parties);
    params["d"] = a.d;
    params["parties"] = a.parties;
  } else if (f == "w") {
    sf.state = w_state();
  } else if (f == "gghz") {
    sf.state = generalized_ghz(parse_number_list(a.lams));
    params["lams"] = a.lams;
  } else if (f == "mems" || f == "mems-ext") {
    MemsSpec spec{a.m, a.r, a.probs.empty() ? std::vector<double>(a.r, 1.0 / a.r)
                                            : parse_number_list(a.probs),
                  std::nullopt};
    spec.validate();
    if (f == "mems") sf.state = mems(spec);
    else sf.state = mems_extension_pure(spec);
    params["m"] = a.m;
    params["r"] = a.r;
    params["probs"] = spec.probs;
  } else if (f == "double-mems") {
    sf.state = double_mems(a.m, a.r, a.l);
    params["m"] = a.m;
    params["r"] = a.r;
    params["l"] = a.l;
  } else if (f == "random") {
    const Dims dims = parse_dims(a.dims);
    if (a.rank <= 0) sf.state = random_pure(dims, a.seed);
    else sf.state = random_mixed(dims, a.rank, a.seed);
    params["dims"] = dims;
    params["rank"] = a.rank;
  } else if (f == "spectra-target") {
    if (a.joint.empty() || a.la.empty() || a.lb.empty())
      throw UsageError("spectra-target needs --joint, --la and --lb");
    const SpectrumTarget target{Spectrum{parse_number_list(a.joint)}, parse_number(a.la),
                                parse_number(a.lb)};
    const SpectraResult res = state_with_spectra(target, a.seed);
    params["joint"] = a.joint;
    params["la"] = a.la;
    params["lb"] = a.lb;
    if (res.status == SpectraStatus::Infeasible) {
      const int i = res.compatibility.first_failing();
      throw Infeasible("infeasible spectra target: inequality " + std::to_string(i + 1) + " (" +
                       kInequality[i] + ") fails with slack " +
                       std::to_string(res.compatibility.slacks[i]));
    }
    if (res.status == SpectraStatus::NotFound || !res.state) {
      std::cerr << "no state found (residual " << res.residual << ")\n";
      return kExitNotConverged;
    }
    sf.state = *res.state;
  } else {
    throw UsageError("unknown family '" + f + "'");
  }
  if (f == "random" || f == "spectra-target") params["seed"] = a.seed;
  // round trip through the parser validates the invariants
  const std::string text = format_state_file(sf);
  parse_state_file(text);
  if (a.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(a.out, std::ios::binary);
    if (!out) throw UsageError("cannot write " + a.out);
    out << text;
    json outputs{{"dim", total_dim(sf.dims())}, {"pure", sf.is_pure()}};
    print_record("construct", params, a.seed, outputs, start);
  }
  return 0;
}

// ---- verify ----------------------------------------------------------------

int run_verify(const std::string& suite, std::uint64_t seed, int threads, const std::string& csv) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::string> names;
  if (suite == "all") names = suite_names();
  else names.push_back(suite);
  bool all_ok = true;
  std::vector<CsvRow> rows;
  json outputs = json::object();
  for (const std::string& n : names) {
    const SuiteResult r = run_suite(n, seed, threads);
    std::cout << "suite " << n << "\n";
    for (const Check& c : r.checks) {
      std::printf("  %s  %-58s %.10g %s %.10g (tol %g)\n", c.pass ? "PASS" : "FAIL",
                  c.name.c_str(), c.measured, relation_symbol(c.relation), c.expected,
                  c.tolerance);
      CsvRow row;
      row.command = "verify";
      row.label = c.name;
      row.kind = relation_symbol(c.relation);
      row.scope = n;
      row.value = c.measured;
      row.expected = c.expected;
      row.tolerance = c.tolerance;
      row.seed = seed;
      row.converged = c.pass;
      rows.push_back(row);
    }
    const int failed = static_cast<int>(
        std::count_if(r.checks.begin(), r.checks.end(), [](const Check& c) { return !c.pass; }));
    std::printf("%s %s: %zu checks, %d failed\n", r.passed() ? "PASS" : "FAIL", n.c_str(),
                r.checks.size(), failed);
    outputs[n] = {{"checks", r.checks.size()}, {"failed", failed}};
    all_ok = all_ok && r.passed();
  }
  print_record("verify", {{"suite", suite}}, seed, outputs, start);
  if (!csv.empty()) append_csv(csv, rows);
  return all_ok ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mpent: unified multipartite entanglement measures and monogamy audits"};
  app.require_subcommand(1);

  MeasureArgs m;
  CLI::App* measure = app.add_subcommand("measure", "evaluate a measure on a state file");
  measure->add_option("file", m.file, "state file")->required();
  measure->add_option("--kind", m.kind, "measure name")->required();
  measure->add_option("--param", m.param, "q for tsallis, alpha for renyi");
  measure->add_option("--scope", m.scope, "bipartite or tripartite (default by party count)");
  measure->add_option("--cut", m.cut, "first side of a bipartite cut, e.g. A, AB or 0,2");
  measure->add_option("--form", m.form, "bipartite form: unified or standard");
  measure->add_option("--csv", m.csv, "append a CSV row");
  m.roof.attach(measure);

  AuditArgs au;
  CLI::App* aud = app.add_subcommand("audit", "complete and tight monogamy audit");
  aud->add_option("file", au.file, "state file");
  aud->add_option("--kind", au.kind, "measure name")->required();
  aud->add_option("--param", au.param, "q for tsallis, alpha for renyi");
  auto* alpha_opt = aud->add_option("--alpha", au.alpha, "monogamy exponent to test");
  aud->add_flag("--find-exponent", au.find_exponent, "bisect for the smallest valid alpha")
      ->excludes(alpha_opt);
  aud->add_option("--tol", au.tol, "bisection tolerance");
  aud->add_option("--samples", au.samples, "audit N random pure states");
  aud->add_option("--random", au.random_dims, "dims of the random samples (default 2,2,2)");
  aud->add_option("--svg", au.svg, "write the gap-vs-alpha curve");
  aud->add_option("--csv", au.csv, "append CSV rows");
  au.roof.attach(aud);

  ConstructArgs c;
  CLI::App* con = app.add_subcommand("construct", "build a state file");
  con->add_option("--family", c.family,
                  "ghz, w, gghz, mems, mems-ext, double-mems, random, spectra-target")
      ->required();
  con->add_option("--out", c.out, "output file (default stdout)");
  con->add_option("--label", c.label, "label stored in the file");
  con->add_option("--d", c.d, "local dimension (ghz)");
  con->add_option("--parties", c.parties, "party count (ghz)");
  con->add_option("--lams", c.lams, "coefficients (gghz)");
  con->add_option("--m", c.m, "dimension of A (mems)");
  con->add_option("--r", c.r, "branch count (mems)");
  con->add_option("--probs", c.probs, "branch probabilities (mems)");
  con->add_option("--l", c.l, "copies (double-mems)");
  con->add_option("--dims", c.dims, "party dims (random)");
  con->add_option("--rank", c.rank, "rank; 0 for a pure state (random)");
  con->add_option("--seed", c.seed, "seed (random, spectra-target)");
  con->add_option("--joint", c.joint, "joint spectrum, descending (spectra-target)");
  con->add_option("--la", c.la, "minimal eigenvalue of the first marginal");
  con->add_option("--lb", c.lb, "minimal eigenvalue of the second marginal");

  std::string suite = "all";
  std::uint64_t vseed = 0x5eedULL;
  int vthreads = 0;
  std::string vcsv;
  CLI::App* ver = app.add_subcommand("verify", "run a verification suite");
  ver->add_option("--suite", suite, "hierarchy, counterexample, additivity, purity-lemma, mems-story or all");
  ver->add_option("--seed", vseed, "master seed");
  ver->add_option("--threads", vthreads, "parallel width (default: MPENT_THREADS or 1)");
  ver->add_option("--csv", vcsv, "append CSV rows");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*measure) return run_measure(m);
    if (*aud) return run_audit(au);
    if (*con) return run_construct(c);
    if (*ver) return run_verify(suite, vseed, vthreads, vcsv);
  } catch (const Infeasible& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const StateFileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParameter;
  } catch (const KindError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParameter;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return 0;
}
