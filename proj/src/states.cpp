#include "mpent/states.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "mpent/parallel.hpp"
#include "mpent/qcore.hpp"
#include "mpent/random.hpp"

namespace mpent {

Ket ghz(int d, int parties) {
  if (d < 2 || parties < 2) throw UsageError("ghz needs d >= 2 and at least two parties");
  const Dims dims(parties, d);
  Vector v = Vector::Zero(total_dim(dims));
  for (int k = 0; k < d; ++k) {
    int idx = 0;
    for (int p = 0; p < parties; ++p) idx = idx * d + k;
    v(idx) = 1.0;
  }
  return Ket::normalized(std::move(v), dims);
}

Ket w_state() {
  Vector v = Vector::Zero(8);
  v(1) = v(2) = v(4) = 1.0;
  return Ket::normalized(std::move(v), {2, 2, 2});
}

Ket generalized_ghz(const std::vector<double>& lams) {
  const int n = static_cast<int>(lams.size());
  if (n < 2) throw UsageError("generalized_ghz needs at least two coefficients");
  double s = 0.0;
  for (double l : lams) s += l * l;
  if (std::abs(s - 1.0) > 1e-4) throw UsageError("generalized_ghz coefficients must be normalized in squares");
  Vector v = Vector::Zero(n * n * n);
  for (int k = 0; k < n; ++k) v((k * n + k) * n + k) = lams[k];
  return Ket::normalized(std::move(v), {n, n, n});
}

// ---- MEMS ------------------------------------------------------------------

void MemsSpec::validate() const {
  if (m < 2) throw UsageError("MEMS needs m >= 2");
  if (r < 1) throw UsageError("MEMS needs r >= 1");
  if (static_cast<int>(probs.size()) != r) throw UsageError("MEMS needs r probabilities");
  double s = 0.0;
  for (double p : probs) {
    if (p < 0.0) throw UsageError("MEMS probabilities must be non-negative");
    s += p;
  }
  if (std::abs(s - 1.0) > 1e-12) throw UsageError("MEMS probabilities must sum to 1");
  if (l && *l < 1) throw UsageError("MEMS copy count l must be positive");
}

std::vector<double> MemsSpec::pruned() const {
  validate();
  std::vector<double> out;
  for (double p : probs)
    if (p > 0.0) out.push_back(p);
  return out;
}

DensityOperator mems(const MemsSpec& spec) {
  const std::vector<double> p = spec.pruned();
  const int m = spec.m, r = static_cast<int>(p.size());
  const int db = m * r;
  Matrix rho = Matrix::Zero(m * db, m * db);
  for (int k = 0; k < r; ++k) {
    Vector v = Vector::Zero(m * db);
    for (int i = 0; i < m; ++i) v(i * db + k * m + i) = 1.0 / std::sqrt(double(m));
    rho += p[k] * v * v.adjoint();
  }
  return DensityOperator::trusted(std::move(rho), {m, db});
}

Ket mems_extension_pure(const MemsSpec& spec) {
  const std::vector<double> p = spec.pruned();
  const int m = spec.m, r = static_cast<int>(p.size());
  const int db = m * r;
  Vector v = Vector::Zero(m * db * r);
  for (int k = 0; k < r; ++k)
    for (int i = 0; i < m; ++i) v((i * db + k * m + i) * r + k) = std::sqrt(p[k] / m);
  return Ket::normalized(std::move(v), {m, db, r});
}

DensityOperator double_mems(int m, int r, int l) {
  if (m < 2 || r < 1 || l < 1) throw UsageError("double_mems needs m >= 2, r >= 1, l >= 1");
  const Dims dims{m * r, m, r * l};
  const int d = total_dim(dims);
  if (d > 64) throw UsageError("double_mems is limited to total dimension 64");
  Matrix rho = Matrix::Zero(d, d);
  const double amp = 1.0 / std::sqrt(double(m * r));
  for (int s = 0; s < l; ++s) {
    Vector v = Vector::Zero(d);
    for (int k = 0; k < r; ++k)
      for (int i = 0; i < m; ++i) v(((k * m + i) * m + i) * (r * l) + k * l + s) = amp;
    rho += v * v.adjoint() / double(l);
  }
  return DensityOperator::trusted(std::move(rho), dims);
}

std::string to_string(MemsClass c) {
  switch (c) {
    case MemsClass::PureMES: return "PureMES";
    case MemsClass::MemsUpToA: return "MemsUpToA";
    case MemsClass::MemsUpToB: return "MemsUpToB";
    case MemsClass::NotMems: return "NotMems";
  }
  return "?";
}

MemsVerdict classify_mems(const DensityOperator& rho, const SubsystemSet& first) {
  DensityOperator view = bipartition(rho, first);
  MemsVerdict out{MemsClass::NotMems, false, ""};
  if (view.dims()[0] > view.dims()[1]) {
    view = permute(view, {1, 0});
    out.swapped = true;
    out.evidence = "parties swapped so that dim A <= dim B; ";
  }
  const int m = view.dims()[0];
  const DensityOperator ra = partial_trace(view, SubsystemSet{0});
  const double dev = frobenius_distance(ra.matrix(), Matrix::Identity(m, m) / double(m));
  if (dev > 1e-8) {
    out.evidence += "rho^A differs from I/m by " + std::to_string(dev);
    return out;
  }
  if (numerical_rank(view) == 1) {
    out.verdict = MemsClass::PureMES;
    out.evidence += "pure with maximally mixed marginal";
    return out;
  }
  const Ket psi = purify(view);
  const auto fac = factorize_pure(psi, 1);
  if (const auto* np = std::get_if<NotProduct>(&fac)) {
    out.evidence += "purification has correlated rho^{AC}, deviation " + std::to_string(np->deviation);
    return out;
  }
  const auto& f = std::get<Factorization>(fac);
  if (f.residual > 1e-8) {
    out.evidence += "factorization residual " + std::to_string(f.residual);
    return out;
  }
  const Spectrum sc = spectrum(reduced(psi, SubsystemSet{2}));
  double lo = 1.0, hi = 0.0;
  for (double v : sc.eigenvalues)
    if (v > tol::kRank) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  out.evidence += "maximally mixed A, product purification with B split (" +
                  std::to_string(f.split_dims.first) + ", " + std::to_string(f.split_dims.second) +
                  "); genuine MES only for pure inputs";
  out.verdict = hi - lo <= 1e-8 ? MemsClass::MemsUpToB : MemsClass::MemsUpToA;
  return out;
}

// ---- random states ---------------------------------------------------------

Ket random_pure(const Dims& dims, std::uint64_t seed) {
  check_dims(dims);
  Rng rng(seed);
  return Ket::normalized(ginibre(total_dim(dims), 1, rng).col(0), dims);
}

DensityOperator random_mixed(const Dims& dims, int rank, std::uint64_t seed) {
  check_dims(dims);
  const int d = total_dim(dims);
  if (rank < 1 || rank > d) throw UsageError("rank must lie in [1, dim]");
  Rng rng(seed);
  const Matrix g = ginibre(d, rank, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityOperator::trusted(std::move(rho), dims);
}

// ---- spectrum-targeted two-qubit states ------------------------------------

namespace {

double min_eig2(const Matrix& s) {
  const double a = s(0, 0).real(), d = s(1, 1).real();
  return 0.5 * (a + d) - std::sqrt(0.25 * (a - d) * (a - d) + std::norm(s(0, 1)));
}

std::array<double, 2> marginal_residual(const Matrix& u, const RealVector& joint,
                                        const SpectrumTarget& t) {
  const Matrix rho = u * joint.cast<cplx>().asDiagonal() * u.adjoint();
  Matrix a = Matrix::Zero(2, 2), b = Matrix::Zero(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        a(i, j) += rho(i * 2 + k, j * 2 + k);
        b(i, j) += rho(k * 2 + i, k * 2 + j);
      }
  return {min_eig2(a) - t.marginal_a_min, min_eig2(b) - t.marginal_b_min};
}

Matrix generator(int k) {
  Matrix g = Matrix::Zero(4, 4);
  if (k < 4) {
    g(k, k) = 1.0;
    return g;
  }
  int idx = k - 4;
  const bool imag = idx >= 6;
  idx %= 6;
  int p = 0, q = 1;
  for (int c = 0; c < idx; ++c) {
    if (++q == 4) {
      ++p;
      q = p + 1;
    }
  }
  if (imag) {
    g(p, q) = cplx(0.0, -1.0);
    g(q, p) = cplx(0.0, 1.0);
  } else {
    g(p, q) = g(q, p) = 1.0;
  }
  return g;
}

Matrix exp_i(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Vector ph(h.rows());
  for (int i = 0; i < h.rows(); ++i) ph(i) = std::polar(1.0, es.eigenvalues()(i));
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

struct SearchOutcome {
  Matrix u;
  double residual;
};

SearchOutcome levenberg_marquardt(Matrix u, const RealVector& joint, const SpectrumTarget& t,
                                  int max_iters) {
  std::array<Matrix, 16> gens;
  for (int k = 0; k < 16; ++k) gens[k] = generator(k);
  auto norm2 = [](const std::array<double, 2>& r) { return r[0] * r[0] + r[1] * r[1]; };
  std::array<double, 2> r = marginal_residual(u, joint, t);
  double mu = 1e-3;
  for (int it = 0; it < max_iters && norm2(r) > 1e-26; ++it) {
    Eigen::Matrix<double, 2, 16> jac;
    const double h = 1e-7;
    for (int k = 0; k < 16; ++k) {
      const auto rk = marginal_residual(exp_i(h * gens[k]) * u, joint, t);
      jac(0, k) = (rk[0] - r[0]) / h;
      jac(1, k) = (rk[1] - r[1]) / h;
    }
    const Eigen::Vector2d rv(r[0], r[1]);
    bool improved = false;
    for (int tries = 0; tries < 20; ++tries) {
      const Eigen::Matrix2d jjt = jac * jac.transpose() + mu * Eigen::Matrix2d::Identity();
      const Eigen::Matrix<double, 16, 1> step = -jac.transpose() * jjt.ldlt().solve(rv);
      Matrix hsum = Matrix::Zero(4, 4);
      for (int k = 0; k < 16; ++k) hsum += step(k) * gens[k];
      const Matrix cand = exp_i(hsum) * u;
      const auto rc = marginal_residual(cand, joint, t);
      if (norm2(rc) < norm2(r)) {
        u = cand;
        r = rc;
        mu = std::max(mu / 3.0, 1e-12);
        improved = true;
        break;
      }
      mu *= 4.0;
    }
    if (!improved) break;
  }
  return {u, std::sqrt(std::max(r[0] * r[0], r[1] * r[1]))};
}

}  // namespace

SpectraResult state_with_spectra(const SpectrumTarget& target, std::uint64_t seed, int max_iters) {
  if (max_iters <= 0) throw UsageError("max_iters must be positive");
  SpectraResult out{SpectraStatus::Infeasible, std::nullopt, 0.0,
                    marginal_compatibility(target.joint, target.marginal_a_min,
                                           target.marginal_b_min)};
  if (!out.compatibility.compatible) return out;

  RealVector joint(4);
  for (int i = 0; i < 4; ++i) joint(i) = target.joint.eigenvalues[i];
  constexpr int kRestarts = 8;
  constexpr double kAccept = 1e-9;
  std::vector<SearchOutcome> runs(kRestarts);
  parallel_for(kRestarts, default_width(), [&](int i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    runs[i] = levenberg_marquardt(haar_unitary(4, rng), joint, target, max_iters);
  });
  int best = 0;
  for (int i = 0; i < kRestarts; ++i) {
    if (runs[i].residual <= kAccept) {
      best = i;
      break;
    }
    if (runs[i].residual < runs[best].residual) best = i;
  }
  out.residual = runs[best].residual;
  if (out.residual > kAccept) {
    out.status = SpectraStatus::NotFound;
    return out;
  }
  const Matrix& u = runs[best].u;
  out.state = DensityOperator::trusted(u * joint.cast<cplx>().asDiagonal() * u.adjoint(), {2, 2});
  out.status = SpectraStatus::Found;
  return out;
}

}  // namespace mpent
