#include "mpent/convexroof.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mpent/kernels.hpp"
#include "mpent/parallel.hpp"
#include "mpent/pure_functional.hpp"
#include "mpent/qcore.hpp"
#include "mpent/random.hpp"

namespace mpent {

using RowMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

void RoofConfig::validate() const {
  if (ensemble_size < 0) throw UsageError("ensemble_size must be non-negative");
  if (restarts <= 0 || max_iters <= 0) throw UsageError("restarts and max_iters must be positive");
  if (!(rel_tol > 0.0)) throw UsageError("rel_tol must be positive");
}

DensityOperator Ensemble::mixture() const {
  if (states.empty()) throw UsageError("empty ensemble");
  const int d = states.front().dim();
  Matrix m = Matrix::Zero(d, d);
  for (std::size_t i = 0; i < states.size(); ++i)
    m += weights[i] * states[i].amplitudes() * states[i].amplitudes().adjoint();
  return DensityOperator::trusted(std::move(m), states.front().dims());
}

namespace {

struct EigenEnsemble {
  int rank;
  RowMatrix base;  // rank x D, row j = sqrt(lambda_j) e_j^T
};

EigenEnsemble eigen_ensemble(const DensityOperator& rho) {
  auto [vals, vecs] = hermitian_eigen(rho.matrix());
  int rank = 0;
  for (int i = 0; i < vals.size(); ++i) {
    if (vals(i) < -tol::kNegativeEigen) throw InvariantError("negative eigenvalue below -1e-9");
    if (vals(i) > tol::kRank) ++rank;
  }
  rank = std::max(rank, 1);
  RowMatrix base(rank, rho.dim());
  for (int j = 0; j < rank; ++j)
    base.row(j) = std::sqrt(std::max(vals(j), 0.0)) * vecs.col(j).transpose();
  return {rank, std::move(base)};
}

/// exp(t A) for anti-Hermitian A, from the eigen-decomposition of iA.
class AntiHermitianExp {
 public:
  explicit AntiHermitianExp(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(cplx(0.0, 1.0) * a);
    q_ = es.eigenvectors();
    d_ = es.eigenvalues();
  }
  Matrix operator()(double t) const {
    Vector ph(d_.size());
    for (int i = 0; i < d_.size(); ++i) ph(i) = std::polar(1.0, -t * d_(i));
    return q_ * ph.asDiagonal() * q_.adjoint();
  }
  double spectral_radius() const { return d_.cwiseAbs().maxCoeff(); }

 private:
  Matrix q_;
  RealVector d_;
};

Matrix generator_from_params(std::span<const double> params, int n) {
  if (static_cast<int>(params.size()) != n * n)
    throw UsageError("hjw_ensemble expects n^2 parameters");
  Matrix g = Matrix::Zero(n, n);
  std::size_t idx = 0;
  for (int k = 0; k < n; ++k) g(k, k) = cplx(0.0, params[idx++]);
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l) {
      const cplx v(params[idx], params[idx + 1]);
      idx += 2;
      g(k, l) = v;
      g(l, k) = -std::conj(v);
    }
  return g;
}

Ensemble ensemble_from_rows(const RowMatrix& w, const Dims& dims) {
  Ensemble e;
  for (int i = 0; i < w.rows(); ++i) {
    const double p = w.row(i).squaredNorm();
    if (p < 1e-12) continue;
    Vector v = w.row(i).transpose();
    e.weights.push_back(p);
    e.states.push_back(Ket::normalized(std::move(v), dims));
  }
  return e;
}

struct RestartOutcome {
  double value = 0.0;
  RowMatrix w;
  bool converged = false;
};

class RoofOptimizer {
 public:
  RoofOptimizer(const PureFunctional& f, const EigenEnsemble& eig, int n, Direction dir,
                const RoofConfig& cfg)
      : f_(f), eig_(eig), n_(n), sign_(dir == Direction::Min ? 1.0 : -1.0), cfg_(cfg) {}

  RestartOutcome run(Matrix u) const {
    RowMatrix w = members(u);
    RowMatrix grad(n_, w.cols());
    double fval = evaluate(w, &grad);
    Matrix s = descent(w, grad);
    Matrix dir = s;
    double step = 0.0;
    int quiet = 0;
    bool converged = false;
    for (int it = 0; it < cfg_.max_iters; ++it) {
      const double g2 = s.squaredNorm();
      if (g2 < 1e-26) {
        converged = true;
        break;
      }
      double slope = -inner(dir, s);
      if (!(slope < 0.0)) {
        dir = s;
        slope = -g2;
      }
      AntiHermitianExp expo(dir);
      const double radius = std::max(expo.spectral_radius(), 1e-300);
      if (step <= 0.0) step = 0.25 / radius;
      step = std::min(step, 1.0 / radius);
      double t = step;
      bool accepted = false;
      Matrix next_u;
      double next_f = 0.0;
      for (int bt = 0; bt < 50; ++bt) {
        next_u = expo(t) * u;
        next_f = evaluate(members(next_u), nullptr);
        if (next_f <= fval + 1e-4 * t * slope) {
          accepted = true;
          break;
        }
        t *= 0.5;
      }
      if (!accepted) {
        if (dir.isApprox(s)) {
          converged = true;  // no descent possible at working precision
          break;
        }
        dir = s;  // retry along steepest descent
        step = 0.0;
        continue;
      }
      u = std::move(next_u);
      if ((it + 1) % 64 == 0) reorthonormalize(u);
      w = members(u);
      const double prev = fval;
      fval = evaluate(w, &grad);
      const Matrix s_new = descent(w, grad);
      const double beta = std::max(0.0, inner(s_new, s_new - s) / g2);
      dir = s_new + beta * dir;
      s = s_new;
      step = 2.0 * t;
      if (std::abs(prev - fval) <= cfg_.rel_tol * (std::abs(fval) + 1e-8)) {
        if (++quiet >= 5) {
          converged = true;
          break;
        }
      } else {
        quiet = 0;
      }
    }
    reorthonormalize(u);
    RestartOutcome out;
    out.w = members(u);
    out.value = sign_ * evaluate(out.w, nullptr);
    out.converged = converged;
    return out;
  }

 private:
  RowMatrix members(const Matrix& u) const {
    return u.leftCols(eig_.rank) * eig_.base;
  }

  // Signed objective; fills the member gradients when requested.
  double evaluate(const RowMatrix& w, RowMatrix* grad) const {
    double total = 0.0;
    for (int i = 0; i < w.rows(); ++i) {
      if (grad) {
        total += f_.value_and_gradient(w.row(i).data(), grad->row(i).data());
      } else {
        total += f_.value(w.row(i).data());
      }
    }
    if (grad) *grad *= sign_;
    return sign_ * total;
  }

  // Descent direction in u(n): K - K^dagger with K = W Gamma^dagger.
  static Matrix descent(const RowMatrix& w, const RowMatrix& grad) {
    const Matrix k = w * grad.adjoint();
    return k - k.adjoint();
  }

  static double inner(const Matrix& a, const Matrix& b) {
    return (a.adjoint() * b).trace().real();
  }

  static void reorthonormalize(Matrix& u) {
    Eigen::JacobiSVD<Matrix> svd(u, Eigen::ComputeFullU | Eigen::ComputeFullV);
    u = svd.matrixU() * svd.matrixV().adjoint();
  }

  const PureFunctional& f_;
  const EigenEnsemble& eig_;
  int n_;
  double sign_;
  const RoofConfig& cfg_;
};

}  // namespace

Ensemble hjw_ensemble(const DensityOperator& rho, std::span<const double> params, int n) {
  const EigenEnsemble eig = eigen_ensemble(rho);
  if (n < eig.rank) throw UsageError("ensemble size below the rank of the state");
  const Matrix g = generator_from_params(params, n);
  const Matrix u = AntiHermitianExp(g)(1.0);
  const RowMatrix w = u.leftCols(eig.rank) * eig.base;
  return ensemble_from_rows(w, rho.dims());
}

double ensemble_average(const Ensemble& ensemble, const MeasureKind& kind, const Scope& scope,
                        BipartiteForm form) {
  if (ensemble.states.empty()) throw UsageError("empty ensemble");
  const PureFunctional f(kind, scope, ensemble.states.front().dims(), form);
  double total = 0.0;
  for (std::size_t i = 0; i < ensemble.size(); ++i)
    total += ensemble.weights[i] * f.value(ensemble.states[i].amplitudes().data());
  return total;
}

RoofResult convex_roof(const DensityOperator& rho, const MeasureKind& kind, const Scope& scope,
                       Direction direction, const RoofConfig& config, BipartiteForm form) {
  config.validate();
  const PureFunctional f(kind, scope, rho.dims(), form);
  const EigenEnsemble eig = eigen_ensemble(rho);
  int n = config.ensemble_size;
  if (n == 0) n = std::max(eig.rank, std::min(eig.rank * eig.rank, 16));
  if (n < eig.rank) throw UsageError("ensemble_size must be at least the rank of the state");

  const RoofOptimizer opt(f, eig, n, direction, config);
  const int restarts = eig.rank == 1 ? 1 : config.restarts;
  std::vector<RestartOutcome> outcomes(restarts);
  parallel_for(restarts, resolve_width(config.threads), [&](int i) {
    Matrix u0;
    if (i == 0) {
      u0 = Matrix::Identity(n, n);
    } else {
      Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(i)));
      u0 = haar_unitary(n, rng);
    }
    outcomes[i] = opt.run(std::move(u0));
  });

  int best = 0;
  double lo = outcomes[0].value, hi = outcomes[0].value;
  for (int i = 1; i < restarts; ++i) {
    const double v = outcomes[i].value;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    const bool better = direction == Direction::Min ? v < outcomes[best].value
                                                    : v > outcomes[best].value;
    if (better) best = i;
  }

  RoofResult result;
  result.ensemble = ensemble_from_rows(outcomes[best].w, rho.dims());
  result.value = ensemble_average(result.ensemble, kind, scope, form);
  result.direction = direction;
  result.converged = outcomes[best].converged;
  result.restart_spread = hi - lo;
  return result;
}

}  // namespace mpent
