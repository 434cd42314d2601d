#include "mpent/pure_functional.hpp"

#include <cmath>
#include <numeric>

#include "mpent/kernels.hpp"
#include "mpent/qcore.hpp"

namespace mpent {

namespace {

constexpr double kEigenFloor = 1e-300;
constexpr double kSqrtFloor = 1e-24;

// Eigen-decomposition of a small Hermitian matrix given row-major; values
// ascending. The 2x2 case is closed form.
void small_eigen(const std::vector<cplx>& a, int n, std::vector<double>* vals,
                 std::vector<cplx>* vecs /* column-major n x n */) {
  vals->resize(n);
  vecs->assign(static_cast<std::size_t>(n) * n, cplx(0.0, 0.0));
  if (n == 1) {
    (*vals)[0] = a[0].real();
    (*vecs)[0] = 1.0;
    return;
  }
  if (n == 2) {
    const double p = a[0].real(), q = a[3].real();
    const cplx b = a[1];
    const double mean = 0.5 * (p + q);
    const double half = 0.5 * (p - q);
    const double r = std::sqrt(half * half + std::norm(b));
    (*vals)[0] = mean - r;
    (*vals)[1] = mean + r;
    if (std::abs(b) < 1e-300) {
      // already diagonal
      if (p <= q) {
        (*vecs)[0] = 1.0;
        (*vecs)[3] = 1.0;
      } else {
        (*vecs)[1] = 1.0;
        (*vecs)[2] = 1.0;
      }
      return;
    }
    // eigenvector for lambda: (b, lambda - p) normalized
    for (int k = 0; k < 2; ++k) {
      const double lam = (*vals)[k];
      cplx x = b;
      cplx y = lam - p;
      // pick the better conditioned of the two row equations
      if (std::abs(lam - p) < std::abs(lam - q)) {
        x = lam - q;
        y = std::conj(b);
      }
      const double nrm = std::sqrt(std::norm(x) + std::norm(y));
      (*vecs)[k * 2 + 0] = x / nrm;
      (*vecs)[k * 2 + 1] = y / nrm;
    }
    return;
  }
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = a[i * n + j];
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  for (int k = 0; k < n; ++k) {
    (*vals)[k] = es.eigenvalues()(k);
    for (int i = 0; i < n; ++i) (*vecs)[k * n + i] = es.eigenvectors()(i, k);
  }
}

}  // namespace

PureFunctional::PureFunctional(const MeasureKind& kind, const Scope& scope, const Dims& dims,
                               BipartiteForm form)
    : kind_(kind), form_(form), tripartite_(scope.is_tripartite()), dim_(total_dim(dims)) {
  check_dims(dims);
  if (!kind.has_roof())
    throw KindError("measure kind " + kind.name() + " has no spectral pure-state formula");
  switch (kind.kind()) {
    case Kind::EoF:
      spectral_ = Spectral::Entropy;
      break;
    case Kind::Tangle:
    case Kind::Concurrence:
    case Kind::TauPrime:
      spectral_ = Spectral::Square;
      break;
    case Kind::Tsallis:
    case Kind::Renyi:
      spectral_ = Spectral::Power;
      exponent_ = kind.param();
      break;
    case Kind::Negativity:
    case Kind::NegativityRoof:
      spectral_ = Spectral::Sqrt;
      break;
    default:
      throw KindError("unsupported kind");
  }
  const int parties = static_cast<int>(dims.size());
  auto add_marginal = [&](const SubsystemSet& keep) {
    std::vector<int> order = keep.indices();
    const SubsystemSet rest = keep.complement(parties);
    for (int i : rest.indices()) order.push_back(i);
    Marginal m;
    m.map = detail::permutation_map(dims, order);
    m.rows = 1;
    for (int i : keep.indices()) m.rows *= dims[i];
    m.cols = dim_ / m.rows;
    marginals_.push_back(std::move(m));
  };
  if (tripartite_) {
    if (parties != 3) throw UsageError("tripartite scope needs exactly three parties");
    kind.require_tripartite();
    for (int x = 0; x < 3; ++x) add_marginal(SubsystemSet{x});
  } else {
    const SubsystemSet& first = scope.first();
    if (first.empty()) throw UsageError("bipartite scope needs a nonempty first group");
    first.check_range(parties);
    if (first.size() == parties) throw UsageError("bipartite scope needs a nonempty second group");
    add_marginal(first);
  }
}

double PureFunctional::spectral_f(double x) const {
  if (x <= 0.0) return 0.0;
  switch (spectral_) {
    case Spectral::Entropy:
      return -x * std::log(x);
    case Spectral::Square:
      return x * x;
    case Spectral::Power:
      return std::pow(x, exponent_);
    case Spectral::Sqrt:
      return std::sqrt(x);
  }
  return 0.0;
}

double PureFunctional::spectral_df(double x) const {
  const double xc = std::max(x, kEigenFloor);
  switch (spectral_) {
    case Spectral::Entropy:
      return -std::log(xc) - 1.0;
    case Spectral::Square:
      return 2.0 * x;
    case Spectral::Power:
      return exponent_ * std::pow(xc, exponent_ - 1.0);
    case Spectral::Sqrt:
      return 0.5 / std::sqrt(xc);
  }
  return 0.0;
}

double PureFunctional::combine(const std::vector<double>& t, std::vector<double>* dphi) const {
  const std::size_t k = t.size();
  dphi->assign(k, 0.0);
  const double sum = std::accumulate(t.begin(), t.end(), 0.0);
  switch (kind_.kind()) {
    case Kind::EoF:
      if (tripartite_) {
        dphi->assign(k, 0.5);
        return 0.5 * sum;
      }
      (*dphi)[0] = 1.0;
      return t[0];
    case Kind::Tangle:
      if (tripartite_) {
        dphi->assign(k, -1.0);
        return 3.0 - sum;
      }
      (*dphi)[0] = -2.0;
      return 2.0 * (1.0 - t[0]);
    case Kind::Concurrence: {
      const double s = tripartite_ ? 3.0 - sum : 2.0 * (1.0 - t[0]);
      const double root = std::sqrt(std::max(s, kSqrtFloor));
      if (tripartite_) {
        dphi->assign(k, -0.5 / root);
      } else {
        (*dphi)[0] = -1.0 / root;
      }
      return std::sqrt(std::max(s, 0.0));
    }
    case Kind::Tsallis: {
      const double q = kind_.param();
      if (tripartite_) {
        dphi->assign(k, 0.5 / (1.0 - q));
        return 0.5 * (sum - 3.0) / (1.0 - q);
      }
      (*dphi)[0] = 1.0 / (1.0 - q);
      return (t[0] - 1.0) / (1.0 - q);
    }
    case Kind::Renyi: {
      const double a = kind_.param();
      const double scale = tripartite_ ? 0.5 : 1.0;
      double v = 0.0;
      for (std::size_t x = 0; x < k; ++x) {
        const double tx = std::max(t[x], kEigenFloor);
        v += std::log(tx) / (1.0 - a);
        (*dphi)[x] = scale / ((1.0 - a) * tx);
      }
      return scale * v;
    }
    case Kind::Negativity:
    case Kind::NegativityRoof:
      if (tripartite_) {
        double v = -3.0;
        for (std::size_t x = 0; x < k; ++x) {
          v += t[x] * t[x];
          (*dphi)[x] = 2.0 * t[x];
        }
        return v;
      }
      if (form_ == BipartiteForm::Unified) {
        (*dphi)[0] = 4.0 * t[0];
        return 2.0 * (t[0] * t[0] - 1.0);
      }
      (*dphi)[0] = t[0];
      return 0.5 * (t[0] * t[0] - 1.0);
    case Kind::TauPrime:
      if (tripartite_) {
        double prod = 1.0;
        for (double tx : t) prod *= std::sqrt(std::max(tx, 0.0));
        for (std::size_t x = 0; x < k; ++x) (*dphi)[x] = -prod / std::max(t[x], kEigenFloor);
        return 2.0 * (1.0 - prod);
      }
      (*dphi)[0] = -2.0;
      return 2.0 * (1.0 - t[0]);
    default:
      throw KindError("unsupported kind");
  }
}

double PureFunctional::value(const cplx* w) const {
  const auto& kt = kernels::active();
  const double p = kt.norm2(w, dim_);
  if (p < 1e-300) return 0.0;
  std::vector<double> t(marginals_.size());
  std::vector<cplx> buf(dim_), sigma;
  std::vector<double> vals;
  std::vector<cplx> vecs;
  for (std::size_t x = 0; x < marginals_.size(); ++x) {
    const Marginal& m = marginals_[x];
    for (int i = 0; i < dim_; ++i) buf[i] = w[m.map[i]];
    sigma.resize(static_cast<std::size_t>(m.rows) * m.rows);
    kt.gram(buf.data(), m.rows, m.cols, sigma.data());
    small_eigen(sigma, m.rows, &vals, &vecs);
    double tx = 0.0;
    for (double v : vals) tx += spectral_f(v / p);
    t[x] = tx;
  }
  std::vector<double> dphi;
  return p * combine(t, &dphi);
}

double PureFunctional::value_and_gradient(const cplx* w, cplx* gradient) const {
  const auto& kt = kernels::active();
  const double p = kt.norm2(w, dim_);
  for (int i = 0; i < dim_; ++i) gradient[i] = 0.0;
  if (p < 1e-300) return 0.0;

  const std::size_t nm = marginals_.size();
  std::vector<double> t(nm);
  std::vector<std::vector<cplx>> bufs(nm, std::vector<cplx>(dim_));
  std::vector<std::vector<double>> vals(nm);
  std::vector<std::vector<cplx>> vecs(nm);
  std::vector<cplx> sigma;
  for (std::size_t x = 0; x < nm; ++x) {
    const Marginal& m = marginals_[x];
    for (int i = 0; i < dim_; ++i) bufs[x][i] = w[m.map[i]];
    sigma.resize(static_cast<std::size_t>(m.rows) * m.rows);
    kt.gram(bufs[x].data(), m.rows, m.cols, sigma.data());
    small_eigen(sigma, m.rows, &vals[x], &vecs[x]);
    double tx = 0.0;
    for (double& v : vals[x]) {
      v = std::max(v / p, 0.0);
      tx += spectral_f(v);
    }
    t[x] = tx;
  }
  std::vector<double> dphi;
  const double phi = combine(t, &dphi);

  for (int i = 0; i < dim_; ++i) gradient[i] = phi * w[i];
  std::vector<cplx> f_mat, fm;
  for (std::size_t x = 0; x < nm; ++x) {
    if (dphi[x] == 0.0) continue;
    const Marginal& m = marginals_[x];
    const int r = m.rows;
    // F = U diag(f'(lambda)) U^dagger, row-major
    f_mat.assign(static_cast<std::size_t>(r) * r, cplx(0.0, 0.0));
    double c = 0.0;
    for (int k = 0; k < r; ++k) {
      const double lam = vals[x][k];
      if (lam <= 0.0) continue;  // M has no component along null directions
      const double df = spectral_df(lam);
      c += lam * df;
      const cplx* u = &vecs[x][static_cast<std::size_t>(k) * r];
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) f_mat[i * r + j] += df * u[i] * std::conj(u[j]);
    }
    fm.resize(dim_);
    kt.gemm(f_mat.data(), bufs[x].data(), r, r, m.cols, fm.data());
    for (int i = 0; i < dim_; ++i) gradient[m.map[i]] += dphi[x] * (fm[i] - c * bufs[x][i]);
  }
  return p * phi;
}

}  // namespace mpent
