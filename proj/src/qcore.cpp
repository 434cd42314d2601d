#include "mpent/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "mpent/kernels.hpp"

namespace mpent {

// ---------------------------------------------------------------------------
// types

int total_dim(const Dims& dims) {
  long long d = 1;
  for (int x : dims) d *= x;
  return static_cast<int>(d);
}

void check_dims(const Dims& dims) {
  if (dims.empty()) throw UsageError("dims must be nonempty");
  for (int d : dims)
    if (d <= 0) throw UsageError("subsystem dimensions must be positive");
}

Ket::Ket(Vector amplitudes, Dims dims) : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)) {
  check_dims(dims_);
  if (total_dim(dims_) != amplitudes_.size())
    throw UsageError("product of dims does not match amplitude count");
  if (std::abs(amplitudes_.norm() - 1.0) > tol::kNorm)
    throw InvariantError("ket is not normalized");
}

Ket Ket::normalized(Vector amplitudes, Dims dims) {
  const double n = amplitudes.norm();
  if (n == 0.0) throw InvariantError("cannot normalize the zero vector");
  amplitudes /= n;
  return Ket(std::move(amplitudes), std::move(dims));
}

Ket Ket::basis(const Dims& dims, const std::vector<int>& digits) {
  check_dims(dims);
  if (digits.size() != dims.size()) throw UsageError("digit count must match party count");
  int index = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (digits[i] < 0 || digits[i] >= dims[i]) throw UsageError("basis digit out of range");
    index = index * dims[i] + digits[i];
  }
  Vector v = Vector::Zero(total_dim(dims));
  v(index) = 1.0;
  return Ket(std::move(v), dims);
}

HermitianMatrix::HermitianMatrix(Matrix matrix, Dims dims)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {
  check_dims(dims_);
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() != total_dim(dims_))
    throw UsageError("matrix shape does not match dims");
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > tol::kHermitian)
    throw InvariantError("matrix is not Hermitian");
}

DensityOperator::DensityOperator(Matrix matrix, Dims dims)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {
  check_dims(dims_);
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() != total_dim(dims_))
    throw UsageError("matrix shape does not match dims");
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > tol::kHermitian)
    throw InvariantError("density operator is not Hermitian");
  if (std::abs(matrix_.trace().real() - 1.0) > tol::kTrace)
    throw InvariantError("density operator does not have unit trace");
  const Matrix sym = 0.5 * (matrix_ + matrix_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol::kNegativeEigen)
    throw InvariantError("density operator has a negative eigenvalue");
  matrix_ = sym;
}

DensityOperator::DensityOperator(TrustedTag, Matrix matrix, Dims dims)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {}

DensityOperator DensityOperator::trusted(Matrix matrix, Dims dims) {
  Matrix sym = 0.5 * (matrix + matrix.adjoint());
  return DensityOperator(TrustedTag{}, std::move(sym), std::move(dims));
}

DensityOperator DensityOperator::from_ket(const Ket& psi) {
  return trusted(psi.amplitudes() * psi.amplitudes().adjoint(), psi.dims());
}

DensityOperator DensityOperator::maximally_mixed(const Dims& dims) {
  check_dims(dims);
  const int d = total_dim(dims);
  return trusted(Matrix::Identity(d, d) / static_cast<double>(d), dims);
}

SubsystemSet::SubsystemSet(std::initializer_list<int> indices)
    : SubsystemSet(std::vector<int>(indices)) {}

SubsystemSet::SubsystemSet(std::vector<int> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
    throw UsageError("subsystem indices must be distinct");
  if (!indices_.empty() && indices_.front() < 0)
    throw UsageError("subsystem index out of range");
}

bool SubsystemSet::contains(int party) const {
  return std::binary_search(indices_.begin(), indices_.end(), party);
}

void SubsystemSet::check_range(int parties) const {
  for (int i : indices_)
    if (i < 0 || i >= parties) throw UsageError("subsystem index out of range");
}

SubsystemSet SubsystemSet::complement(int parties) const {
  std::vector<int> rest;
  for (int i = 0; i < parties; ++i)
    if (!contains(i)) rest.push_back(i);
  return SubsystemSet(std::move(rest));
}

std::string SubsystemSet::label() const {
  std::string s;
  for (int i : indices_) s += static_cast<char>('A' + i);
  return s;
}

double Spectrum::sum() const {
  return std::accumulate(eigenvalues.begin(), eigenvalues.end(), 0.0);
}

void Spectrum::validate_density() const {
  if (eigenvalues.empty()) throw UsageError("empty spectrum");
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    const double v = eigenvalues[i];
    if (!std::isfinite(v) || v < -1e-9 || v > 1.0 + 1e-9)
      throw UsageError("spectrum entry outside [0, 1]");
    if (i > 0 && v > eigenvalues[i - 1] + 1e-15)
      throw UsageError("spectrum must be sorted in descending order");
  }
  if (std::abs(sum() - 1.0) > 1e-9) throw UsageError("spectrum does not sum to one");
}

// ---------------------------------------------------------------------------
// index machinery

namespace detail {

std::vector<int> digits_of(int index, const Dims& dims) {
  std::vector<int> digits(dims.size());
  for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
    digits[i] = index % dims[i];
    index /= dims[i];
  }
  return digits;
}

std::vector<int> permutation_map(const Dims& dims, const std::vector<int>& order) {
  const int n = static_cast<int>(dims.size());
  if (static_cast<int>(order.size()) != n) throw UsageError("permutation size mismatch");
  std::vector<int> seen(n, 0);
  for (int p : order) {
    if (p < 0 || p >= n || seen[p]++) throw UsageError("invalid party permutation");
  }
  // stride of each old party in the old linear index
  std::vector<int> old_stride(n);
  int s = 1;
  for (int i = n - 1; i >= 0; --i) {
    old_stride[i] = s;
    s *= dims[i];
  }
  Dims new_dims(n);
  for (int i = 0; i < n; ++i) new_dims[i] = dims[order[i]];
  const int total = s;
  std::vector<int> map(total);
  std::vector<int> digit(n, 0);
  for (int idx = 0; idx < total; ++idx) {
    int old = 0;
    for (int i = 0; i < n; ++i) old += digit[i] * old_stride[order[i]];
    map[idx] = old;
    for (int i = n - 1; i >= 0; --i) {
      if (++digit[i] < new_dims[i]) break;
      digit[i] = 0;
    }
  }
  return map;
}

}  // namespace detail

namespace {

Dims permuted_dims(const Dims& dims, const std::vector<int>& order) {
  Dims out(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) out[i] = dims[order[i]];
  return out;
}

std::vector<int> group_order(int parties, const std::vector<std::vector<int>>& groups,
                             Dims* merged, const Dims& dims) {
  std::vector<int> order;
  merged->clear();
  for (const auto& g : groups) {
    if (g.empty()) throw UsageError("empty party group");
    int d = 1;
    for (int p : g) {
      order.push_back(p);
      if (p < 0 || p >= parties) throw UsageError("party index out of range");
      d *= dims[p];
    }
    merged->push_back(d);
  }
  if (static_cast<int>(order.size()) != parties)
    throw UsageError("groups must partition the parties");
  return order;
}

std::vector<int> keep_first_order(const SubsystemSet& keep, int parties) {
  std::vector<int> order = keep.indices();
  const SubsystemSet rest = keep.complement(parties);
  for (int i : rest.indices()) order.push_back(i);
  return order;
}

}  // namespace

// ---------------------------------------------------------------------------
// tensor structure

Ket tensor(const Ket& a, const Ket& b) {
  Vector v(a.dim() * b.dim());
  for (int i = 0; i < a.dim(); ++i) v.segment(i * b.dim(), b.dim()) = a.amplitudes()(i) * b.amplitudes();
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return Ket::normalized(std::move(v), std::move(dims));
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  const int da = a.dim(), db = b.dim();
  Matrix m(da * db, da * db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j) m.block(i * db, j * db, db, db) = a.matrix()(i, j) * b.matrix();
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  return DensityOperator::trusted(std::move(m), std::move(dims));
}

Ket permute(const Ket& psi, const std::vector<int>& order) {
  const auto map = detail::permutation_map(psi.dims(), order);
  Vector v(psi.dim());
  for (int i = 0; i < psi.dim(); ++i) v(i) = psi.amplitudes()(map[i]);
  return Ket::normalized(std::move(v), permuted_dims(psi.dims(), order));
}

DensityOperator permute(const DensityOperator& rho, const std::vector<int>& order) {
  const auto map = detail::permutation_map(rho.dims(), order);
  const int d = rho.dim();
  Matrix m(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) m(i, j) = rho.matrix()(map[i], map[j]);
  return DensityOperator::trusted(std::move(m), permuted_dims(rho.dims(), order));
}

Ket regroup(const Ket& psi, const std::vector<std::vector<int>>& groups) {
  Dims merged;
  const auto order = group_order(psi.parties(), groups, &merged, psi.dims());
  Ket p = permute(psi, order);
  return Ket(p.amplitudes(), merged);
}

DensityOperator regroup(const DensityOperator& rho, const std::vector<std::vector<int>>& groups) {
  Dims merged;
  const auto order = group_order(rho.parties(), groups, &merged, rho.dims());
  DensityOperator p = permute(rho, order);
  return DensityOperator::trusted(p.matrix(), merged);
}

Ket bipartition(const Ket& psi, const SubsystemSet& first) {
  first.check_range(psi.parties());
  const SubsystemSet rest = first.complement(psi.parties());
  if (first.empty() || rest.empty()) throw UsageError("bipartition needs two nonempty groups");
  return regroup(psi, {first.indices(), rest.indices()});
}

DensityOperator bipartition(const DensityOperator& rho, const SubsystemSet& first) {
  first.check_range(rho.parties());
  const SubsystemSet rest = first.complement(rho.parties());
  if (first.empty() || rest.empty()) throw UsageError("bipartition needs two nonempty groups");
  return regroup(rho, {first.indices(), rest.indices()});
}

DensityOperator partial_trace(const DensityOperator& rho, const SubsystemSet& keep) {
  if (keep.empty()) throw UsageError("partial_trace: keep set is empty");
  keep.check_range(rho.parties());
  const auto order = keep_first_order(keep, rho.parties());
  const auto map = detail::permutation_map(rho.dims(), order);
  Dims kept_dims;
  for (int i : keep.indices()) kept_dims.push_back(rho.dims()[i]);
  const int dk = total_dim(kept_dims);
  const int dt = rho.dim() / dk;
  Matrix out = Matrix::Zero(dk, dk);
  for (int j = 0; j < dk; ++j)
    for (int i = 0; i < dk; ++i) {
      cplx s = 0.0;
      for (int t = 0; t < dt; ++t) s += rho.matrix()(map[i * dt + t], map[j * dt + t]);
      out(i, j) = s;
    }
  return DensityOperator::trusted(std::move(out), std::move(kept_dims));
}

DensityOperator reduced(const Ket& psi, const SubsystemSet& keep) {
  if (keep.empty()) throw UsageError("reduced: keep set is empty");
  keep.check_range(psi.parties());
  const auto order = keep_first_order(keep, psi.parties());
  const auto map = detail::permutation_map(psi.dims(), order);
  Dims kept_dims;
  for (int i : keep.indices()) kept_dims.push_back(psi.dims()[i]);
  const int dk = total_dim(kept_dims);
  const int dt = psi.dim() / dk;
  std::vector<cplx> buf(psi.dim());
  for (int i = 0; i < psi.dim(); ++i) buf[i] = psi.amplitudes()(map[i]);
  std::vector<cplx> g(dk * dk);
  kernels::active().gram(buf.data(), dk, dt, g.data());
  Matrix out(dk, dk);
  for (int i = 0; i < dk; ++i)
    for (int j = 0; j < dk; ++j) out(i, j) = g[i * dk + j];
  return DensityOperator::trusted(std::move(out), std::move(kept_dims));
}

namespace {

Matrix partial_transpose_matrix(const Matrix& m, const Dims& dims, const SubsystemSet& subsystem) {
  subsystem.check_range(static_cast<int>(dims.size()));
  const int d = static_cast<int>(m.rows());
  const int n = static_cast<int>(dims.size());
  std::vector<int> stride(n);
  int s = 1;
  for (int i = n - 1; i >= 0; --i) {
    stride[i] = s;
    s *= dims[i];
  }
  Matrix out(d, d);
  for (int r = 0; r < d; ++r) {
    const auto rd = detail::digits_of(r, dims);
    for (int c = 0; c < d; ++c) {
      const auto cd = detail::digits_of(c, dims);
      int r2 = r, c2 = c;
      for (int p : subsystem.indices()) {
        r2 += (cd[p] - rd[p]) * stride[p];
        c2 += (rd[p] - cd[p]) * stride[p];
      }
      out(r2, c2) = m(r, c);
    }
  }
  return out;
}

}  // namespace

HermitianMatrix partial_transpose(const DensityOperator& rho, const SubsystemSet& subsystem) {
  return HermitianMatrix(partial_transpose_matrix(rho.matrix(), rho.dims(), subsystem), rho.dims());
}

HermitianMatrix partial_transpose(const HermitianMatrix& h, const SubsystemSet& subsystem) {
  return HermitianMatrix(partial_transpose_matrix(h.matrix(), h.dims(), subsystem), h.dims());
}

double trace_norm(const Matrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double trace_norm(const HermitianMatrix& h) { return trace_norm(h.matrix()); }

// ---------------------------------------------------------------------------
// spectra and entropies

std::pair<RealVector, Matrix> hermitian_eigen(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const int n = static_cast<int>(h.rows());
  RealVector vals(n);
  Matrix vecs(n, n);
  // Eigen returns ascending order
  for (int i = 0; i < n; ++i) {
    vals(i) = es.eigenvalues()(n - 1 - i);
    vecs.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  return {vals, vecs};
}

Spectrum spectrum(const DensityOperator& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  Spectrum s;
  s.eigenvalues.reserve(ev.size());
  for (int i = static_cast<int>(ev.size()) - 1; i >= 0; --i) {
    double v = ev(i);
    if (v < -tol::kNegativeEigen) throw InvariantError("negative eigenvalue below -1e-9");
    s.eigenvalues.push_back(v < 0.0 ? 0.0 : v);
  }
  return s;
}

double purity(const DensityOperator& rho) {
  return (rho.matrix() * rho.matrix()).trace().real();
}

namespace spectral {

double entropy(std::span<const double> p) {
  double s = 0.0;
  for (double x : p)
    if (x > 0.0) s -= x * std::log(x);
  return s;
}

double power_sum(std::span<const double> p, double exponent) {
  double s = 0.0;
  for (double x : p)
    if (x > 0.0) s += std::pow(x, exponent);
  return s;
}

double sqrt_sum(std::span<const double> p) {
  double s = 0.0;
  for (double x : p)
    if (x > 0.0) s += std::sqrt(x);
  return s;
}

double tsallis(std::span<const double> p, double q) {
  return (power_sum(p, q) - 1.0) / (1.0 - q);
}

double renyi(std::span<const double> p, double alpha) {
  return std::log(power_sum(p, alpha)) / (1.0 - alpha);
}

double binary_entropy(double x) {
  double h = 0.0;
  if (x > 0.0) h -= x * std::log(x);
  if (x < 1.0) h -= (1.0 - x) * std::log(1.0 - x);
  return h;
}

}  // namespace spectral

double von_neumann_entropy(const DensityOperator& rho) {
  return spectral::entropy(spectrum(rho).eigenvalues);
}

double tsallis_entropy(const DensityOperator& rho, double q) {
  if (!(q > 0.0) || q == 1.0) throw ParameterError("Tsallis entropy needs q > 0, q != 1");
  return spectral::tsallis(spectrum(rho).eigenvalues, q);
}

double renyi_entropy(const DensityOperator& rho, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ParameterError("Renyi entropy needs 0 < alpha < 1");
  return spectral::renyi(spectrum(rho).eigenvalues, alpha);
}

double sqrt_trace(const DensityOperator& rho) {
  return spectral::sqrt_sum(spectrum(rho).eigenvalues);
}

int numerical_rank(const DensityOperator& rho, double threshold) {
  const auto s = spectrum(rho);
  return static_cast<int>(std::count_if(s.eigenvalues.begin(), s.eigenvalues.end(),
                                        [&](double v) { return v > threshold; }));
}

Ket purify(const DensityOperator& rho) {
  auto [vals, vecs] = hermitian_eigen(rho.matrix());
  int rank = 0;
  for (int i = 0; i < vals.size(); ++i) {
    if (vals(i) < -tol::kNegativeEigen) throw InvariantError("negative eigenvalue below -1e-9");
    if (vals(i) > tol::kRank) ++rank;
  }
  rank = std::max(rank, 1);
  const int d = rho.dim();
  Vector v = Vector::Zero(d * rank);
  for (int k = 0; k < rank; ++k) {
    const double w = std::sqrt(std::max(vals(k), 0.0));
    for (int i = 0; i < d; ++i) v(i * rank + k) = w * vecs(i, k);
  }
  Dims dims = rho.dims();
  dims.push_back(rank);
  return Ket::normalized(std::move(v), std::move(dims));
}

double frobenius_distance(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

}  // namespace mpent
