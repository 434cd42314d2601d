#include <algorithm>
#include <cmath>

#include "mpent/measures.hpp"
#include "mpent/parallel.hpp"
#include "mpent/qcore.hpp"
#include "mpent/random.hpp"

namespace mpent {

namespace {

struct Sweep {
  double overlap;
  std::vector<Vector> factors;
};

// <prod_{j != k} a_j| psi>, a vector over party k.
Vector contract_except(const Ket& psi, const std::vector<Vector>& f, int k) {
  const Dims& dims = psi.dims();
  Vector out = Vector::Zero(dims[k]);
  const Vector& amp = psi.amplitudes();
  std::vector<int> digits(dims.size(), 0);
  for (int idx = 0; idx < psi.dim(); ++idx) {
    cplx w = amp(idx);
    for (std::size_t j = 0; j < dims.size(); ++j)
      if (static_cast<int>(j) != k) w *= std::conj(f[j](digits[j]));
    out(digits[k]) += w;
    for (int j = static_cast<int>(dims.size()) - 1; j >= 0; --j) {
      if (++digits[j] < dims[j]) break;
      digits[j] = 0;
    }
  }
  return out;
}

Sweep alternate(const Ket& psi, std::vector<Vector> f, const GeometricConfig& cfg) {
  double overlap = 0.0;
  for (int it = 0; it < cfg.max_iters; ++it) {
    double current = 0.0;
    for (int k = 0; k < psi.parties(); ++k) {
      Vector v = contract_except(psi, f, k);
      const double nrm = v.norm();
      current = nrm * nrm;
      if (nrm < 1e-300) {
        f[k] = Vector::Zero(v.size());
        f[k](it % v.size()) = 1.0;
        continue;
      }
      f[k] = v / nrm;
    }
    const bool done = std::abs(current - overlap) <= cfg.tol;
    overlap = current;
    if (done) break;
  }
  return {overlap, std::move(f)};
}

}  // namespace

GeometricResult geometric_measure_pure(const Ket& psi, const GeometricConfig& config) {
  if (config.restarts <= 0 || config.max_iters <= 0)
    throw UsageError("geometric measure needs positive restarts and max_iters");
  const int parties = psi.parties();
  std::vector<Sweep> sweeps(config.restarts);
  parallel_for(config.restarts, resolve_width(config.threads), [&](int r) {
    std::vector<Vector> f(parties);
    if (r == 0) {
      for (int k = 0; k < parties; ++k) {
        auto [vals, vecs] = hermitian_eigen(reduced(psi, SubsystemSet{k}).matrix());
        f[k] = vecs.col(0);
      }
    } else {
      Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(r)));
      for (int k = 0; k < parties; ++k) {
        Vector v = ginibre(psi.dims()[k], 1, rng).col(0);
        f[k] = v / v.norm();
      }
    }
    sweeps[r] = alternate(psi, std::move(f), config);
  });

  int best = 0;
  for (int r = 1; r < config.restarts; ++r)
    if (sweeps[r].overlap > sweeps[best].overlap) best = r;
  GeometricResult out;
  out.overlap = std::min(sweeps[best].overlap, 1.0);
  out.value = 1.0 - out.overlap;
  out.restarts = config.restarts;
  out.agreeing = 0;
  for (const auto& s : sweeps)
    if (out.overlap - s.overlap <= 1e-8) ++out.agreeing;
  out.factors = std::move(sweeps[best].factors);
  return out;
}

}  // namespace mpent
