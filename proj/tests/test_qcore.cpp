#include <cmath>

#include "doctest.h"
#include "mpent/qcore.hpp"
#include "mpent/random.hpp"
#include "mpent/states.hpp"

using namespace mpent;
using doctest::Approx;

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

TEST_CASE("density operator validation") {
  Matrix m = Matrix::Identity(2, 2) * 0.5;
  CHECK_NOTHROW(DensityOperator(m, {2}));
  Matrix bad = m;
  bad(0, 1) = cplx(0.1, 0.0);
  CHECK_THROWS_AS(DensityOperator(bad, {2}), InvariantError);
  Matrix neg(2, 2);
  neg << 1.2, 0.0, 0.0, -0.2;
  CHECK_THROWS_AS(DensityOperator(neg, {2}), InvariantError);
  CHECK_THROWS_AS(DensityOperator(m, {3}), UsageError);
}

TEST_CASE("tiny negative eigenvalues are clamped") {
  Matrix m(2, 2);
  m << 1.0 + 5e-10, 0.0, 0.0, -5e-10;
  const DensityOperator rho(m, {2});
  const Spectrum s = spectrum(rho);
  CHECK(s.eigenvalues[1] == 0.0);
  CHECK(std::abs(von_neumann_entropy(rho)) < 1e-9);
}

TEST_CASE("partial trace against kron oracle") {
  const DensityOperator a = random_mixed({2}, 2, 1);
  const DensityOperator b = random_mixed({3}, 2, 2);
  const DensityOperator ab(kron(a.matrix(), b.matrix()), {2, 3});
  CHECK((partial_trace(ab, SubsystemSet{0}).matrix() - a.matrix()).norm() < 1e-14);
  CHECK((partial_trace(ab, SubsystemSet{1}).matrix() - b.matrix()).norm() < 1e-14);
  CHECK((tensor(a, b).matrix() - ab.matrix()).norm() < 1e-15);
}

TEST_CASE("reduced state of a ket matches the density route") {
  const Ket psi = random_pure({2, 3, 2}, 7);
  const DensityOperator rho = DensityOperator::from_ket(psi);
  for (const SubsystemSet& keep : {SubsystemSet{0}, SubsystemSet{1}, SubsystemSet{0, 2}}) {
    CHECK((reduced(psi, keep).matrix() - partial_trace(rho, keep).matrix()).norm() < 1e-13);
  }
}

TEST_CASE("Bell partial transpose") {
  const DensityOperator bell = DensityOperator::from_ket(ghz(2, 2));
  const HermitianMatrix pt = partial_transpose(bell, SubsystemSet{0});
  const auto [ev, vecs] = hermitian_eigen(pt.matrix());
  CHECK(ev.minCoeff() == Approx(-0.5));
  CHECK(trace_norm(pt) == Approx(2.0));
  CHECK(trace_norm(partial_transpose(bell, SubsystemSet{1})) == Approx(2.0));
}

TEST_CASE("permute round trip and digit order") {
  const Ket psi = random_pure({2, 3, 4}, 11);
  const Ket p = permute(psi, {2, 0, 1});
  CHECK(p.dims() == Dims{4, 2, 3});
  const Ket back = permute(p, {1, 2, 0});
  CHECK((back.amplitudes() - psi.amplitudes()).norm() < 1e-15);
  const Ket b = Ket::basis({2, 3}, {1, 2});
  CHECK(std::abs(b.amplitudes()(5)) == 1.0);
  const Ket swapped = permute(b, {1, 0});
  CHECK(std::abs(swapped.amplitudes()(2 * 2 + 1)) == 1.0);
  CHECK_THROWS(permute(psi, {0, 0, 1}));
}

TEST_CASE("entropies of a known spectrum") {
  const std::vector<double> p{0.5, 0.25, 0.25};
  CHECK(spectral::entropy(p) == Approx(1.5 * std::log(2.0)));
  CHECK(spectral::tsallis(p, 2.0) == Approx(1.0 - 0.375));
  CHECK(spectral::renyi(p, 0.5) == Approx(2.0 * std::log(std::sqrt(0.5) + 2 * 0.5)));
  CHECK(spectral::binary_entropy(0.5) == Approx(std::log(2.0)));
  CHECK(spectral::binary_entropy(0.0) == 0.0);
}

TEST_CASE("purification reproduces the state") {
  const DensityOperator rho = random_mixed({2, 2}, 3, 5);
  const Ket psi = purify(rho);
  const int parties = rho.parties();
  std::vector<int> keep;
  for (int i = 0; i < parties; ++i) keep.push_back(i);
  CHECK((partial_trace(DensityOperator::from_ket(psi), SubsystemSet(keep)).matrix() - rho.matrix())
            .norm() < 1e-12);
}

TEST_CASE("numerical rank and purity") {
  CHECK(numerical_rank(random_mixed({2, 3}, 4, 3)) == 4);
  CHECK(purity(DensityOperator::maximally_mixed({2, 2})) == Approx(0.25));
  CHECK(sqrt_trace(DensityOperator::maximally_mixed({4})) == Approx(2.0));
}
