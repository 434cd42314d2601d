#include <random>

#include "doctest.h"
#include "mpent/kernels.hpp"

using namespace mpent;
using namespace mpent::kernels;

namespace {

std::vector<cplx> random_buffer(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<cplx> v(n);
  for (auto& z : v) z = {g(rng), g(rng)};
  return v;
}

double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST_CASE("scalar kernels match Eigen") {
  for (std::size_t rows : {1u, 3u, 4u, 7u}) {
    for (std::size_t cols : {1u, 2u, 5u, 16u}) {
      const auto m = random_buffer(rows * cols, static_cast<unsigned>(rows * 31 + cols));
      std::vector<cplx> out(rows * rows);
      scalar::gram(m.data(), rows, cols, out.data());
      Eigen::Map<const Eigen::Matrix<cplx, -1, -1, Eigen::RowMajor>> M(m.data(), rows, cols);
      const Eigen::Matrix<cplx, -1, -1, Eigen::RowMajor> ref = M * M.adjoint();
      std::vector<cplx> r(ref.data(), ref.data() + rows * rows);
      CHECK(max_diff(out, r) < 1e-12);
    }
  }
  const auto a = random_buffer(3 * 5, 1), b = random_buffer(5 * 4, 2);
  std::vector<cplx> c(12);
  scalar::gemm(a.data(), b.data(), 3, 5, 4, c.data());
  using RM = Eigen::Matrix<cplx, -1, -1, Eigen::RowMajor>;
  const RM ref = Eigen::Map<const RM>(a.data(), 3, 5) * Eigen::Map<const RM>(b.data(), 5, 4);
  CHECK(max_diff(c, std::vector<cplx>(ref.data(), ref.data() + 12)) < 1e-12);
}

TEST_CASE("AVX2 kernels agree with scalar reference") {
  if (!available(Isa::Avx2)) {
    MESSAGE("AVX2 not available; skipping equivalence");
    return;
  }
  const Table& s = table(Isa::Scalar);
  const Table& v = table(Isa::Avx2);
  for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 13u, 64u, 257u}) {
    const auto x = random_buffer(n, static_cast<unsigned>(n));
    const auto y = random_buffer(n, static_cast<unsigned>(n + 1000));
    CHECK(v.norm2(x.data(), n) == doctest::Approx(s.norm2(x.data(), n)).epsilon(1e-13));
    CHECK(std::abs(v.dotc(x.data(), y.data(), n) - s.dotc(x.data(), y.data(), n)) < 1e-12 * n);
  }
  for (std::size_t rows : {1u, 2u, 3u, 6u}) {
    for (std::size_t cols : {1u, 3u, 4u, 9u, 32u}) {
      const auto m = random_buffer(rows * cols, static_cast<unsigned>(rows * 100 + cols));
      std::vector<cplx> a(rows * rows), b(rows * rows);
      s.gram(m.data(), rows, cols, a.data());
      v.gram(m.data(), rows, cols, b.data());
      CHECK(max_diff(a, b) < 1e-12);
      const auto k = random_buffer(cols * 5, 77);
      std::vector<cplx> c1(rows * 5), c2(rows * 5);
      s.gemm(m.data(), k.data(), rows, cols, 5, c1.data());
      v.gemm(m.data(), k.data(), rows, cols, 5, c2.data());
      CHECK(max_diff(c1, c2) < 1e-12);
    }
  }
}

TEST_CASE("dispatch table is consistent") {
  const Table& t = active();
  CHECK(available(t.isa));
  CHECK(available(Isa::Scalar));
  CHECK(std::string(table(Isa::Scalar).name) == "scalar");
}
