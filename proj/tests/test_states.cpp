#include <cmath>

#include "doctest.h"
#include "mpent/qcore.hpp"
#include "mpent/states.hpp"

using namespace mpent;
using doctest::Approx;

TEST_CASE("GHZ and W amplitudes") {
  const Ket g = ghz(3, 3);
  CHECK(g.dims() == Dims{3, 3, 3});
  CHECK(std::abs(g.amplitudes()(13)) == Approx(1.0 / std::sqrt(3.0)));
  const Ket w = w_state();
  CHECK(std::abs(w.amplitudes()(1)) == Approx(1.0 / std::sqrt(3.0)));
  CHECK(std::abs(w.amplitudes()(7)) == 0.0);
}

TEST_CASE("generalized GHZ tolerance") {
  CHECK_NOTHROW(generalized_ghz({0.57735, 0.81650}));
  CHECK(generalized_ghz({0.57735, 0.81650}).amplitudes().norm() == Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(generalized_ghz({0.5, 0.5}), UsageError);
}

TEST_CASE("MEMS construction") {
  const MemsSpec spec{2, 2, {0.5, 0.5}, std::nullopt};
  const DensityOperator m = mems(spec);
  CHECK(m.dims() == Dims{2, 4});
  CHECK(m.dim() == 8);
  CHECK(numerical_rank(m) == 2);
  // rho^A maximally mixed
  CHECK((partial_trace(m, SubsystemSet{0}).matrix() - Matrix::Identity(2, 2) / 2.0).norm() < 1e-14);
  CHECK_THROWS(mems({2, 2, {0.5, 0.6}, std::nullopt}));
  CHECK(mems({2, 3, {0.5, 0.5, 0.0}, std::nullopt}).dims() == Dims{2, 4});
}

TEST_CASE("MEMS extension marginals") {
  const MemsSpec spec{2, 2, {0.7, 0.3}, std::nullopt};
  const Ket ext = mems_extension_pure(spec);
  CHECK(ext.dims() == Dims{2, 4, 2});
  CHECK((reduced(ext, SubsystemSet{0, 1}).matrix() - mems(spec).matrix()).norm() < 1e-13);
  const DensityOperator ac = reduced(ext, SubsystemSet{0, 2});
  const DensityOperator prod = tensor(reduced(ext, SubsystemSet{0}), reduced(ext, SubsystemSet{2}));
  CHECK((ac.matrix() - prod.matrix()).norm() < 1e-12);
}

TEST_CASE("double MEMS") {
  const DensityOperator d = double_mems(2, 2, 2);
  CHECK(d.dims() == Dims{4, 2, 4});
  CHECK(numerical_rank(d) == 2);
  CHECK_THROWS(double_mems(4, 4, 4));
}

TEST_CASE("MEMS classifier") {
  CHECK(classify_mems(mems({2, 2, {0.5, 0.5}, std::nullopt})).verdict == MemsClass::MemsUpToB);
  CHECK(classify_mems(mems({2, 2, {0.7, 0.3}, std::nullopt})).verdict == MemsClass::MemsUpToA);
  CHECK(classify_mems(DensityOperator::from_ket(ghz(2, 2))).verdict == MemsClass::PureMES);
  CHECK(classify_mems(DensityOperator::maximally_mixed({2, 2})).verdict == MemsClass::NotMems);
  CHECK(to_string(MemsClass::MemsUpToB) == "MemsUpToB");
}

TEST_CASE("random states are seeded") {
  CHECK((random_pure({2, 3}, 5).amplitudes() - random_pure({2, 3}, 5).amplitudes()).norm() == 0.0);
  CHECK((random_pure({2, 3}, 5).amplitudes() - random_pure({2, 3}, 6).amplitudes()).norm() > 0.1);
  const DensityOperator r = random_mixed({2, 2}, 3, 8);
  CHECK(numerical_rank(r) == 3);
  CHECK(r.matrix().trace().real() == Approx(1.0));
}

TEST_CASE("states with prescribed spectra") {
  const SpectrumTarget t{Spectrum{{327.0 / 512, 37.0 / 128, 37.0 / 512, 0.0}}, 0.125, 0.25};
  const SpectraResult r = state_with_spectra(t);
  REQUIRE(r.status == SpectraStatus::Found);
  CHECK(r.residual <= 1e-9);
  const Spectrum a = spectrum(partial_trace(*r.state, SubsystemSet{0}));
  CHECK(a.eigenvalues[1] == Approx(0.125).epsilon(1e-9));
  const SpectraResult bad = state_with_spectra({Spectrum{{1.0, 0.0, 0.0, 0.0}}, 0.25, 0.0});
  CHECK(bad.status == SpectraStatus::Infeasible);
  CHECK_FALSE(bad.state.has_value());
}
