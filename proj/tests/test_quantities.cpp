#include <doctest.h>

#include <cmath>
#include <random>

#include "cavshift/constants.hpp"
#include "cavshift/errors.hpp"
#include "cavshift/quantities.hpp"

using namespace cavshift;

TEST_CASE("zeta is position over separation") {
  const CavityConfig c{10e-6, 5e-6};
  c.validate();
  CHECK(c.zeta() == doctest::Approx(0.5));
}

TEST_CASE("electron on a plate is rejected") {
  CHECK_THROWS_AS((CavityConfig{10e-6, 10e-6}).validate(), InvalidArgument);
  CHECK_THROWS_AS((CavityConfig{10e-6, 0.0}).validate(), InvalidArgument);
  CHECK_THROWS_AS((CavityConfig{-1e-6, 5e-7}).validate(), InvalidArgument);
  CHECK_THROWS_AS(CavityConfig::from_zeta(10e-6, 1.2), InvalidArgument);
}

TEST_CASE("internal scaling round-trips") {
  const CavityConfig c{10e-6, 1e-6};
  const ElectronState e = ElectronState::from_beta(0.01);
  const InternalParams ip = to_internal(c, e);
  CHECK(ip.zeta == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(ip.freq_scale == doctest::Approx(constants::speed_of_light / 10e-6));

  CavityConfig c2;
  ElectronState e2;
  from_internal(ip, c2, e2);
  CHECK(c2.d == doctest::Approx(c.d).epsilon(1e-15));
  CHECK(c2.z == doctest::Approx(c.z).epsilon(1e-15));
  CHECK(e2.p_par_sq == doctest::Approx(e.p_par_sq).epsilon(1e-15));
}

TEST_CASE("internal scaling round-trips on random inputs") {
  std::mt19937_64 gen(42);
  std::uniform_real_distribution<double> logd(-7.0, -3.0);
  std::uniform_real_distribution<double> zfrac(0.01, 0.99);
  std::uniform_real_distribution<double> beta(1e-4, 0.5);
  for (int i = 0; i < 200; ++i) {
    const double d = std::pow(10.0, logd(gen));
    const CavityConfig c{d, zfrac(gen) * d};
    ElectronState e = ElectronState::from_beta(beta(gen));
    e.p_perp_sq = 0.25 * e.p_par_sq;
    CavityConfig c2;
    ElectronState e2;
    from_internal(to_internal(c, e), c2, e2);
    CHECK(c2.z == doctest::Approx(c.z).epsilon(1e-15));
    CHECK(e2.p_par_sq == doctest::Approx(e.p_par_sq).epsilon(1e-15));
    CHECK(e2.p_perp_sq == doctest::Approx(e.p_perp_sq).epsilon(1e-15));
  }
}

TEST_CASE("cyclotron constant matches its rounded value") {
  // (mc/e) = 0.0017 T*m to three significant figures, so B/beta is about
  // 1.7 T for a 1 mm ring.
  CHECK(constants::cyclotron_constant == doctest::Approx(1.7e-3).epsilon(5e-3));
  CHECK(constants::cyclotron_constant / 1e-3 == doctest::Approx(1.7).epsilon(5e-3));
}

TEST_CASE("beta accessor inverts from_beta") {
  const ElectronState e = ElectronState::from_beta(0.0123);
  CHECK(e.beta() == doctest::Approx(0.0123).epsilon(1e-14));
  CHECK_THROWS_AS(ElectronState::from_beta(1.0), InvalidArgument);
  CHECK_THROWS_AS(ElectronState::from_beta(-0.1), InvalidArgument);
}
