#include <doctest.h>

#include <cmath>
#include <random>

#include "cavshift/closedform.hpp"
#include "cavshift/constants.hpp"
#include "cavshift/errors.hpp"

using namespace cavshift;
using namespace cavshift::closedform;
using cavshift::constants::pi;

namespace {
const DielectricModel gold = DielectricModel::drude_lorentz(1.37e16, 1e15, 4.05e13);
const ElectronState electron_001 = ElectronState::from_beta(0.01);

// Brute-force series oracles, independent of the library implementations.
double dilog_series(double x, long terms) {
  double sum = 0.0;
  double p = 1.0;
  for (long k = 1; k <= terms; ++k) {
    p *= x;
    sum += p / (static_cast<double>(k) * k);
  }
  return sum;
}

double lerch_series(double x, double s, double alpha, long terms) {
  double sum = 0.0;
  double p = 1.0;
  for (long k = 0; k < terms; ++k) {
    sum += p / std::pow(k + alpha, s);
    p *= x;
  }
  return sum;
}
}  // namespace

TEST_CASE("dilog fixed values") {
  CHECK(dilog(1.0) == doctest::Approx(pi * pi / 6.0).epsilon(1e-14));
  CHECK(dilog(0.0) == 0.0);
  const double ln2 = std::log(2.0);
  CHECK(dilog(0.5) == doctest::Approx(pi * pi / 12.0 - 0.5 * ln2 * ln2).epsilon(5e-12));
  CHECK(dilog(-1.0) == doctest::Approx(-pi * pi / 12.0).epsilon(1e-13));
  CHECK_THROWS_AS(dilog(1.5), InvalidArgument);
  CHECK_THROWS_AS(dilog(-1.0001), InvalidArgument);
}

TEST_CASE("dilog against the raw series") {
  for (double x : {0.1, 0.37, 0.62, 0.9, -0.45, -0.93}) {
    CHECK(dilog(x) == doctest::Approx(dilog_series(x, 1000000)).epsilon(1e-11));
  }
}

TEST_CASE("Euler reflection identity") {
  std::mt19937_64 gen(13);
  std::uniform_real_distribution<double> xs(0.01, 0.99);
  for (int i = 0; i < 200; ++i) {
    const double x = xs(gen);
    const double lhs = dilog(x) + dilog(1.0 - x);
    const double rhs = pi * pi / 6.0 - std::log(x) * std::log(1.0 - x);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("Lerch transcendent") {
  SUBCASE("index-shift identity Phi(x,s,1) = Li_s(x)/x") {
    for (double x : {0.2, 0.5, 0.8})
      CHECK(lerch_phi(x, 2.0, 1.0) == doctest::Approx(dilog(x) / x).epsilon(1e-12));
  }
  SUBCASE("x = 0 gives alpha^-s") {
    CHECK(lerch_phi(0.0, 2.0, 0.5) == doctest::Approx(4.0));
    CHECK(lerch_phi(0.0, 3.0, 2.0) == doctest::Approx(0.125));
  }
  SUBCASE("direct 200-term oracle at x = 1/4") {
    CHECK(lerch_phi(0.25, 2.0, 0.5) ==
          doctest::Approx(lerch_series(0.25, 2.0, 0.5, 200)).epsilon(5e-12));
  }
  SUBCASE("x = 1 is the trigamma sum for s = 2") {
    CHECK(lerch_phi(1.0, 2.0, 1.0) == doctest::Approx(pi * pi / 6.0).epsilon(1e-12));
    CHECK_THROWS_AS(lerch_phi(1.0, 3.0, 1.0), InvalidArgument);
  }
  SUBCASE("domain errors") {
    CHECK_THROWS_AS(lerch_phi(1.2, 2.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(lerch_phi(-0.1, 2.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(lerch_phi(0.5, 2.0, 0.0), InvalidArgument);
  }
}

TEST_CASE("harmonic numbers") {
  CHECK(harmonic(3.0) == doctest::Approx(11.0 / 6.0).epsilon(1e-13));
  CHECK(harmonic(1.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(harmonic(0.0) == doctest::Approx(0.0));
  const double ln2 = std::log(2.0);
  CHECK(harmonic(2.5) == doctest::Approx(46.0 / 15.0 - 2.0 * ln2).epsilon(1e-13));
  CHECK_THROWS_AS(harmonic(-1.0), InvalidArgument);
  CHECK_THROWS_AS(harmonic(-3.0), InvalidArgument);
}

TEST_CASE("harmonic recurrence H_x - H_{x-1} = 1/x") {
  std::mt19937_64 gen(19);
  std::uniform_real_distribution<double> xs(0.05, 10.0);
  for (int i = 0; i < 200; ++i) {
    const double x = xs(gen);
    CHECK(harmonic(x) - harmonic(x - 1.0) == doctest::Approx(1.0 / x).epsilon(1e-12));
  }
}

TEST_CASE("digamma and trigamma basics") {
  CHECK(digamma(1.0) == doctest::Approx(-constants::euler_gamma).epsilon(1e-13));
  CHECK(trigamma(1.0) == doctest::Approx(pi * pi / 6.0).epsilon(1e-13));
  CHECK(trigamma(0.5) == doctest::Approx(pi * pi / 2.0).epsilon(1e-13));
  // Recurrence psi'(x) = psi'(x+1) + 1/x^2 on a few points.
  for (double x : {0.3, 1.7, 4.2})
    CHECK(trigamma(x) == doctest::Approx(trigamma(x + 1.0) + 1.0 / (x * x)).epsilon(1e-13));
}

TEST_CASE("conductor shift fixed points") {
  const double d = 10e-6;
  SUBCASE("midpoint equals the log-2 closed form") {
    const double e0 = conductor_midpoint_energy(d, electron_001);
    CHECK(pc_shift(0.5, d, electron_001) == doctest::Approx(e0).epsilon(1e-12));
    // About 8e-28 J for beta = 0.01 in a 10 um cavity.
    CHECK(e0 == doctest::Approx(8e-28).epsilon(0.05));
  }
  SUBCASE("small-zeta limit is the single-plate law") {
    const double zeta = 1e-6;
    const double z = zeta * d;
    const double expected =
        electron_001.charge * electron_001.charge * electron_001.p_par_sq /
        (32.0 * pi * constants::vacuum_permittivity * electron_001.mass *
         electron_001.mass * constants::speed_of_light * constants::speed_of_light * z);
    CHECK(pc_shift(zeta, d, electron_001) == doctest::Approx(expected).epsilon(1e-4));
  }
  SUBCASE("mirror symmetry") {
    for (int i = 1; i <= 9; ++i) {
      const double zeta = 0.1 * i;
      CHECK(pc_shift(zeta, d, electron_001) ==
            doctest::Approx(pc_shift(1.0 - zeta, d, electron_001)).epsilon(1e-10));
    }
  }
  SUBCASE("diverges at the plates") {
    CHECK_THROWS_AS(pc_shift(0.0, d, electron_001), InvalidArgument);
    CHECK_THROWS_AS(pc_shift(1.0, d, electron_001), InvalidArgument);
  }
}

TEST_CASE("conductor shift derivative") {
  const double d = 10e-6;
  SUBCASE("vanishes at the symmetric midpoint") {
    CHECK(std::abs(pc_shift_derivative(0.5, d, electron_001)) <=
          1e-10 * std::abs(pc_shift_derivative(0.3, d, electron_001)));
  }
  SUBCASE("matches central differences") {
    const double zeta = 0.3;
    const double h = 1e-6;
    const double fd = (pc_shift(zeta + h, d, electron_001) -
                       pc_shift(zeta - h, d, electron_001)) /
                      (2.0 * h * d);
    CHECK(pc_shift_derivative(zeta, d, electron_001) ==
          doctest::Approx(fd).epsilon(1e-8));
  }
  SUBCASE("gradient points toward the near plate at small zeta") {
    CHECK(pc_shift_derivative(0.01, d, electron_001) < 0.0);
  }
}

TEST_CASE("finite-epsilon midpoint closed form") {
  const double d = 10e-6;
  SUBCASE("gold: negative, magnitude comparable to the conductor midpoint") {
    const double mid = drude_midpoint_shift(gold, d, electron_001);
    const double e0 = conductor_midpoint_energy(d, electron_001);
    CHECK(mid < 0.0);
    CHECK(std::abs(mid) > e0 / 5.0);
    CHECK(std::abs(mid) < e0 * 5.0);
  }
  SUBCASE("lossless limit keeps only the eta^3 and eps'' terms") {
    const DielectricModel lossless = DielectricModel::drude_lorentz(1.37e16, 1e15, 0.0);
    const StaticTaylor t = lossless.static_taylor();
    REQUIRE(t.eps1 == cplx(0.0, 0.0));
    const double eta0 = ((t.eps0 - 1.0) / (t.eps0 + 1.0)).real();
    const double ep2 = (constants::speed_of_light * constants::speed_of_light * t.eps2).real();
    const double phi = lerch_phi(eta0 * eta0, 2.0, 0.5);
    const double brace =
        16.0 * d * d * eta0 * eta0 * eta0 +
        (eta0 - 1.0) * (eta0 - 1.0) * 2.0 * eta0 * ep2 *
            (eta0 * phi + 4.0 * dilog(eta0) - 3.0 * dilog(eta0 * eta0));
    const double expected =
        -electron_001.charge * electron_001.charge * electron_001.p_par_sq /
        (256.0 * pi * constants::vacuum_permittivity * constants::speed_of_light *
         constants::speed_of_light * electron_001.mass * electron_001.mass * d * d * d *
         eta0 * eta0) *
        brace;
    CHECK(drude_midpoint_shift(lossless, d, electron_001) ==
          doctest::Approx(expected).epsilon(1e-13));
  }
  SUBCASE("static-pole models are unsupported") {
    CHECK_THROWS_AS(drude_midpoint_shift(DielectricModel::plasma(1.37e16), d, electron_001),
                    StaticPoleError);
    CHECK_THROWS_AS(
        drude_midpoint_shift(DielectricModel::drude(1.37e16, 4.05e13), d, electron_001),
        StaticPoleError);
  }
}

TEST_CASE("electrostatic image force") {
  const double d = 10e-6;
  SUBCASE("vanishes at the midpoint") {
    CHECK(static_force(gold, 0.5, d) == 0.0);
  }
  SUBCASE("antisymmetric under zeta -> 1 - zeta") {
    for (double zeta : {0.1, 0.25, 0.4}) {
      CHECK(static_force(gold, zeta, d) ==
            doctest::Approx(-static_force(gold, 1.0 - zeta, d)).epsilon(1e-12));
    }
  }
  SUBCASE("single-wall image-charge limit for a perfect mirror") {
    const DielectricModel pc = DielectricModel::perfect_conductor();
    const double zeta = 1e-3;
    const double z = zeta * d;
    const double expected = -constants::elementary_charge * constants::elementary_charge /
                            (16.0 * pi * constants::vacuum_permittivity * z * z);
    CHECK(static_force(pc, zeta, d) == doctest::Approx(expected).epsilon(1e-2));
    CHECK(static_force(pc, zeta, d) < 0.0);  // toward the near plate
  }
  SUBCASE("positions hugging a plate are rejected") {
    CHECK_THROWS_AS(static_force(gold, 1e-7, d), InvalidArgument);
    CHECK_THROWS_AS(static_force(gold, 1.0 - 1e-7, d), InvalidArgument);
  }
}
