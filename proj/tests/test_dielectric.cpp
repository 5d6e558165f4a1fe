#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "cavshift/dielectric.hpp"
#include "cavshift/errors.hpp"

using namespace cavshift;

namespace {
const DielectricModel gold = DielectricModel::drude_lorentz(1.37e16, 1e15, 4.05e13);
}

TEST_CASE("plasma epsilon vanishes at the plasma frequency") {
  const DielectricModel m = DielectricModel::plasma(2.0e16);
  const cplx eps = m.epsilon(cplx(2.0e16, 0.0));
  CHECK(std::abs(eps) < 1e-14);
}

TEST_CASE("gold static permittivity") {
  // 1 + wp^2/wt^2 = 1 + 187.69
  const cplx eps0 = gold.epsilon(cplx(0.0, 0.0));
  CHECK(eps0.real() == doctest::Approx(188.69).epsilon(1e-4));
  CHECK(eps0.imag() == doctest::Approx(0.0));
  CHECK(gold.static_taylor().eps0.real() == doctest::Approx(188.69).epsilon(1e-4));
}

TEST_CASE("high-frequency transparency") {
  for (const DielectricModel& m :
       {DielectricModel::plasma(1.37e16), gold, DielectricModel::drude(1.37e16, 4.05e13)}) {
    const cplx eps = m.epsilon(cplx(1e3 * 1.37e16, 0.0));
    CHECK(std::abs(eps - 1.0) <= 1.01e-6);
  }
}

TEST_CASE("perfect conductor refuses a finite epsilon") {
  const DielectricModel pc = DielectricModel::perfect_conductor();
  CHECK_THROWS_AS(pc.epsilon(cplx(1e15, 0.0)), InvalidArgument);
  CHECK_THROWS_AS(pc.static_taylor(), InvalidArgument);
  CHECK(pc.eta(cplx(1e15, 0.0)) == cplx(1.0, 0.0));
}

TEST_CASE("plasma pole at zero frequency") {
  const DielectricModel m = DielectricModel::plasma(1.37e16);
  CHECK_THROWS_AS(m.epsilon(cplx(0.0, 0.0)), PoleError);
  CHECK_THROWS_AS(m.static_taylor(), StaticPoleError);
  // eta is the eps -> -infinity limit there.
  CHECK(m.eta(cplx(0.0, 0.0)) == cplx(1.0, 0.0));
}

TEST_CASE("gold eta at zero frequency") {
  const cplx eta0 = gold.eta(cplx(0.0, 0.0));
  CHECK(eta0.real() == doctest::Approx(0.98946).epsilon(1e-4));
  CHECK(eta0.imag() == doctest::Approx(0.0));
}

TEST_CASE("eta is consistent with epsilon wherever both are defined") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> mag(1e13, 1e17);
  std::uniform_real_distribution<double> ang(-3.1, 3.1);
  for (int i = 0; i < 100; ++i) {
    const cplx w = std::polar(mag(gen), ang(gen));
    const cplx eps = gold.epsilon(w);
    const cplx expected = (eps - 1.0) / (eps + 1.0);
    CHECK(std::abs(gold.eta(w) - expected) <= 1e-15 * std::abs(expected));
  }
}

TEST_CASE("reality condition eps(-w*) = eps(w)*") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> re(-1e16, 1e16);
  std::uniform_real_distribution<double> im(-1e16, 1e16);
  for (const DielectricModel& m :
       {DielectricModel::plasma(1.37e16), gold, DielectricModel::drude(1.37e16, 4.05e13)}) {
    for (int i = 0; i < 100; ++i) {
      const cplx w(re(gen), im(gen));
      if (std::abs(w) < 1e12) continue;
      const cplx lhs = m.epsilon(-std::conj(w));
      const cplx rhs = std::conj(m.epsilon(w));
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
    }
  }
}

TEST_CASE("plasma equals DrudeLorentz with wt = 0, gamma = 0 pointwise") {
  const DielectricModel p = DielectricModel::plasma(1.37e16);
  const DielectricModel dl0 = DielectricModel::drude_lorentz(1.37e16, 0.0, 0.0);
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> re(-1e16, 1e16);
  for (int i = 0; i < 100; ++i) {
    const cplx w(re(gen), re(gen));
    if (std::abs(w) < 1e12) continue;
    CHECK(std::abs(p.epsilon(w) - dl0.epsilon(w)) <=
          1e-14 * std::abs(p.epsilon(w)));
  }
}

TEST_CASE("static Taylor closed forms") {
  SUBCASE("lossless model has eps'(0) = 0") {
    const DielectricModel m = DielectricModel::drude_lorentz(1.37e16, 1e15, 0.0);
    const StaticTaylor t = m.static_taylor();
    CHECK(t.eps1 == cplx(0.0, 0.0));
    CHECK(t.eps2.imag() == doctest::Approx(0.0));
  }

  SUBCASE("matches Richardson-extrapolated central differences") {
    const StaticTaylor t = gold.static_taylor();
    const double h = 1e15 * 1e-4;  // step = wt * 1e-4
    auto eps = [&](double w) { return gold.epsilon(cplx(w, 0.0)); };

    auto d1 = [&](double step) { return (eps(step) - eps(-step)) / (2.0 * step); };
    const cplx fd1 = (4.0 * d1(h / 2) - d1(h)) / 3.0;
    CHECK(std::abs(t.eps1 - fd1) <= 1e-6 * std::abs(t.eps1));
    // Sign content: eps'(0) = +i gamma wp^2 / wt^4.
    CHECK(fd1.imag() > 0.0);
    CHECK(std::abs(fd1.real()) < 1e-6 * std::abs(fd1.imag()));

    auto d2 = [&](double step) {
      return (eps(step) - 2.0 * eps(0.0) + eps(-step)) / (step * step);
    };
    const cplx fd2 = (4.0 * d2(h / 2) - d2(h)) / 3.0;
    CHECK(std::abs(t.eps2 - fd2) <= 1e-6 * std::abs(t.eps2));
  }

  SUBCASE("drude kind has no static data") {
    CHECK_THROWS_AS(DielectricModel::drude(1.37e16, 4.05e13).static_taylor(),
                    StaticPoleError);
  }
}

TEST_CASE("custom models carry user Taylor data") {
  const DielectricModel m = DielectricModel::custom(
      [](cplx) { return cplx(4.0, 0.0); }, StaticTaylor{cplx(4.0, 0.0), {}, {}}, 1e15);
  CHECK(m.epsilon(cplx(1e14, 0.0)) == cplx(4.0, 0.0));
  CHECK(m.static_taylor().eps0 == cplx(4.0, 0.0));
  CHECK(m.eta(cplx(0.0, 0.0)).real() == doctest::Approx(0.6));
}
