#include "cavshift/closedform.hpp"

#include <cmath>

#include "cavshift/constants.hpp"
#include "cavshift/errors.hpp"

namespace cavshift::closedform {

namespace {

using namespace cavshift::constants;

bool near_nonpositive_integer(double x) {
  if (x > 0.0) return false;
  return std::abs(x - std::round(x)) < 1e-12;
}

}  // namespace

double digamma(double x) {
  if (near_nonpositive_integer(x))
    throw InvalidArgument("digamma pole at non-positive integer");
  double acc = 0.0;
  // Shift into the asymptotic regime: psi(x) = psi(x+1) - 1/x.
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // psi(x) ~ ln x - 1/(2x) - sum_{n>=1} B_2n/(2n) x^(-2n)
  static const double coeff[] = {1.0 / 12.0,  -1.0 / 120.0,     1.0 / 252.0,
                                 -1.0 / 240.0, 1.0 / 132.0,     -691.0 / 32760.0,
                                 1.0 / 12.0};
  double q = 1.0;
  double series = 0.0;
  for (double c : coeff) {
    q *= inv2;
    series += c * q;
  }
  return acc + std::log(x) - 0.5 * inv - series;
}

double trigamma(double x) {
  if (near_nonpositive_integer(x))
    throw InvalidArgument("trigamma pole at non-positive integer");
  double acc = 0.0;
  while (x < 10.0) {
    acc += 1.0 / (x * x);
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // psi'(x) ~ 1/x + 1/(2x^2) + sum_{n>=1} B_2n x^(-2n-1)
  double result = inv + 0.5 * inv2;
  static const double coeff[] = {1.0 / 6.0,   -1.0 / 30.0, 1.0 / 42.0,    -1.0 / 30.0,
                                 5.0 / 66.0,  -691.0 / 2730.0, 7.0 / 6.0};
  double q = inv;
  for (double c : coeff) {
    q *= inv2;
    result += c * q;
  }
  return acc + result;
}

double harmonic(double x) { return digamma(x + 1.0) + euler_gamma; }

double dilog(double x, const SpecialFunctionAccuracy& acc) {
  if (!(x >= -1.0) || !(x <= 1.0)) throw InvalidArgument("dilog domain is [-1, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return pi * pi / 6.0;
  if (x < 0.0) {
    // Li2(-y) = Li2(y^2)/2 - Li2(y), both arguments in (0, 1].
    const double y = -x;
    return 0.5 * dilog(y * y, acc) - dilog(y, acc);
  }
  if (x > 0.5) {
    // Reflection: Li2(x) + Li2(1-x) = pi^2/6 - ln x ln(1-x).
    return pi * pi / 6.0 - std::log(x) * std::log1p(-x) - dilog(1.0 - x, acc);
  }
  double term = x;
  double sum = x;
  for (long k = 2; k <= acc.max_terms; ++k) {
    term *= x;
    const double add = term / (static_cast<double>(k) * k);
    sum += add;
    // Geometric tail: remainder < add * x/(1-x) <= add for x <= 1/2.
    if (add <= acc.target_rel * sum) break;
  }
  return sum;
}

double lerch_phi(double x, double s, double alpha, const SpecialFunctionAccuracy& acc) {
  if (!(alpha > 0.0)) throw InvalidArgument("lerch_phi requires alpha > 0");
  if (!(s >= 1.0)) throw InvalidArgument("lerch_phi requires s >= 1");
  if (x < 0.0 || x > 1.0) throw InvalidArgument("lerch_phi domain is x in [0, 1]");
  if (x == 1.0) {
    if (s == 2.0) return trigamma(alpha);  // sum 1/(k+alpha)^2
    throw InvalidArgument("lerch_phi at x = 1 is only supported for s = 2");
  }
  if (x == 0.0) return std::pow(alpha, -s);
  double xk = 1.0;
  double sum = 0.0;
  for (long k = 0; k < acc.max_terms; ++k) {
    const double term = xk / std::pow(static_cast<double>(k) + alpha, s);
    sum += term;
    // Geometric tail bound: remaining sum < term * x / (1 - x).
    if (k > 0 && term * x / (1.0 - x) <= acc.target_rel * sum) return sum;
    xk *= x;
  }
  throw ConvergenceError("lerch_phi series did not meet its tail bound", sum, sum);
}

double pc_shift(double zeta, double d, const ElectronState& electron) {
  if (!(zeta > 0.0) || !(zeta < 1.0))
    throw InvalidArgument("conductor shift diverges at the plates; need 0 < zeta < 1");
  if (!(d > 0.0)) throw InvalidArgument("need d > 0");
  const double rational = (3.0 * zeta * zeta - 12.0 * zeta + 11.0) /
                          ((zeta - 3.0) * (zeta - 2.0) * (zeta - 1.0));
  const double brace =
      pi / std::tan(pi * zeta) - 2.0 * (harmonic(3.0 - zeta) + rational);
  const double pref = electron.charge * electron.charge * electron.p_par_sq /
                      (32.0 * vacuum_permittivity * electron.mass * electron.mass *
                       speed_of_light * speed_of_light * pi * d);
  return pref * brace;
}

double pc_shift_derivative(double zeta, double d, const ElectronState& electron) {
  if (!(zeta > 0.0) || !(zeta < 1.0)) throw InvalidArgument("need 0 < zeta < 1");
  if (!(d > 0.0)) throw InvalidArgument("need d > 0");
  const double s = std::sin(pi * zeta);
  // The rational term telescopes to 1/(z-1) + 1/(z-2) + 1/(z-3); its
  // derivative is minus the sum of squared reciprocals.
  auto sq = [](double v) { return v * v; };
  const double rational_d =
      -(1.0 / sq(zeta - 1.0) + 1.0 / sq(zeta - 2.0) + 1.0 / sq(zeta - 3.0));
  const double brace_d =
      -pi * pi / (s * s) - 2.0 * (-trigamma(4.0 - zeta) + rational_d);
  const double pref = electron.charge * electron.charge * electron.p_par_sq /
                      (32.0 * vacuum_permittivity * electron.mass * electron.mass *
                       speed_of_light * speed_of_light * pi * d);
  return pref * brace_d / d;  // d/dz = (1/d) d/dzeta
}

double conductor_midpoint_energy(double d, const ElectronState& electron) {
  if (!(d > 0.0)) throw InvalidArgument("need d > 0");
  return electron.charge * electron.charge * electron.p_par_sq * std::log(2.0) /
         (8.0 * pi * vacuum_permittivity * speed_of_light * speed_of_light *
          electron.mass * electron.mass * d);
}

double drude_midpoint_shift(const DielectricModel& model, double d,
                            const ElectronState& electron) {
  if (!(d > 0.0)) throw InvalidArgument("need d > 0");
  if (!model.has_finite_static_epsilon())
    throw StaticPoleError(
        "midpoint closed form needs a finite static epsilon; static-pole models go "
        "through the numerical pipeline");
  const StaticTaylor t = model.static_taylor();
  const cplx eta0c = (t.eps0 - 1.0) / (t.eps0 + 1.0);
  if (std::abs(eta0c.imag()) > 1e-10 * std::abs(eta0c.real()))
    throw InvalidArgument("midpoint closed form needs real eta(0)");
  const double eta0 = eta0c.real();
  if (!(eta0 > 0.0) || eta0 > 1.0)
    throw InvalidArgument("midpoint closed form needs eta(0) in (0, 1]");

  // Length-dimension derivatives: (c eps'(0))^2 in m^2, c^2 eps''(0) in m^2.
  // Reality of the medium makes eps'(0) purely imaginary and eps''(0) real.
  const cplx e1sq = (speed_of_light * t.eps1) * (speed_of_light * t.eps1);
  const cplx e2c = speed_of_light * speed_of_light * t.eps2;
  if (std::abs(e1sq.imag()) > 1e-10 * std::abs(e1sq) + 1e-300 ||
      std::abs(e2c.imag()) > 1e-10 * std::abs(e2c) + 1e-300)
    throw InvalidArgument(
        "static Taylor data violates the reality condition (Re eps'(0) = 0, "
        "Im eps''(0) = 0)");
  const double ep1_sq = e1sq.real();
  const double ep2 = e2c.real();

  const double phi_half = lerch_phi(eta0 * eta0, 2.0, 0.5);
  const double brace =
      16.0 * d * d * eta0 * eta0 * eta0 +
      8.0 * std::pow(eta0 - 1.0, 4) * std::log(eta0 + 1.0) * ep1_sq +
      (eta0 - 1.0) * (eta0 - 1.0) *
          (2.0 * eta0 * ep2 + (eta0 * eta0 - 1.0) * ep1_sq) *
          (eta0 * phi_half + 4.0 * dilog(eta0) - 3.0 * dilog(eta0 * eta0));

  return -electron.charge * electron.charge * electron.p_par_sq /
         (256.0 * pi * vacuum_permittivity * speed_of_light * speed_of_light *
          electron.mass * electron.mass * d * d * d * eta0 * eta0) *
         brace;
}

double static_force(const DielectricModel& model, double zeta, double d) {
  if (!(d > 0.0)) throw InvalidArgument("need d > 0");
  if (!(zeta > 1e-6) || !(zeta < 1.0 - 1e-6))
    throw InvalidArgument("static force rejected within 1e-6 of the plates");
  const cplx eta0c = model.eta(cplx(0.0, 0.0));
  if (std::abs(eta0c.imag()) > 1e-12 * std::abs(eta0c.real()))
    throw InvalidArgument("static force needs a real eta(0)");
  const double eta0 = eta0c.real();
  if (!(eta0 > 0.0) || eta0 > 1.0)
    throw InvalidArgument("static force needs eta(0) in (0, 1]");
  const double x = eta0 * eta0;
  const double bracket = lerch_phi(x, 2.0, 1.0 - zeta) - lerch_phi(x, 2.0, zeta);
  return eta0 * elementary_charge * elementary_charge /
         (16.0 * pi * vacuum_permittivity * d * d) * bracket;
}

}  // namespace cavshift::closedform
