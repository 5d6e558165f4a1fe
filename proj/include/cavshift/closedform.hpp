#pragma once

#include "cavshift/dielectric.hpp"
#include "cavshift/quantities.hpp"

// Special functions and closed-form results: the perfectly-conducting
// cavity shift, its z-derivative, the midpoint shift for media with finite
// static permittivity, and the electrostatic image force.

namespace cavshift::closedform {

struct SpecialFunctionAccuracy {
  double target_rel = 1e-12;
  long max_terms = 1000000;
};

/// Digamma psi(x) by recurrence plus asymptotic series.  Poles at
/// non-positive integers.
double digamma(double x);

/// Trigamma psi'(x).
double trigamma(double x);

/// Harmonic number continued to real argument: H_x = psi(x+1) + gamma.
/// Requires x > -1 away from the poles.
double harmonic(double x);

/// Dilogarithm Li_2(x) on [-1, 1].
double dilog(double x, const SpecialFunctionAccuracy& acc = {});

/// Lerch transcendent Phi(x, s, alpha) = sum_k x^k/(k+alpha)^s for
/// x in [0, 1), s >= 1, alpha > 0.  x = 1 is accepted for s = 2 (the sum
/// is trigamma(alpha)); other x >= 1 raise a domain error.
double lerch_phi(double x, double s, double alpha,
                 const SpecialFunctionAccuracy& acc = {});

/// Self-energy shift between perfectly conducting plates:
///   dE = e^2 <p_par^2> / (32 pi eps0 m^2 c^2 d) *
///        { pi cot(pi zeta) - 2 [ H_{3-zeta}
///          + (3 z^2 - 12 z + 11)/((z-3)(z-2)(z-1)) ] }.
/// Symmetric under zeta -> 1 - zeta; diverges at the plates.
double pc_shift(double zeta, double d, const ElectronState& electron);

/// d(pc_shift)/dz, term-wise analytic (trigamma enters through H).
/// Negative at small zeta: the gradient points toward the near plate.
/// The dynamical force is the negative of this.
double pc_shift_derivative(double zeta, double d, const ElectronState& electron);

/// The conductor midpoint shift e^2 <p_par^2> ln2 / (8 pi eps0 c^2 m^2 d),
/// used as the normalisation energy for position profiles.
double conductor_midpoint_energy(double d, const ElectronState& electron);

/// Midpoint (zeta = 1/2) shift for a model with finite static epsilon,
/// in terms of eta(0), eps'(0), eps''(0), the dilogarithm and the Lerch
/// transcendent.  Models with a static pole are unsupported here and go
/// through the numerical pipeline instead.
double drude_midpoint_shift(const DielectricModel& model, double d,
                            const ElectronState& electron);

/// Electrostatic image force on the electron,
///   F = eta(0) e^2 / (16 pi eps0 d^2) *
///       [ Phi(eta0^2, 2, 1-zeta) - Phi(eta0^2, 2, zeta) ],
/// positive toward increasing z; zero at the midpoint, attractive toward
/// the nearer plate.  Valid for eta(0) in (0, 1]; PerfectConductor and
/// plasma enter through eta(0) = 1.
double static_force(const DielectricModel& model, double zeta, double d);

}  // namespace cavshift::closedform
