#pragma once

#include <complex>

#include "cavshift/dielectric.hpp"

// Equal-point scattering Green's tensor of a planar cavity (two identical
// half-spaces separated by d), as a k_par integrand at complex frequency.
//
// Conventions, fixed by four checks (vanishing without boundaries, the
// single-interface limit, z <-> d-z symmetry, and reproduction of the
// closed-form conductor shift):
//
//   kz_vac^2 = omega^2/c^2 - k_par^2,   kz_med^2 = eps*omega^2/c^2 - k_par^2,
//   branch Im(kz) >= 0 (Re(kz) >= 0 on the Im(kz) = 0 boundary);
//
//   trace integrands, with E_t = exp(2i kz_vac t) and
//   D_sig = 1 - r_sig^2 E_d:
//
//   parallel (xx + yy):
//     (i/4pi) (k_par/kz) { [r_s (E_z + E_{d-z}) + 2 r_s^2 E_d] / D_s
//         - (c kz/omega)^2 [r_p (E_z + E_{d-z}) - 2 r_p^2 E_d] / D_p }
//   perpendicular (zz):
//     (i/4pi) (k_par/kz) (c k_par/omega)^2
//         [r_p (E_z + E_{d-z}) + 2 r_p^2 E_d] / D_p
//
// so that G_ii(r, r, omega) = integral over k_par of the integrand, in 1/m.

namespace cavshift {

enum class Polarization { s, p };

/// One evaluation point of the k_par integrand.
struct KOmegaPoint {
  double k_par = 0.0;        // 1/m, >= 0
  cplx omega{0.0, 0.0};      // rad/s
  cplx kz_vac{0.0, 0.0};     // 1/m
  cplx kz_med{0.0, 0.0};     // 1/m (equals kz_vac for PerfectConductor)
};

/// Square root with the decaying branch: Im >= 0, and Re >= 0 when Im = 0.
cplx branch_sqrt(cplx w_sq);

KOmegaPoint make_k_omega_point(double k_par, cplx omega, const DielectricModel& model);

/// Half-space amplitude reflection coefficient seen from the vacuum side.
/// r_s = (kz_vac - kz_med)/(kz_vac + kz_med),
/// r_p = (eps kz_vac - kz_med)/(eps kz_vac + kz_med), evaluated through the
/// entire combination eps*omega^2 so static-pole models stay regular.
/// PerfectConductor returns exactly (-1, +1).
cplx fresnel(Polarization pol, const KOmegaPoint& pt, const DielectricModel& model);

/// Momentum-contraction channels of the equal-point trace.
struct ChannelIntegrand {
  cplx parallel{0.0, 0.0};       // weights <p_par^2>/2 in the shift formula
  cplx perpendicular{0.0, 0.0};  // weights <p_perp^2>
};

/// k_par integrand of the cavity's equal-point scattering trace.
/// trace_scale multiplies the overall prefactor; it exists for mutation
/// sensitivity checks and must stay 1 in production use.
ChannelIntegrand cavity_trace_integrand(const KOmegaPoint& pt, const DielectricModel& model,
                                        double z, double d, double trace_scale = 1.0);

/// The d -> infinity reduction (one interface at z = 0, electron at z > 0),
/// coded independently of cavity_trace_integrand so it can serve as its
/// limit oracle.
ChannelIntegrand single_interface_trace_integrand(const KOmegaPoint& pt,
                                                  const DielectricModel& model, double z,
                                                  double trace_scale = 1.0);

}  // namespace cavshift
