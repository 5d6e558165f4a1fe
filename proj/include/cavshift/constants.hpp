#pragma once

// Physical constants (CODATA 2018) and unit conventions.
//
// Every value crossing the public API is S.I.: lengths in m, frequencies in
// rad/s, energies in J, forces in N, magnetic fields in T.  Internal
// quadratures are nondimensionalised by the plate separation d and c/d.

namespace cavshift::constants {

inline constexpr double elementary_charge = 1.602176634e-19;   // C (exact)
inline constexpr double electron_mass = 9.1093837015e-31;      // kg
inline constexpr double speed_of_light = 299792458.0;          // m/s (exact)
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m
inline constexpr double hbar = 1.054571817e-34;                // J*s

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double euler_gamma = 0.577215664901532860606512090082402431;

/// m*c/e, the cyclotron constant: B = (mc/e) * beta / R.  About 1.7e-3 T*m.
inline constexpr double cyclotron_constant =
    electron_mass * speed_of_light / elementary_charge;

}  // namespace cavshift::constants
