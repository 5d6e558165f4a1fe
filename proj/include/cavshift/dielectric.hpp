#pragma once

#include <complex>
#include <functional>
#include <string>

namespace cavshift {

using cplx = std::complex<double>;

/// Static Taylor data of a response model: epsilon(0) and its first two
/// omega-derivatives at 0.  For real media, eps1 is purely imaginary and
/// eps2 real (Schwarz reflection).
struct StaticTaylor {
  cplx eps0;
  cplx eps1;  // d eps / d omega at 0, units s
  cplx eps2;  // d^2 eps / d omega^2 at 0, units s^2
};

/// Material response epsilon(omega) evaluable on complex frequencies.
///
/// Built-in kinds:
///   PerfectConductor           -- no finite epsilon; handled by exact
///                                 reflection-coefficient limits r_s = -1,
///                                 r_p = +1, never by a large-epsilon
///                                 surrogate.
///   Plasma(wp)                 -- 1 - wp^2/omega^2, lossless.
///   DrudeLorentz(wp, wt, g)    -- 1 - wp^2/(omega^2 - wt^2 + i g omega).
///   Drude(wp, g)               -- DrudeLorentz with wt = 0; divergent
///                                 static epsilon.
///   Custom                     -- user callable plus user-supplied static
///                                 Taylor data and a frequency scale for
///                                 contour sizing.
///
/// All frequency parameters are angular (rad/s).
class DielectricModel {
 public:
  enum class Kind { PerfectConductor, Plasma, DrudeLorentz, Drude, Custom };

  static DielectricModel perfect_conductor();
  static DielectricModel plasma(double omega_p);
  static DielectricModel drude_lorentz(double omega_p, double omega_t, double gamma);
  static DielectricModel drude(double omega_p, double gamma);
  static DielectricModel custom(std::function<cplx(cplx)> eps, StaticTaylor taylor,
                                double omega_scale);

  Kind kind() const { return kind_; }
  std::string name() const;
  double omega_p() const { return omega_p_; }
  double omega_t() const { return omega_t_; }
  double gamma() const { return gamma_; }

  /// epsilon(omega).  Throws for PerfectConductor ("use the
  /// reflection-coefficient limit") and at the omega = 0 pole of the
  /// plasma and Drude kinds.
  cplx epsilon(cplx omega) const;

  /// epsilon(omega) * omega^2.  Entire at omega = 0 for every built-in
  /// kind (the static pole of plasma/Drude cancels), which is what the
  /// residue contour actually needs.
  cplx eps_omega_sq(cplx omega) const;

  /// eta(omega) = (eps - 1)/(eps + 1).  Exactly 1 for PerfectConductor,
  /// and exactly 1 at omega = 0 for the static-pole kinds (eps -> inf
  /// limit).  Throws where eps(omega) = -1 (surface-mode pole).
  cplx eta(cplx omega) const;

  /// (eps(0), eps'(0), eps''(0)).  Closed forms for built-in kinds; the
  /// user-supplied record for Custom.  Throws StaticPoleError for kinds
  /// whose eps(0) diverges (Plasma, Drude) and for PerfectConductor.
  StaticTaylor static_taylor() const;

  bool has_finite_static_epsilon() const;

  /// Largest contour radius around omega = 0 that keeps the scattering
  /// integrand at parallel wavenumber k_par analytic inside the contour:
  /// below the material scales (weighted by radius_fraction) and below
  /// the vacuum/medium branch points near c*k_par.
  double contour_radius(double k_par, double radius_fraction) const;

 private:
  DielectricModel() = default;

  Kind kind_ = Kind::PerfectConductor;
  double omega_p_ = 0.0;
  double omega_t_ = 0.0;
  double gamma_ = 0.0;
  std::function<cplx(cplx)> custom_eps_;
  StaticTaylor custom_taylor_{};
  double custom_scale_ = 0.0;
};

}  // namespace cavshift
