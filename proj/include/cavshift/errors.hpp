#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace cavshift {

/// Invalid parameters or configuration (caller error).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A material or cavity pole/resonance was hit during evaluation.
class PoleError : public std::runtime_error {
 public:
  PoleError(const std::string& what, double k_par, std::complex<double> omega)
      : std::runtime_error(what), k_par_(k_par), omega_(omega) {}
  explicit PoleError(const std::string& what) : std::runtime_error(what) {}

  double k_par() const { return k_par_; }
  std::complex<double> omega() const { return omega_; }

 private:
  double k_par_ = 0.0;
  std::complex<double> omega_{0.0, 0.0};
};

/// A model has no finite static permittivity (plasma-like 1/omega^2 pole).
class StaticPoleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical result failed its built-in stability or refinement check.
/// Carries the two disagreeing values.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::complex<double> coarse,
                   std::complex<double> fine)
      : std::runtime_error(what), coarse_(coarse), fine_(fine) {}

  std::complex<double> coarse() const { return coarse_; }
  std::complex<double> fine() const { return fine_; }

 private:
  std::complex<double> coarse_;
  std::complex<double> fine_;
};

/// Config file problem: parse error, unknown key, bad value.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cavshift
