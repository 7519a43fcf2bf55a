#pragma once

#include <cassert>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

// Parameters and scalar response functions of the double-Lambda medium.
// All frequencies and rates are angular (rad/s) once inside the library;
// file loaders are responsible for the Hz -> rad/s conversion.

namespace eitfwm {

using complex = std::complex<double>;

inline constexpr double two_pi = 6.283185307179586476925286766559;

struct MediumParams {
  double two_d;      // optical depth 2d (intensity attenuation exponent without EIT)
  double gamma;      // optical polarization decay rate, rad/s
  double gamma_sg;   // ground-state coherence decay rate, rad/s
  double delta_hf;   // hyperfine splitting, rad/s
  double length;     // cell length, m
  double cg_ratio = 3.0;  // |Omega'|^2 / |Omega|^2

  void validate() const {
    if (!(two_d > 0.0)) throw std::invalid_argument("MediumParams: two_d must be > 0");
    if (!(gamma > 0.0)) throw std::invalid_argument("MediumParams: gamma must be > 0");
    if (!(gamma_sg >= 0.0)) throw std::invalid_argument("MediumParams: gamma_sg must be >= 0");
    if (!(delta_hf > 0.0)) throw std::invalid_argument("MediumParams: delta_hf must be > 0");
    if (!(length > 0.0)) throw std::invalid_argument("MediumParams: length must be > 0");
    if (!(cg_ratio > 0.0)) throw std::invalid_argument("MediumParams: cg_ratio must be > 0");
  }

  double d() const { return 0.5 * two_d; }
};

struct DriveParams {
  double omega;          // control Rabi frequency, rad/s, real and z-independent
  double delta;          // two-photon detuning, rad/s
  double seed_fraction;  // Stokes seed amplitude fraction f, 0 <= f <= 1

  void validate() const {
    if (!(omega > 0.0)) throw std::invalid_argument("DriveParams: omega must be > 0");
    if (!(seed_fraction >= 0.0 && seed_fraction <= 1.0))
      throw std::invalid_argument("DriveParams: seed_fraction must be in [0, 1]");
  }
};

struct DerivedParams {
  double delta_s;    // light shift cg_ratio * Omega^2 / Delta_hf, rad/s
  double delta_r;    // Raman detuning -Omega^2 / Delta_hf, rad/s
  double gamma_0;    // effective ground-state decay, rad/s
  double eit_delay;  // full EIT group delay d*gamma/Omega^2, s
  double vg_over_l;  // v_g / L = Omega^2 / (d*gamma), 1/s
};

inline DerivedParams derive_params(const MediumParams& medium, const DriveParams& drive) {
  medium.validate();
  drive.validate();
  if (medium.delta_hf == 0.0)
    throw std::domain_error("derive_params: delta_hf must be nonzero");
  const double om2 = drive.omega * drive.omega;
  DerivedParams out;
  out.delta_s = medium.cg_ratio * om2 / medium.delta_hf;
  out.delta_r = -om2 / medium.delta_hf;
  out.gamma_0 = medium.gamma_sg +
                medium.gamma * medium.cg_ratio * om2 / (medium.delta_hf * medium.delta_hf);
  out.eit_delay = medium.d() * medium.gamma / om2;
  out.vg_over_l = om2 / (medium.d() * medium.gamma);
  return out;
}

// F, beta, sigma, xi at a given Fourier offset omega.
struct ResponseComponents {
  complex f_denom;  // F(w) = |Omega|^2 + [g - i(d-2ds+w)][g0 - i(d-ds+w)]
  complex beta;     // sqrt([g0 - i(d-ds+w)]^2 + 4 dR^2), principal branch
  complex sigma;    // (1/2)(d g / (F L)) (d-ds+w + i g0), 1/m
  complex xi;       // (1/2)(d g / (F L)) beta, 1/m
};

inline ResponseComponents response_at(const MediumParams& medium, const DriveParams& drive,
                                      const DerivedParams& derived, double omega_fourier) {
  const double dt = drive.delta - derived.delta_s + omega_fourier;  // light-shifted detuning + w
  const complex ge_term{medium.gamma, -(drive.delta - 2.0 * derived.delta_s + omega_fourier)};
  const complex gs_term{derived.gamma_0, -dt};

  ResponseComponents r;
  r.f_denom = drive.omega * drive.omega + ge_term * gs_term;
  assert(std::abs(r.f_denom) > 0.0 && "F must be nonzero for gamma, gamma_0 > 0");
  r.beta = std::sqrt(gs_term * gs_term + 4.0 * derived.delta_r * derived.delta_r);
  const complex prefactor = 0.5 * medium.d() * medium.gamma / (r.f_denom * medium.length);
  r.sigma = prefactor * complex{dt, derived.gamma_0};
  r.xi = prefactor * r.beta;
  return r;
}

}  // namespace eitfwm
