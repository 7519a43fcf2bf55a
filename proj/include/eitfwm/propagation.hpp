#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "eitfwm/params.hpp"

// Propagation of the coupled (signal, conjugate Stokes) pair: analytic
// transfer matrix exp(Mz), the closed-form field solutions, the
// large-detuning approximation, and a fixed-step RK4 oracle.

namespace eitfwm {

// Gain exponents beyond this are treated as unphysical input, not a crash.
inline constexpr double kOverflowReXiZ = 700.0;

struct PropagationOverflow : std::domain_error {
  explicit PropagationOverflow(double re_xiz)
      : std::domain_error("propagation overflow: Re(xi*z) = " + std::to_string(re_xiz)),
        re_xi_z(re_xiz) {}
  double re_xi_z;
};

// 2x2 complex matrix mapping [E(0,w), E'*(0,w)] to [E(z,w), E'*(z,w)].
struct FieldTransfer {
  complex t11, t12, t21, t22;

  complex det() const { return t11 * t22 - t12 * t21; }
};

struct FieldPair {
  complex signal;       // E(z,w)
  complex stokes_conj;  // E'*(z,w); the measured Stokes amplitude is |stokes_conj|
};

namespace detail {

// sinh(x)/x, series near zero to avoid 0/0.
inline complex sinhc(complex x) {
  if (std::abs(x) < 1e-6) {
    const complex x2 = x * x;
    return 1.0 + x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sinh(x) / x;
}

inline void check_overflow(complex xi, double z) {
  const double re = std::abs(std::real(xi) * z);
  if (re > kOverflowReXiZ) throw PropagationOverflow(re);
}

}  // namespace detail

// exp(Mz) of the constant coefficient matrix of the coupled equations,
// evaluated as e^{i sigma z} [cosh(xi z) I + (M - i sigma I) sinh(xi z)/xi].
inline FieldTransfer transfer_matrix(const MediumParams& medium, const DriveParams& drive,
                                     const DerivedParams& derived, double z,
                                     double omega_fourier) {
  const ResponseComponents r = response_at(medium, drive, derived, omega_fourier);
  detail::check_overflow(r.xi, z);

  const complex xz = r.xi * z;
  const complex phase = std::exp(complex{0.0, 1.0} * r.sigma * z);
  const complex ch = std::cosh(xz);
  const complex sh_over_xi = z * detail::sinhc(xz);  // sinh(xi z)/xi

  // M = i (d g / (F L)) [[D, dR], [-dR, 0]] with D = delta-ds+w+i g0;
  // M - i sigma I = i (d g / (F L)) [[D/2, dR], [-dR, -D/2]] and
  // (i d g / (F L)) D / 2 = i sigma.
  const complex prefactor = 2.0 * r.xi / r.beta;  // d g / (F L)
  const complex i_sigma = complex{0.0, 1.0} * r.sigma;
  const complex off = complex{0.0, 1.0} * prefactor * derived.delta_r;

  FieldTransfer t;
  t.t11 = phase * (ch + i_sigma * sh_over_xi);
  t.t12 = phase * off * sh_over_xi;
  t.t21 = phase * (-off) * sh_over_xi;
  t.t22 = phase * (ch - i_sigma * sh_over_xi);
  return t;
}

// Closed-form fields with the seeded-Stokes boundary condition
// E'*(0,w) = -f E(0,w). The 1/f term of the printed Stokes solution is
// distributed through f before evaluation, so f = 0 is exactly representable.
inline FieldPair propagate_analytic(const MediumParams& medium, const DriveParams& drive,
                                    const DerivedParams& derived, complex input_signal,
                                    double z, double omega_fourier) {
  const ResponseComponents r = response_at(medium, drive, derived, omega_fourier);
  detail::check_overflow(r.xi, z);

  const double f = drive.seed_fraction;
  const complex xz = r.xi * z;
  const complex phase = std::exp(complex{0.0, 1.0} * r.sigma * z);
  const complex ch = std::cosh(xz);
  const complex sh_over_xi = z * detail::sinhc(xz);
  // sinh(xi z)/beta = (xi/beta) sinh(xi z)/xi; xi/beta is the regular prefactor/2.
  const complex sh_over_beta = (r.xi / r.beta) * sh_over_xi;
  const complex i{0.0, 1.0};

  FieldPair out;
  out.signal = input_signal * phase *
               (ch + i * (r.sigma * sh_over_xi - f * 2.0 * derived.delta_r * sh_over_beta));
  out.stokes_conj = input_signal * phase *
                    (-f * (ch - i * r.sigma * sh_over_xi) -
                     i * 2.0 * derived.delta_r * sh_over_beta);
  return out;
}

// Validity ratios of the large-detuning expansion; all must be large
// (omega_ratio small) for the closed forms below to apply.
struct ApproxValidity {
  double raman_ratio;   // |dt| / (2 |Delta_R|), want >> 1
  double rabi_ratio;    // |dt| / Omega, want << 1
  double gamma0_ratio;  // |dt| / gamma_0, want >> 1

  bool ok(double margin = 3.0) const {
    return raman_ratio > margin && rabi_ratio < 1.0 / margin && gamma0_ratio > margin;
  }
};

struct ApproxFields {
  FieldPair fields;  // signal = E(L), stokes_conj carries E'(L) up to conjugation
  ApproxValidity validity;
};

// Interference closed forms at z = L using the far-detuned expansion
// 2 xi L = 2 i sigma L ~ i dt/(Omega^2/(d g)) - dt^2/[Omega^2/(sqrt(d) g)]^2.
inline ApproxFields propagate_approx(const MediumParams& medium, const DriveParams& drive,
                                     const DerivedParams& derived, complex input_signal,
                                     double delta_tilde) {
  if (delta_tilde == 0.0)
    throw std::domain_error("propagate_approx: delta_tilde = 0 is a pole of the expansion");

  const double om2 = drive.omega * drive.omega;
  const double d = medium.d();
  const double f = drive.seed_fraction;

  const double inv_group = om2 / (d * medium.gamma);              // inverse EIT group delay
  const double win = om2 / (std::sqrt(d) * medium.gamma);         // EIT window width
  const complex two_i_sigma_l{-delta_tilde * delta_tilde / (win * win),
                              delta_tilde / inv_group};
  const complex e2isl = std::exp(two_i_sigma_l);
  const complex fwm = om2 / (medium.delta_hf * delta_tilde) * (1.0 - e2isl);

  ApproxFields out;
  out.fields.signal = input_signal * (e2isl - f * fwm);
  out.fields.stokes_conj = input_signal * (fwm - f);
  out.validity.raman_ratio = std::abs(delta_tilde) / (2.0 * std::abs(derived.delta_r));
  out.validity.rabi_ratio = std::abs(delta_tilde) / drive.omega;
  out.validity.gamma0_ratio = std::abs(delta_tilde) / derived.gamma_0;
  return out;
}

// Fixed-step RK4 integration of the coupled equations from z = 0 to L.
// Test/validation harness only; the analytic transfer is the production path.
inline FieldPair ode_oracle(const MediumParams& medium, const DriveParams& drive,
                            const DerivedParams& derived, FieldPair input,
                            double omega_fourier, int steps) {
  if (steps < 1000) throw std::invalid_argument("ode_oracle: steps must be >= 1000");

  const ResponseComponents r = response_at(medium, drive, derived, omega_fourier);
  const complex prefactor = 2.0 * r.xi / r.beta;  // d g / (F L)
  const complex i{0.0, 1.0};
  const complex m11 = i * prefactor *
                      complex{drive.delta - derived.delta_s + omega_fourier, derived.gamma_0};
  const complex m12 = i * prefactor * derived.delta_r;
  const complex m21 = -m12;

  auto rhs = [&](complex a, complex b, complex& da, complex& db) {
    da = m11 * a + m12 * b;
    db = m21 * a;
  };

  const double h = medium.length / steps;
  complex a = input.signal, b = input.stokes_conj;
  for (int s = 0; s < steps; ++s) {
    complex k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b;
    rhs(a, b, k1a, k1b);
    rhs(a + 0.5 * h * k1a, b + 0.5 * h * k1b, k2a, k2b);
    rhs(a + 0.5 * h * k2a, b + 0.5 * h * k2b, k3a, k3b);
    rhs(a + h * k3a, b + h * k3b, k4a, k4b);
    a += h / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
    b += h / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
  }
  return {a, b};
}

}  // namespace eitfwm
