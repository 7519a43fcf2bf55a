#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "eitfwm/params.hpp"
#include "eitfwm/propagation.hpp"

// Continuous-wave spectra: two-photon detuning sweeps at omega = 0 and the
// EIT/FWM interference extrema classification.

namespace eitfwm {

struct SpectrumSweep {
  MediumParams medium;
  DriveParams drive;       // delta overridden per point
  double delta_min;        // rad/s
  double delta_max;        // rad/s
  int n_points;

  void validate() const {
    medium.validate();
    drive.validate();
    if (!(delta_min < delta_max))
      throw std::invalid_argument("SpectrumSweep: delta_min must be < delta_max");
    if (n_points < 2) throw std::invalid_argument("SpectrumSweep: n_points must be >= 2");
  }
};

struct SpectrumResult {
  std::vector<double> delta;        // rad/s
  std::vector<double> delta_tilde;  // delta - delta_s, rad/s
  std::vector<double> signal_amp;   // |E(L)| / E0
  std::vector<double> stokes_amp;   // |E'(L)| / E0
  std::vector<double> signal_phase; // arg E(L)
  std::vector<double> stokes_phase; // arg E'*(L)
  std::vector<bool> approx_valid;   // large-detuning expansion applicable at this point
};

// Per-point evaluation of the analytic solution at omega = 0, E0 = 1.
inline SpectrumResult sweep_cw(const SpectrumSweep& spec) {
  spec.validate();
  const int n = spec.n_points;
  SpectrumResult out;
  out.delta.resize(n);
  out.delta_tilde.resize(n);
  out.signal_amp.resize(n);
  out.stokes_amp.resize(n);
  out.signal_phase.resize(n);
  out.stokes_phase.resize(n);
  out.approx_valid.resize(n);

  for (int i = 0; i < n; ++i) {
    const double delta =
        spec.delta_min + (spec.delta_max - spec.delta_min) * i / double(n - 1);
    DriveParams drive = spec.drive;
    drive.delta = delta;
    const DerivedParams derived = derive_params(spec.medium, drive);
    const double dt = delta - derived.delta_s;

    FieldPair fp;
    try {
      fp = propagate_analytic(spec.medium, drive, derived, 1.0, spec.medium.length, 0.0);
    } catch (const PropagationOverflow& e) {
      throw std::domain_error("sweep_cw: overflow at delta = " + std::to_string(delta) +
                              " rad/s (" + e.what() + ")");
    }

    out.delta[i] = delta;
    out.delta_tilde[i] = dt;
    out.signal_amp[i] = std::abs(fp.signal);
    out.stokes_amp[i] = std::abs(fp.stokes_conj);
    out.signal_phase[i] = std::arg(fp.signal);
    out.stokes_phase[i] = std::arg(fp.stokes_conj);
    ApproxValidity v;
    v.raman_ratio = std::abs(dt) / (2.0 * std::abs(derived.delta_r));
    v.rabi_ratio = std::abs(dt) / drive.omega;
    v.gamma0_ratio = std::abs(dt) / derived.gamma_0;
    out.approx_valid[i] = v.ok();
  }
  return out;
}

enum class ExtremumKind { dip, peak };

struct InterferenceExtremum {
  int n;               // interference order, nonzero
  double delta_tilde;  // n pi v_g / L, rad/s
  ExtremumKind kind;
};

// Parity rule for EIT/FWM interference: for delta_tilde > 0 even n gives
// dips and odd n peaks; for delta_tilde < 0 the rule flips.
inline std::vector<InterferenceExtremum> interference_extrema(
    const MediumParams& medium, const DriveParams& drive, const DerivedParams& derived,
    int n_min, int n_max) {
  std::vector<InterferenceExtremum> out;
  for (int n = n_min; n <= n_max; ++n) {
    if (n == 0) continue;  // expansion pole
    InterferenceExtremum e;
    e.n = n;
    e.delta_tilde = n * M_PI * derived.vg_over_l;
    const bool even = (n % 2 == 0);
    e.kind = (n > 0) == even ? ExtremumKind::dip : ExtremumKind::peak;
    out.push_back(e);
  }
  (void)medium;
  (void)drive;
  return out;
}

}  // namespace eitfwm
