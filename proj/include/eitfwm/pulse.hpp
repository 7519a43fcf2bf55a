#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "eitfwm/fft.hpp"
#include "eitfwm/params.hpp"
#include "eitfwm/propagation.hpp"

// Fourier-domain pulse propagation: Gaussian signal + seeded Stokes pairs,
// spectral delay/gain dispersion, and delay/gain extraction from the traces.

namespace eitfwm {

struct PulseSpec {
  double fwhm;              // intensity FWHM of the Gaussian envelope, s
  double carrier_detuning;  // two-photon detuning of the pulse carrier, rad/s
  double seed_fraction;     // f
  double peak_amplitude = 1.0;

  void validate() const {
    if (!(fwhm > 0.0)) throw std::invalid_argument("PulseSpec: fwhm must be > 0");
    if (!(seed_fraction >= 0.0 && seed_fraction <= 1.0))
      throw std::invalid_argument("PulseSpec: seed_fraction must be in [0, 1]");
  }
};

struct TimeGrid {
  std::size_t n_samples = 4096;
  double window = 160e-6;   // s
  double t_center = 40e-6;  // input pulse center, s

  void validate() const {
    if (n_samples < 256 || !is_power_of_two(n_samples))
      throw std::invalid_argument("TimeGrid: n_samples must be a power of two >= 256");
    if (!(window > 0.0) || !(t_center > 0.0) || !(t_center < window))
      throw std::invalid_argument("TimeGrid: need 0 < t_center < window");
  }

  double dt() const { return window / double(n_samples); }
  double domega() const { return two_pi / window; }

  // Window must hold the pulse plus the slowest delayed components.
  void check_capacity(double fwhm, double eit_delay) const {
    if (window < 8.0 * fwhm + 4.0 * eit_delay)
      throw std::invalid_argument("TimeGrid: window < 8*fwhm + 4*eit_delay");
  }
};

struct PulseTrace {
  std::vector<double> t;                 // s
  std::vector<complex> signal_in;
  std::vector<complex> signal_out;
  std::vector<complex> stokes_out;       // E'(t); input Stokes is -f * signal_in
  bool edge_warning = false;             // output energy leaking into window edges
};

struct DispersionCurves {
  std::vector<double> omega;              // rad/s, ascending
  std::vector<double> delay;              // tau(w) = d/dw arg[E(L,w)/E(0,w)], s
  std::vector<double> gain;               // |E(L,w)| / |E(0,w)|
  std::vector<double> input_spectrum;     // |input signal spectrum|, peak-normalized
  std::vector<bool> valid;                // transfer above the numerical floor
};

namespace detail {

inline std::vector<complex> gaussian_envelope(const PulseSpec& pulse, const TimeGrid& grid) {
  // intensity FWHM -> field sigma: |E|^2 = exp(-t^2 / (2 s^2)), s = fwhm/sqrt(8 ln 2)
  const double s = pulse.fwhm / std::sqrt(8.0 * std::log(2.0));
  std::vector<complex> env(grid.n_samples);
  const double dt = grid.dt();
  for (std::size_t i = 0; i < grid.n_samples; ++i) {
    const double u = (double(i) * dt - grid.t_center) / s;
    env[i] = pulse.peak_amplitude * std::exp(-0.25 * u * u);
  }
  return env;
}

}  // namespace detail

// Forward FFT of the input Gaussian, per-bin application of the analytic
// transfer with the seeded boundary condition, inverse FFT of both channels.
// Bin k reconstructs with e^{+i w_k t}, so it carries the physics component
// at -w_k and is multiplied by the transfer evaluated there.
inline PulseTrace propagate_pulse(const MediumParams& medium, const DriveParams& drive_in,
                                  const DerivedParams&, const PulseSpec& pulse,
                                  const TimeGrid& grid) {
  pulse.validate();
  grid.validate();

  DriveParams drive = drive_in;
  drive.delta = pulse.carrier_detuning;
  drive.seed_fraction = pulse.seed_fraction;
  const DerivedParams derived = derive_params(medium, drive);
  grid.check_capacity(pulse.fwhm, derived.eit_delay);

  const std::size_t n = grid.n_samples;
  const double dt = grid.dt();
  const double f = pulse.seed_fraction;

  PulseTrace out;
  out.t.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.t[i] = double(i) * dt;
  out.signal_in = detail::gaussian_envelope(pulse, grid);

  std::vector<complex> sig_spec = out.signal_in;
  fft_forward(sig_spec);

  std::vector<complex> sig_out(n), stokes_conj_out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double omega = -fft_bin_omega(k, n, dt);
    const FieldTransfer t = transfer_matrix(medium, drive, derived, medium.length, omega);
    const complex e0 = sig_spec[k];
    sig_out[k] = t.t11 * e0 + t.t12 * (-f * e0);
    stokes_conj_out[k] = t.t21 * e0 + t.t22 * (-f * e0);
  }
  fft_inverse(sig_out);
  fft_inverse(stokes_conj_out);

  out.signal_out = std::move(sig_out);
  out.stokes_out.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.stokes_out[i] = std::conj(stokes_conj_out[i]);

  // flag output energy within 5% of either window edge
  const std::size_t edge = std::size_t(0.05 * double(n));
  double total = 0.0, edges = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = std::norm(out.signal_out[i]) + std::norm(out.stokes_out[i]);
    total += e;
    if (i < edge || i >= n - edge) edges += e;
  }
  out.edge_warning = total > 0.0 && edges / total > 1e-3;
  return out;
}

// Spectral delay and gain of the signal channel on the grid's frequency bins.
// Phase is unwrapped to the nearest branch before central differencing.
inline DispersionCurves dispersion_curves(const MediumParams& medium,
                                          const DriveParams& drive_in, const DerivedParams&,
                                          const PulseSpec& pulse, const TimeGrid& grid) {
  pulse.validate();
  grid.validate();

  DriveParams drive = drive_in;
  drive.delta = pulse.carrier_detuning;
  drive.seed_fraction = pulse.seed_fraction;
  const DerivedParams derived = derive_params(medium, drive);

  const std::size_t n = grid.n_samples;
  const double dt = grid.dt();
  const double dw = grid.domega();

  std::vector<complex> sig_spec = detail::gaussian_envelope(pulse, grid);
  fft_forward(sig_spec);

  DispersionCurves out;
  out.omega.resize(n);
  out.gain.resize(n);
  out.input_spectrum.resize(n);
  out.valid.assign(n, true);
  std::vector<double> phase(n);

  double spec_max = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    // ascending physics frequency: j = 0 is the most negative bin
    const double omega = (double(j) - double(n) / 2.0) * dw;
    const FieldPair fp = propagate_analytic(medium, drive, derived, 1.0, medium.length, omega);
    out.omega[j] = omega;
    const double mag = std::abs(fp.signal);
    out.gain[j] = mag;
    if (mag < 1e-12) out.valid[j] = false;
    phase[j] = std::arg(fp.signal);
    // physics frequency omega lives in FFT bin with w_k = -omega
    const std::size_t half = n / 2;
    const std::size_t k = (n - ((j + half) % n)) % n;
    const double amp = std::abs(sig_spec[k]);
    out.input_spectrum[j] = amp;
    spec_max = std::max(spec_max, amp);
  }
  if (spec_max > 0.0)
    for (auto& a : out.input_spectrum) a /= spec_max;

  // nearest-branch cumulative unwrap
  for (std::size_t j = 1; j < n; ++j) {
    double d = phase[j] - phase[j - 1];
    d -= two_pi * std::round(d / two_pi);
    phase[j] = phase[j - 1] + d;
  }

  out.delay.assign(n, 0.0);
  const std::vector<bool> mag_ok = out.valid;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == 0 || j == n - 1 || !mag_ok[j] || !mag_ok[j - 1] || !mag_ok[j + 1]) {
      out.valid[j] = false;
      continue;
    }
    out.delay[j] = (phase[j + 1] - phase[j - 1]) / (2.0 * dw);
  }
  return out;
}

struct SigmaDelay {
  double numeric;      // d Re[sigma(w)]/dw * L at w = 0, s
  double closed_form;  // d gamma / (2 Omega^2), s
};

// Common-mode delay from the leading exponential; half the full EIT delay.
inline SigmaDelay sigma_delay(const MediumParams& medium, const DriveParams& drive,
                              const DerivedParams& derived) {
  const double h = two_pi * 10.0;  // 10 Hz step
  const auto re_sigma = [&](double w) {
    return std::real(response_at(medium, drive, derived, w).sigma);
  };
  SigmaDelay out;
  out.numeric = (re_sigma(h) - re_sigma(-h)) / (2.0 * h) * medium.length;
  out.closed_form = medium.d() * medium.gamma / (2.0 * drive.omega * drive.omega);
  return out;
}

struct DelayGain {
  double delay;           // output peak time - input peak time, s
  double gain;            // output peak amplitude / input peak amplitude
  double centroid_delay;  // intensity-weighted mean time difference, s
  bool multi_peak;        // >= 2 local intensity maxima above 10% of the global max
};

namespace detail {

// peak time and intensity by quadratic interpolation over 3 samples
inline void peak_interp(const std::vector<double>& t, const std::vector<double>& intensity,
                        double& t_peak, double& i_peak) {
  std::size_t k = std::max_element(intensity.begin(), intensity.end()) - intensity.begin();
  if (k == 0 || k + 1 == intensity.size()) {
    t_peak = t[k];
    i_peak = intensity[k];
    return;
  }
  const double y0 = intensity[k - 1], y1 = intensity[k], y2 = intensity[k + 1];
  const double denom = y0 - 2.0 * y1 + y2;
  const double off = denom != 0.0 ? 0.5 * (y0 - y2) / denom : 0.0;
  t_peak = t[k] + off * (t[1] - t[0]);
  i_peak = y1 - 0.25 * (y0 - y2) * off;
}

}  // namespace detail

inline DelayGain measure_delay_gain(const PulseTrace& trace) {
  const std::size_t n = trace.t.size();
  std::vector<double> in_i(n), out_i(n);
  for (std::size_t i = 0; i < n; ++i) {
    in_i[i] = std::norm(trace.signal_in[i]);
    out_i[i] = std::norm(trace.signal_out[i]);
  }

  double t_in, i_in, t_out, i_out;
  detail::peak_interp(trace.t, in_i, t_in, i_in);
  detail::peak_interp(trace.t, out_i, t_out, i_out);

  DelayGain out;
  out.delay = t_out - t_in;
  out.gain = std::sqrt(i_out / i_in);

  double m_in = 0.0, w_in = 0.0, m_out = 0.0, w_out = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    m_in += trace.t[i] * in_i[i];
    w_in += in_i[i];
    m_out += trace.t[i] * out_i[i];
    w_out += out_i[i];
  }
  out.centroid_delay = m_out / w_out - m_in / w_in;

  const double floor_i = 0.1 * *std::max_element(out_i.begin(), out_i.end());
  int peaks = 0;
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (out_i[i] > floor_i && out_i[i] > out_i[i - 1] && out_i[i] >= out_i[i + 1]) ++peaks;
  out.multi_peak = peaks >= 2;
  return out;
}

}  // namespace eitfwm
