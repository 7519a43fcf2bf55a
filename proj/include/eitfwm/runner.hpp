#pragma once

#include <chrono>
#include <cstdint>
#include <ctime>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "eitfwm/scenario.hpp"

// Scenario execution: dispatch to the sweep/pulse/oracle computations,
// write CSV artifacts and a flat key = value run manifest.

namespace eitfwm {

struct ComputationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ValidationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmittedFile {
  std::string name;
  std::uint64_t checksum;  // FNV-1a over the file bytes
};

struct RunManifest {
  MediumParams medium;
  DriveParams drive;
  DerivedParams derived;
  std::string label;
  std::string mode;
  std::string timestamp;
  double validate_max_rel_err = 0.0;
  std::vector<EmittedFile> files;
};

namespace detail {

inline std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& dir, const std::string& name,
            std::vector<EmittedFile>& files)
      : path_(dir / name), name_(name), files_(files) {}

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) buf_ += ',';
      buf_ += cells[i];
    }
    buf_ += '\n';  // LF endings
  }

  void commit() {
    std::ofstream out(path_, std::ios::binary);
    if (!out) throw ComputationError("cannot write " + path_.string());
    out << buf_;
    out.close();
    files_.push_back({name_, fnv1a(buf_)});
  }

 private:
  std::filesystem::path path_;
  std::string name_;
  std::vector<EmittedFile>& files_;
  std::string buf_;
};

inline void write_spectrum_csv(CsvWriter& w, const SpectrumResult& r) {
  w.row({"delta_hz", "delta_tilde_hz", "signal_amp", "stokes_amp", "signal_phase_rad",
         "stokes_phase_rad", "approx_valid"});
  for (std::size_t i = 0; i < r.delta.size(); ++i)
    w.row({fmt17(r.delta[i] / two_pi), fmt17(r.delta_tilde[i] / two_pi),
           fmt17(r.signal_amp[i]), fmt17(r.stokes_amp[i]), fmt17(r.signal_phase[i]),
           fmt17(r.stokes_phase[i]), r.approx_valid[i] ? "1" : "0"});
}

inline void write_pulse_csv(CsvWriter& w, const PulseTrace& tr) {
  w.row({"t_s", "signal_in_re", "signal_in_im", "signal_out_re", "signal_out_im",
         "stokes_out_re", "stokes_out_im"});
  for (std::size_t i = 0; i < tr.t.size(); ++i)
    w.row({fmt17(tr.t[i]), fmt17(tr.signal_in[i].real()), fmt17(tr.signal_in[i].imag()),
           fmt17(tr.signal_out[i].real()), fmt17(tr.signal_out[i].imag()),
           fmt17(tr.stokes_out[i].real()), fmt17(tr.stokes_out[i].imag())});
}

inline void write_dispersion_csv(CsvWriter& w, const DispersionCurves& d) {
  w.row({"omega_hz", "delay_s", "gain", "input_spectrum_amp", "valid"});
  for (std::size_t i = 0; i < d.omega.size(); ++i)
    w.row({fmt17(d.omega[i] / two_pi), fmt17(d.delay[i]), fmt17(d.gain[i]),
           fmt17(d.input_spectrum[i]), d.valid[i] ? "1" : "0"});
}

}  // namespace detail

// Max relative disagreement between the analytic transfer and the RK4 oracle
// over the configured (delta, omega) grid, at f in {0, sqrt(0.05), 1}.
inline double oracle_max_rel_err(const MediumParams& medium, const DriveParams& drive_in,
                                 const ValidateSpec& vs) {
  double worst = 0.0;
  const double fs[3] = {0.0, 0.22360679774997896, 1.0};
  for (double f : fs) {
    for (int i = 0; i < vs.n_delta; ++i) {
      const double delta = -vs.delta_span + 2.0 * vs.delta_span * i / double(vs.n_delta - 1);
      DriveParams drive = drive_in;
      drive.delta = delta;
      drive.seed_fraction = f;
      const DerivedParams derived = derive_params(medium, drive);
      for (int j = 0; j < vs.n_omega; ++j) {
        const double w = -vs.omega_span + 2.0 * vs.omega_span * j / double(vs.n_omega - 1);
        const FieldPair analytic =
            propagate_analytic(medium, drive, derived, 1.0, medium.length, w);
        const FieldPair rk4 =
            ode_oracle(medium, drive, derived, {1.0, -f}, w, vs.steps);
        const double scale = std::max({std::abs(analytic.signal),
                                       std::abs(analytic.stokes_conj), 1e-30});
        const double err = std::max(std::abs(analytic.signal - rk4.signal),
                                    std::abs(analytic.stokes_conj - rk4.stokes_conj)) /
                           scale;
        worst = std::max(worst, err);
      }
    }
  }
  return worst;
}

inline RunManifest run(const Scenario& sc) {
  namespace fs = std::filesystem;
  const fs::path dir(sc.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ComputationError("cannot create output dir " + dir.string());

  RunManifest man;
  man.medium = sc.medium;
  man.drive = sc.drive;
  man.derived = derive_params(sc.medium, sc.drive);
  man.label = sc.label;
  {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    man.timestamp = buf;
  }

  switch (sc.mode) {
    case RunMode::cw_sweep: {
      man.mode = "cw_sweep";
      for (const auto& cs : sc.cases) {
        SpectrumSweep sweep = sc.sweep;
        sweep.drive.seed_fraction = cs.seed_fraction;
        SpectrumResult res;
        try {
          res = sweep_cw(sweep);
        } catch (const std::exception& e) {
          throw ComputationError(std::string("sweep ") + cs.label + ": " + e.what());
        }
        detail::CsvWriter w(dir, sc.label + "_spectrum_" + cs.label + ".csv", man.files);
        detail::write_spectrum_csv(w, res);
        w.commit();
      }
      break;
    }
    case RunMode::pulse:
    case RunMode::dispersion: {
      man.mode = sc.mode == RunMode::pulse ? "pulse" : "dispersion";
      for (const auto& cs : sc.cases) {
        PulseSpec pulse = sc.pulse;
        pulse.carrier_detuning = cs.delta;
        pulse.seed_fraction = cs.seed_fraction;
        try {
          if (sc.mode == RunMode::pulse) {
            const PulseTrace tr =
                propagate_pulse(sc.medium, sc.drive, man.derived, pulse, sc.grid);
            detail::CsvWriter w(dir, sc.label + "_pulse_" + cs.label + ".csv", man.files);
            detail::write_pulse_csv(w, tr);
            w.commit();
          }
          const DispersionCurves dc =
              dispersion_curves(sc.medium, sc.drive, man.derived, pulse, sc.grid);
          detail::CsvWriter w(dir, sc.label + "_dispersion_" + cs.label + ".csv", man.files);
          detail::write_dispersion_csv(w, dc);
          w.commit();
        } catch (const ConfigError&) {
          throw;
        } catch (const std::exception& e) {
          throw ComputationError(std::string("case ") + cs.label + ": " + e.what());
        }
      }
      break;
    }
    case RunMode::validate: {
      man.mode = "validate";
      man.validate_max_rel_err =
          oracle_max_rel_err(sc.medium, sc.drive, sc.validate_spec);
      if (!(man.validate_max_rel_err < sc.validate_spec.tol))
        throw ValidationFailure("oracle disagreement " +
                                detail::fmt17(man.validate_max_rel_err) + " exceeds tol " +
                                detail::fmt17(sc.validate_spec.tol));
      break;
    }
  }
  return man;
}

inline void write_manifest(const RunManifest& man, const std::string& out_dir) {
  std::ofstream out(std::filesystem::path(out_dir) / (man.label + "_manifest.txt"),
                    std::ios::binary);
  if (!out) throw ComputationError("cannot write manifest");
  auto kv = [&](const std::string& k, const std::string& v) { out << k << " = " << v << "\n"; };
  using detail::fmt17;
  kv("tool_version", kToolVersion);
  kv("timestamp", man.timestamp);
  kv("label", man.label);
  kv("mode", man.mode);
  kv("medium.two_d", fmt17(man.medium.two_d));
  kv("medium.gamma_rad_s", fmt17(man.medium.gamma));
  kv("medium.gamma_sg_rad_s", fmt17(man.medium.gamma_sg));
  kv("medium.delta_hf_rad_s", fmt17(man.medium.delta_hf));
  kv("medium.length_m", fmt17(man.medium.length));
  kv("medium.cg_ratio", fmt17(man.medium.cg_ratio));
  kv("drive.omega_rad_s", fmt17(man.drive.omega));
  kv("drive.delta_rad_s", fmt17(man.drive.delta));
  kv("drive.seed_fraction", fmt17(man.drive.seed_fraction));
  kv("derived.delta_s_rad_s", fmt17(man.derived.delta_s));
  kv("derived.delta_r_rad_s", fmt17(man.derived.delta_r));
  kv("derived.gamma_0_rad_s", fmt17(man.derived.gamma_0));
  kv("derived.eit_delay_s", fmt17(man.derived.eit_delay));
  kv("derived.vg_over_l_per_s", fmt17(man.derived.vg_over_l));
  if (man.mode == "validate")
    kv("validate.max_rel_err", fmt17(man.validate_max_rel_err));
  for (std::size_t i = 0; i < man.files.size(); ++i) {
    char hex[32];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(man.files[i].checksum));
    kv("file." + std::to_string(i) + ".name", man.files[i].name);
    kv("file." + std::to_string(i) + ".fnv1a64", hex);
  }
}

}  // namespace eitfwm
