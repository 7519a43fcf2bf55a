#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "eitfwm/params.hpp"
#include "eitfwm/pulse.hpp"
#include "eitfwm/spectra.hpp"

// Scenario files: flat sectioned key = value text, '#' comments, UTF-8.
// All *_hz keys are ordinary frequencies and are multiplied by 2*pi on load.

namespace eitfwm {

inline constexpr const char* kToolVersion = "0.1.0";

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class RunMode { cw_sweep, pulse, dispersion, validate };

struct ValidateSpec {
  int steps = 10000;
  double tol = 1e-6;
  int n_delta = 21;
  int n_omega = 21;
  double delta_span = two_pi * 600e3;  // rad/s, sweep is +/- this
  double omega_span = two_pi * 200e3;
};

// One computation case; presets expand to several (per f or per delta).
struct ScenarioCase {
  std::string label;
  double seed_fraction;
  double delta;  // rad/s
};

struct Scenario {
  std::string label = "run";
  RunMode mode = RunMode::cw_sweep;
  MediumParams medium;
  DriveParams drive;
  SpectrumSweep sweep;     // cw_sweep mode
  PulseSpec pulse;         // pulse/dispersion modes
  TimeGrid grid;
  ValidateSpec validate_spec;
  std::vector<ScenarioCase> cases;
  std::string output_dir = "out";
};

namespace detail {

struct KvDoc {
  // section -> key -> value, plus every (section, key) seen for typo checks
  std::map<std::string, std::map<std::string, std::string>> sections;

  static KvDoc parse(std::istream& in) {
    KvDoc doc;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        if (a == std::string::npos) return std::string();
        const auto b = s.find_last_not_of(" \t\r");
        return s.substr(a, b - a + 1);
      };
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']')
          throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
        section = trim(line.substr(1, line.size() - 2));
        doc.sections[section];
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
      const std::string key = trim(line.substr(0, eq));
      const std::string val = trim(line.substr(eq + 1));
      if (section.empty())
        throw ConfigError("line " + std::to_string(lineno) + ": key outside any section");
      if (doc.sections[section].count(key))
        throw ConfigError("duplicate key " + section + "." + key);
      doc.sections[section][key] = val;
    }
    return doc;
  }
};

inline double parse_double(const std::string& s, const std::string& where) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value for " + where + ": '" + s + "'");
  }
}

// Pulls typed values out of one section, recording which keys were consumed
// and which required keys are missing.
class SectionReader {
 public:
  SectionReader(const KvDoc& doc, std::string section, std::vector<std::string>& missing)
      : section_(std::move(section)), missing_(missing) {
    const auto it = doc.sections.find(section_);
    if (it != doc.sections.end()) kv_ = &it->second;
  }

  bool exists() const { return kv_ != nullptr; }

  std::optional<std::string> raw(const std::string& key) {
    consumed_.insert(key);
    if (!kv_) return std::nullopt;
    const auto it = kv_->find(key);
    if (it == kv_->end()) return std::nullopt;
    return it->second;
  }

  double require_hz(const std::string& key) { return two_pi * require_num(key); }
  double require_num(const std::string& key) {
    const auto v = raw(key);
    if (!v) {
      missing_.push_back(section_ + "." + key);
      return 0.0;
    }
    return parse_double(*v, section_ + "." + key);
  }
  double num_or(const std::string& key, double fallback) {
    const auto v = raw(key);
    return v ? parse_double(*v, section_ + "." + key) : fallback;
  }
  double hz_or(const std::string& key, double fallback_rad) {
    const auto v = raw(key);
    return v ? two_pi * parse_double(*v, section_ + "." + key) : fallback_rad;
  }
  std::optional<std::string> str(const std::string& key) { return raw(key); }

  void finish(std::vector<std::string>& unknown) const {
    if (!kv_) return;
    for (const auto& [k, v] : *kv_)
      if (!consumed_.count(k)) unknown.push_back(section_ + "." + k);
  }

 private:
  std::string section_;
  const std::map<std::string, std::string>* kv_ = nullptr;
  std::set<std::string> consumed_;
  std::vector<std::string>& missing_;
};

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream ss(s);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

}  // namespace detail

inline Scenario load_scenario(std::istream& in) {
  const detail::KvDoc doc = detail::KvDoc::parse(in);
  std::vector<std::string> missing, unknown;

  Scenario sc;

  detail::SectionReader meta(doc, "scenario", missing);
  const auto mode_str = meta.str("mode");
  if (!mode_str) missing.push_back("scenario.mode");
  if (const auto l = meta.str("label")) sc.label = *l;
  if (const auto o = meta.str("output_dir")) sc.output_dir = *o;

  detail::SectionReader med(doc, "medium", missing);
  sc.medium.two_d = med.require_num("two_d");
  sc.medium.gamma = med.require_hz("gamma_hz");
  sc.medium.gamma_sg = med.require_hz("gamma_sg_hz");
  sc.medium.delta_hf = med.require_hz("delta_hf_hz");
  sc.medium.length = med.require_num("length_m");
  sc.medium.cg_ratio = med.num_or("cg_ratio", 3.0);

  detail::SectionReader drv(doc, "drive", missing);
  sc.drive.omega = drv.require_hz("rabi_hz");
  sc.drive.delta = drv.hz_or("delta_hz", 0.0);
  sc.drive.seed_fraction = drv.num_or("seed_fraction", 1.0);

  std::optional<std::string> seed_fractions, delta_cases;

  RunMode mode = RunMode::cw_sweep;
  if (mode_str) {
    if (*mode_str == "cw_sweep") mode = RunMode::cw_sweep;
    else if (*mode_str == "pulse") mode = RunMode::pulse;
    else if (*mode_str == "dispersion") mode = RunMode::dispersion;
    else if (*mode_str == "validate") mode = RunMode::validate;
    else throw ConfigError("scenario.mode: unknown mode '" + *mode_str + "'");
  }
  sc.mode = mode;

  detail::SectionReader swp(doc, "cw_sweep", missing);
  detail::SectionReader pls(doc, "pulse", missing);
  detail::SectionReader dsp(doc, "dispersion", missing);
  detail::SectionReader val(doc, "validate", missing);

  {
    const char* names[4] = {"cw_sweep", "pulse", "dispersion", "validate"};
    detail::SectionReader* readers[4] = {&swp, &pls, &dsp, &val};
    int present = 0;
    for (int i = 0; i < 4; ++i)
      if (readers[i]->exists()) ++present;
    if (present > 1) throw ConfigError("exactly one mode section allowed");
    if (present == 1 && !readers[int(mode)]->exists())
      throw ConfigError(std::string("mode section does not match scenario.mode = ") +
                        names[int(mode)]);
  }

  if (mode == RunMode::cw_sweep) {
    sc.sweep.delta_min = swp.hz_or("delta_min_hz", -two_pi * 600e3);
    sc.sweep.delta_max = swp.hz_or("delta_max_hz", two_pi * 600e3);
    sc.sweep.n_points = int(swp.num_or("n_points", 2401));
    seed_fractions = swp.str("seed_fractions");
  } else if (mode == RunMode::pulse || mode == RunMode::dispersion) {
    detail::SectionReader& r = mode == RunMode::pulse ? pls : dsp;
    sc.pulse.fwhm = r.num_or("fwhm_s", 6e-6);
    sc.grid.n_samples = std::size_t(r.num_or("n_samples", 4096));
    sc.grid.window = r.num_or("window_s", 160e-6);
    sc.grid.t_center = r.num_or("t_center_s", 40e-6);
    delta_cases = r.str("delta_cases");
  } else {
    sc.validate_spec.steps = int(val.num_or("steps", 10000));
    sc.validate_spec.tol = val.num_or("tol", 1e-6);
    sc.validate_spec.n_delta = int(val.num_or("n_delta", 21));
    sc.validate_spec.n_omega = int(val.num_or("n_omega", 21));
    sc.validate_spec.delta_span = val.hz_or("delta_span_hz", two_pi * 600e3);
    sc.validate_spec.omega_span = val.hz_or("omega_span_hz", two_pi * 200e3);
  }

  meta.finish(unknown);
  med.finish(unknown);
  drv.finish(unknown);
  swp.finish(unknown);
  pls.finish(unknown);
  dsp.finish(unknown);
  val.finish(unknown);
  for (const auto& [sec, kv] : doc.sections) {
    static const std::set<std::string> known = {"scenario", "medium",     "drive",
                                               "cw_sweep", "pulse",      "dispersion",
                                               "validate"};
    if (!known.count(sec)) unknown.push_back("[" + sec + "]");
  }

  if (!missing.empty()) {
    std::string msg = "missing required keys:";
    for (const auto& m : missing) msg += " " + m;
    throw ConfigError(msg);
  }
  if (!unknown.empty()) {
    std::string msg = "unknown keys:";
    for (const auto& u : unknown) msg += " " + u;
    throw ConfigError(msg);
  }

  sc.medium.validate();
  sc.drive.validate();
  const DerivedParams derived = derive_params(sc.medium, sc.drive);

  // expand cases
  auto fmt_label = [](const std::string& prefix, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s%g", prefix.c_str(), v);
    return std::string(buf);
  };
  if (seed_fractions) {
    for (const auto& tok : detail::split_ws(*seed_fractions)) {
      const double f = detail::parse_double(tok, "cw_sweep.seed_fractions");
      sc.cases.push_back({fmt_label("f", f), f, sc.drive.delta});
    }
  } else if (delta_cases) {
    for (const auto& tok : detail::split_ws(*delta_cases)) {
      double d;
      std::string label;
      if (tok == "0") {
        d = 0.0;
        label = "delta0";
      } else if (tok == "2delta_s") {
        d = 2.0 * derived.delta_s;
        label = "2delta_s";
      } else if (tok == "2abs_delta_r") {
        d = 2.0 * std::abs(derived.delta_r);
        label = "2abs_delta_r";
      } else {
        d = two_pi * detail::parse_double(tok, "delta_cases");
        label = fmt_label("delta", d / two_pi);
      }
      sc.cases.push_back({label, sc.drive.seed_fraction, d});
    }
  } else {
    sc.cases.push_back({fmt_label("f", sc.drive.seed_fraction), sc.drive.seed_fraction,
                        sc.drive.delta});
  }

  sc.sweep.medium = sc.medium;
  sc.sweep.drive = sc.drive;
  return sc;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file: " + path);
  return load_scenario(in);
}

// ---- presets ------------------------------------------------------------

// Named after the figure panels they reproduce. The spin decay rate of
// 1000 1/s maps to gamma_sg_hz = 1000 / (2 pi).
inline const std::map<std::string, std::string>& preset_texts() {
  static const std::map<std::string, std::string> presets = [] {
    auto num = [](double v) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      return std::string(buf);
    };
    auto medium = [&](double two_d) {
      return std::string("[medium]\ntwo_d = ") + num(two_d) +
             "\ngamma_hz = 145e6\ngamma_sg_hz = 159.15494309189535\n"
             "delta_hf_hz = 6.835e9\nlength_m = 0.075\ncg_ratio = 3\n";
    };
    auto cw = [&](const std::string& name, double two_d, double rabi_hz) {
      return "[scenario]\nmode = cw_sweep\nlabel = " + name + "\n" + medium(two_d) +
             "[drive]\nrabi_hz = " + num(rabi_hz) +
             "\ndelta_hz = 0\nseed_fraction = 1\n"
             "[cw_sweep]\ndelta_min_hz = -600e3\ndelta_max_hz = 600e3\nn_points = 2401\n"
             "seed_fractions = 1 0.22360679774997896\n";
    };
    auto pulses = [&](const std::string& name, double f) {
      return "[scenario]\nmode = pulse\nlabel = " + name + "\n" + medium(110) +
             "[drive]\nrabi_hz = 14e6\ndelta_hz = 0\nseed_fraction = " + num(f) +
             "\n[pulse]\nfwhm_s = 6e-6\nn_samples = 4096\nwindow_s = 160e-6\n"
             "t_center_s = 40e-6\ndelta_cases = 2abs_delta_r 2delta_s 0\n";
    };
    std::map<std::string, std::string> m;
    m["fig2ab"] = cw("fig2ab", 52, 9e6);
    m["fig2cd"] = cw("fig2cd", 98, 9e6);
    m["fig3ab"] = cw("fig3ab", 52, 14e6);
    m["fig3cd"] = cw("fig3cd", 110, 14e6);
    m["fig4"] = pulses("fig4", 1.0);
    m["fig5"] = pulses("fig5", 0.22360679774997896);
    return m;
  }();
  return presets;
}

inline Scenario load_preset(const std::string& name) {
  const auto& presets = preset_texts();
  const auto it = presets.find(name);
  if (it == presets.end()) throw ConfigError("unknown preset: " + name);
  std::istringstream in(it->second);
  return load_scenario(in);
}

}  // namespace eitfwm
