#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "eitfwm/runner.hpp"

// Command-line front end. Exit codes: 0 success, 2 config error,
// 3 computation error, 4 validation failure.

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitComputation = 3;
constexpr int kExitValidation = 4;

struct RunOptions {
  std::string scenario_file;
  std::string preset;
  std::optional<double> seed_fraction;
  std::optional<double> two_d;
  std::optional<double> rabi_hz;
  std::string out_dir;
};

eitfwm::Scenario load(const RunOptions& opt) {
  if (opt.scenario_file.empty() == opt.preset.empty())
    throw eitfwm::ConfigError("give exactly one of a scenario file or --preset");
  eitfwm::Scenario sc = opt.preset.empty() ? eitfwm::load_scenario(opt.scenario_file)
                                           : eitfwm::load_preset(opt.preset);
  // flag overrides take precedence over file keys
  if (opt.two_d) sc.medium.two_d = *opt.two_d;
  if (opt.rabi_hz) sc.drive.omega = eitfwm::two_pi * *opt.rabi_hz;
  if (opt.seed_fraction) {
    sc.drive.seed_fraction = *opt.seed_fraction;
    for (auto& cs : sc.cases) cs.seed_fraction = *opt.seed_fraction;
  }
  if (!opt.out_dir.empty()) sc.output_dir = opt.out_dir;
  sc.medium.validate();
  sc.drive.validate();
  sc.sweep.medium = sc.medium;
  sc.sweep.drive = sc.drive;
  return sc;
}

int do_run(const RunOptions& opt) {
  const eitfwm::Scenario sc = load(opt);
  const eitfwm::RunManifest man = eitfwm::run(sc);
  eitfwm::write_manifest(man, sc.output_dir);
  std::printf("%s: wrote %zu file(s) to %s\n", sc.label.c_str(), man.files.size(),
              sc.output_dir.c_str());
  for (const auto& f : man.files) std::printf("  %s\n", f.name.c_str());
  if (man.mode == "validate")
    std::printf("max relative oracle error: %.3e\n", man.validate_max_rel_err);
  return 0;
}

int do_validate(int steps, double tol) {
  // default grid at the high-depth reference operating point
  eitfwm::Scenario sc = eitfwm::load_preset("fig4");
  sc.mode = eitfwm::RunMode::validate;
  sc.validate_spec.steps = steps;
  sc.validate_spec.tol = tol;
  const double err = eitfwm::oracle_max_rel_err(sc.medium, sc.drive, sc.validate_spec);
  std::printf("max relative oracle error: %.3e (tol %.3e)\n", err, tol);
  if (!(err < tol)) {
    std::fprintf(stderr, "validation failed\n");
    return kExitValidation;
  }
  std::printf("validation passed\n");
  return 0;
}

int do_derive(const std::string& path) {
  const eitfwm::Scenario sc = eitfwm::load_scenario(path);
  const eitfwm::DerivedParams d = eitfwm::derive_params(sc.medium, sc.drive);
  std::printf("delta_s_hz = %.17g\n", d.delta_s / eitfwm::two_pi);
  std::printf("delta_r_hz = %.17g\n", d.delta_r / eitfwm::two_pi);
  std::printf("gamma_0_rad_s = %.17g\n", d.gamma_0);
  std::printf("eit_delay_s = %.17g\n", d.eit_delay);
  std::printf("vg_over_l_per_s = %.17g\n", d.vg_over_l);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Double-lambda EIT/FWM propagation model"};
  app.require_subcommand(1);

  RunOptions opt;
  CLI::App* run = app.add_subcommand("run", "Run a scenario or figure preset");
  run->add_option("scenario", opt.scenario_file, "Scenario config file");
  run->add_option("--preset", opt.preset,
                  "Preset name (fig2ab, fig2cd, fig3ab, fig3cd, fig4, fig5)");
  double seed_f = 0, two_d = 0, rabi = 0;
  auto* of = run->add_option("--seed-fraction", seed_f, "Override Stokes seed fraction f");
  auto* od = run->add_option("--two-d", two_d, "Override optical depth 2d");
  auto* orb = run->add_option("--rabi-hz", rabi, "Override control Rabi frequency in Hz");
  run->add_option("--out", opt.out_dir, "Output directory");

  int steps = 10000;
  double tol = 1e-6;
  CLI::App* validate = app.add_subcommand("validate", "Analytic vs RK4 oracle check");
  validate->add_option("--steps", steps, "RK4 step count");
  validate->add_option("--tol", tol, "Maximum relative error");

  std::string derive_path;
  CLI::App* derive = app.add_subcommand("derive", "Print derived parameters of a scenario");
  derive->add_option("scenario", derive_path, "Scenario config file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      if (of->count()) opt.seed_fraction = seed_f;
      if (od->count()) opt.two_d = two_d;
      if (orb->count()) opt.rabi_hz = rabi;
      return do_run(opt);
    }
    if (validate->parsed()) return do_validate(steps, tol);
    if (derive->parsed()) return do_derive(derive_path);
  } catch (const eitfwm::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const eitfwm::ValidationFailure& e) {
    std::fprintf(stderr, "validation failure: %s\n", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitComputation;
  }
  return 0;
}
