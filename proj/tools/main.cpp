#include <cstdio>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "tricav/io.hpp"
#include "tricav/validate.hpp"

using namespace tricav;

namespace {

enum Exit { kOk = 0, kConfigError = 2, kSolverError = 3, kValidationFailure = 4 };

struct Flags {
  std::string config;
  std::string out;
  std::string format;
  int jobs = 0;
  int n_max = 0;
};

void add_common(CLI::App* cmd, Flags& f, bool with_config) {
  if (with_config) cmd->add_option("--config", f.config, "JSON run configuration")->required();
  cmd->add_option("--out", f.out, "output path (stdout when omitted)");
  cmd->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--jobs", f.jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);
  cmd->add_option("--n-max", f.n_max, "Fock cutoff per resonator")->check(CLI::PositiveNumber);
}

void apply_flags(RunConfig& c, const Flags& f) {
  if (!f.out.empty()) c.out = f.out;
  if (!f.format.empty()) c.format = parse_format(f.format);
  if (f.n_max > 0) c.sweep.n_max = f.n_max;
}

int jobs_of(const Flags& f) {
  if (f.jobs > 0) return f.jobs;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

int report(const Error& e) {
  const nlohmann::json j = {{"error", errc_name(e.code())}, {"message", e.what()}};
  std::cerr << j.dump() << '\n';
  switch (e.code()) {
    case Errc::Config:
    case Errc::InvalidAxis:
    case Errc::InvalidArgument:
    case Errc::UnknownPreset:
      return kConfigError;
    default:
      return kSolverError;
  }
}

void emit(const ResultTable& t, const RunConfig& c, const std::string& suffix) {
  if (!c.out) {
    if (c.format == OutputFormat::Json)
      std::cout << table_to_json(t).dump(2) << '\n';
    else
      write_csv(std::cout, t);
    return;
  }
  for (const std::string& path : write_table(t, with_suffix(*c.out, suffix), c.format))
    std::cerr << "wrote " << path << '\n';
}

int run_sweeps(const RunConfig& c, int jobs) {
  c.sweep.validate();
  const std::vector<Curve> curves = expand_family(c.sweep);
  if (curves.size() > 1 && !c.out) throw Error(Errc::Config, "config: a family sweep needs --out");
  for (const Curve& curve : curves) {
    const SweepResult r = run_sweep(curve.spec, jobs);
    RunConfig resolved = c;
    resolved.sweep = curve.spec;
    const ResultTable t = sweep_table(r, resolved);
    emit(t, resolved, curve.suffix);
    if (!t.errors.empty()) std::cerr << t.errors.size() << " point(s) failed" << curve.suffix << "; see errors\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady-state entanglement of two coupled resonators and a two-level atom"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  Flags flags;
  std::string preset_name;
  bool corrupt = false;

  CLI::App* steady = app.add_subcommand("steady", "single steady-state record");
  add_common(steady, flags, true);
  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep from a config");
  add_common(sweep, flags, true);
  CLI::App* preset = app.add_subcommand("preset", "parameter sweep of a figure preset");
  preset->add_option("name", preset_name, "preset name")->required();
  add_common(preset, flags, false);
  CLI::App* validate = app.add_subcommand("validate", "run the invariant suite");
  validate->add_flag("--test-corrupt-tolerance", corrupt, "set every tolerance negative (failure-path test)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*steady) {
      RunConfig c = load_config(flags.config);
      apply_flags(c, flags);
      const ResultTable t = steady_table(c.sweep, c);
      emit(t, c, "");
      if (!t.errors.empty()) {
        const auto& e = t.errors.front();
        std::cerr << nlohmann::json{{"error", e.code}, {"message", e.message}}.dump() << '\n';
        return kSolverError;
      }
      return kOk;
    }
    if (*sweep) {
      RunConfig c = load_config(flags.config);
      apply_flags(c, flags);
      return run_sweeps(c, jobs_of(flags));
    }
    if (*preset) {
      RunConfig c;
      c.sweep = figure_preset(preset_name);
      c.out = preset_name + ".csv";
      if (!flags.format.empty() && flags.format == "json") c.out = preset_name + ".json";
      apply_flags(c, flags);
      return run_sweeps(c, jobs_of(flags));
    }
    if (*validate) {
      ValidationOptions opts;
      if (corrupt) opts.tolerance_override = -1.0;
      int failed = 0;
      for (const CheckResult& r : run_validation(opts)) {
        std::printf("%s  %-12s %s (error %.3g, tolerance %.3g)\n", r.passed ? "PASS" : "FAIL", r.module.c_str(),
                    r.name.c_str(), r.error, r.tolerance);
        failed += !r.passed;
      }
      std::printf("%d check(s) failed\n", failed);
      return failed == 0 ? kOk : kValidationFailure;
    }
  } catch (const Error& e) {
    return report(e);
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", "internal"}, {"message", e.what()}}.dump() << '\n';
    return kSolverError;
  }
  return kOk;
}
