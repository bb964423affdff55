#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "brwlab/config.hpp"
#include "brwlab/registry.hpp"

namespace {

std::string default_out_root() {
  const char* env = std::getenv("BRWLAB_OUT");
  return env ? env : "results";
}

brw::RunConfig load_config(const std::string& config_path,
                           const std::vector<std::string>& overrides) {
  brw::RunConfig cfg =
      config_path.empty() ? brw::RunConfig() : brw::RunConfig::from_file(config_path);
  for (const auto& kv : overrides) cfg.apply_override(kv);
  return cfg;
}

void add_common_flags(CLI::App* cmd, std::string& config_path, std::vector<std::string>& overrides,
                      std::vector<std::string>& flag_overrides) {
  cmd->add_option("--config", config_path, "config file (key = value lines, [section] headers)");
  cmd->add_option("--set", overrides, "override config entries, key=value")->take_all();
  // the common knobs get dedicated flags; they map onto the same keys
  static const char* keys[] = {"law",     "d",     "n",        "sizes",  "K",
                               "k_grid",  "W",     "replicas", "seed",   "workers",
                               "bush_depth_cap", "graphs", "walks_per_graph", "steps",
                               "nu", "sigma_G", "mesh", "r_grid", "sensitivity"};
  for (const char* k : keys) {
    cmd->add_option_function<std::string>(
        std::string("--") + k,
        [k, &flag_overrides](const std::string& v) { flag_overrides.push_back(std::string(k) + "=" + v); },
        std::string("sets config key '") + k + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo laboratory for critical branching random walk traces"};
  app.require_subcommand(1);

  // run ------------------------------------------------------------------
  auto* run = app.add_subcommand("run", "run one experiment and write its artifacts");
  std::string experiment, config_path, out_dir = default_out_root();
  std::vector<std::string> overrides, flag_overrides;
  run->add_option("experiment", experiment, "experiment name (see list-experiments)")->required();
  run->add_option("--out", out_dir, "output root (default $BRWLAB_OUT or ./results)");
  add_common_flags(run, config_path, overrides, flag_overrides);

  // report ----------------------------------------------------------------
  auto* report = app.add_subcommand("report", "summarize a results directory");
  std::string results_dir;
  report->add_option("dir", results_dir, "results directory with manifests")->required();

  // list-experiments -------------------------------------------------------
  auto* list = app.add_subcommand("list-experiments", "print registered experiment names");

  // validate-config ---------------------------------------------------------
  auto* validate = app.add_subcommand("validate-config", "parse and check a config file");
  std::string validate_path;
  std::vector<std::string> voverrides, vflag_overrides;
  validate->add_option("config", validate_path, "config file path")->required();
  validate->add_option("--set", voverrides, "override config entries")->take_all();

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) {
      for (const auto& [name, fn] : brw::experiment_registry()) std::cout << name << "\n";
      return 0;
    }
    if (validate->parsed()) {
      brw::RunConfig cfg = load_config(validate_path, voverrides);
      std::string exp = cfg.get_string("experiment", "");
      if (!exp.empty() && !brw::experiment_registry().count(exp))
        throw brw::ConfigError("unknown experiment in config: " + exp);
      std::cout << "ok\n" << cfg.canonical_text();
      return 0;
    }
    if (report->parsed()) {
      brw::write_report_summary(results_dir, std::cout);
      return 0;
    }
    // run
    brw::RunConfig cfg = load_config(config_path, overrides);
    for (const auto& kv : flag_overrides) cfg.apply_override(kv);
    cfg.set("experiment", experiment);
    if (!brw::experiment_registry().count(experiment)) {
      std::cerr << "unknown experiment: " << experiment << "\nregistered experiments:\n";
      for (const auto& [name, fn] : brw::experiment_registry()) std::cerr << "  " << name << "\n";
      return 2;
    }
    int rc = brw::run_and_write(experiment, cfg, out_dir);
    if (rc == 3) std::cerr << "warning: some replicas failed; see manifest.json\n";
    return rc;
  } catch (const brw::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const brw::MissingManifest& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
