#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "brwlab/config.hpp"
#include "brwlab/parallel.hpp"

#include "json.hpp"

namespace brw {

struct ExperimentOutput {
  nlohmann::ordered_json report;             // deterministic content only
  std::map<std::string, std::string> csv;    // file name -> contents
  std::vector<ReplicaFailure> failures;
};

using ExperimentFn = std::function<ExperimentOutput(const RunConfig&)>;

const std::map<std::string, ExperimentFn>& experiment_registry();

// Executes the experiment and writes report.json, the CSV tables and
// manifest.json under out_dir/<experiment>/. Returns the process exit code
// contract: 0 ok, 3 partial failure.
int run_and_write(const std::string& name, const RunConfig& cfg, const std::string& out_dir);

// Reads a manifest directory and prints human-readable summary tables plus
// plot-ready (x, y, yerr) files. Throws MissingManifest when absent.
void write_report_summary(const std::string& results_dir, std::ostream& os);

}  // namespace brw
