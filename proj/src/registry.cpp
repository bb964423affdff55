#include "brwlab/registry.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "brwlab/experiments.hpp"

namespace brw {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

McParams common_params(const RunConfig& cfg) {
  McParams p;
  p.law = OffspringLaw::from_name(cfg.get_string("law", "geometric(1/2)"));
  p.d = static_cast<std::uint32_t>(cfg.get_int("d", 15));
  p.replicas = static_cast<std::uint64_t>(cfg.get_int("replicas", 100));
  p.seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
  p.workers = static_cast<std::uint32_t>(cfg.get_int("workers", 0));
  if (p.d == 0) throw ConfigError("d must be positive");
  if (p.replicas == 0) throw ConfigError("replicas must be positive");
  return p;
}

ordered_json estimate_json(const std::string& name, double value, double se, double lo, double hi,
                           std::uint64_t replicas) {
  ordered_json e;
  e["name"] = name;
  e["value"] = value;
  e["stderr"] = se;
  e["ci"] = {lo, hi};
  e["ci_level"] = 0.95;
  e["replicas"] = replicas;
  return e;
}

ordered_json estimate_json(const std::string& name, const Summary& s) {
  return estimate_json(name, s.mean, s.stderr_, s.ci_low, s.ci_high, s.count);
}

std::string csv_of_vector(const std::string& header, const std::vector<double>& xs) {
  std::ostringstream ss;
  ss << header << "\n";
  ss.precision(17);
  for (std::size_t i = 0; i < xs.size(); ++i) ss << i << "," << xs[i] << "\n";
  return ss.str();
}

ExperimentOutput run_estimate_rho(const RunConfig& cfg) {
  McParams p = common_params(cfg);
  std::uint32_t W = static_cast<std::uint32_t>(cfg.get_int("W", 1000));
  std::uint32_t cap = static_cast<std::uint32_t>(cfg.get_int("bush_depth_cap", 128));
  bool sens = cfg.get_int("sensitivity", 1) != 0;
  RhoResult r = estimate_rho_constants(p, W, cap, sens);
  ExperimentOutput out;
  out.report["experiment"] = "estimate-rho";
  out.report["estimates"] = ordered_json::array();
  out.report["estimates"].push_back(estimate_json("rho1", r.rho1_summary));
  out.report["estimates"].push_back(estimate_json("rho2_sigmaG", r.rho2_summary));
  out.report["estimates"].push_back(estimate_json("rho", r.rho_summary));
  out.report["pooled"] = {{"rho1", r.rho1}, {"rho2", r.rho2}, {"rho", r.rho}};
  out.report["replicas_used"] = r.replicas_used;
  out.report["no_pivotal"] = r.no_pivotal;
  out.report["pairs"] = r.pairs;
  out.report["truncation"] = {{"W", W}, {"bush_depth_cap", cap}};
  if (sens)
    out.report["half_cap"] = {{"rho1", r.rho1_half_cap},
                              {"rho2", r.rho2_half_cap},
                              {"rho", r.rho_half_cap}};
  out.csv["rho_replicas.csv"] = csv_of_vector("replica,rho", r.per_replica_rho);
  return out;
}

ExperimentOutput run_pivotal(const RunConfig& cfg) {
  McParams p = common_params(cfg);
  std::uint32_t W = static_cast<std::uint32_t>(cfg.get_int("W", 1000));
  std::uint32_t cap = static_cast<std::uint32_t>(cfg.get_int("bush_depth_cap", 128));
  PivotalResult r = pivotal_statistics(p, W, cap);
  ExperimentOutput out;
  out.report["experiment"] = "pivotal";
  out.report["estimates"] = ordered_json::array();
  out.report["estimates"].push_back(
      estimate_json("p_pivotal", r.p_hat, 0.0, r.ci_low, r.ci_high, r.replicas));
  out.report["gap_tail_slope"] = r.tail_slope;
  out.report["gaps"] = r.gaps;
  out.report["truncation"] = {{"W", W}, {"bush_depth_cap", cap}};
  std::ostringstream ss;
  ss.precision(17);
  ss << "gap,survival\n";
  for (std::size_t i = 0; i < r.gap_grid.size(); ++i)
    ss << r.gap_grid[i] << "," << r.gap_survival[i] << "\n";
  out.csv["gap_survival.csv"] = ss.str();
  return out;
}

ExperimentOutput run_estimate_nu(const RunConfig& cfg) {
  McParams p = common_params(cfg);
  std::uint64_t n = static_cast<std::uint64_t>(cfg.get_int("n", 20000));
  if (p.d < 5) throw ConfigError("volume estimate needs d >= 5");
  NuResult r = estimate_nu(p, n);
  ExperimentOutput out;
  out.report["experiment"] = "estimate-nu";
  out.report["estimates"] = ordered_json::array();
  out.report["estimates"].push_back(estimate_json("nu_edge", r.nu_edge_summary));
  out.report["estimates"].push_back(estimate_json("nu_vertex", r.nu_vertex_summary));
  out.report["mean_r2"] = r.mean_r2;
  out.report["cv_edge"] = r.cv_edge;
  out.report["n"] = n;
  out.csv["nu_replicas.csv"] = csv_of_vector("replica,nu_edge", r.nu_edge);
  return out;
}

ExperimentOutput run_condition_R(const RunConfig& cfg) {
  McParams p = common_params(cfg);
  std::vector<std::int64_t> sizes_i = cfg.get_int_list("sizes", {2000, 8000, 32000});
  std::vector<std::uint64_t> sizes(sizes_i.begin(), sizes_i.end());
  ConditionRResult r = check_condition_R(p, sizes);
  ExperimentOutput out;
  out.report["experiment"] = "condition-R";
  out.report["sizes"] = sizes;
  out.report["estimates"] = ordered_json::array();
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    ordered_json e = estimate_json("ratio_n" + std::to_string(sizes[i]), r.summaries[i]);
    e["cv"] = r.cv[i];
    out.report["estimates"].push_back(e);
    out.csv["ratios_n" + std::to_string(sizes[i]) + ".csv"] =
        csv_of_vector("replica,ratio", r.ratios[i]);
  }
  return out;
}

ExperimentOutput run_condition_V(const RunConfig& cfg) {
  McParams p = common_params(cfg);
  std::vector<std::int64_t> sizes_i = cfg.get_int_list("sizes", {4000, 32000});
  std::vector<std::uint64_t> sizes(sizes_i.begin(), sizes_i.end());
  std::uint32_t K = static_cast<std::uint32_t>(cfg.get_int("K", 10));
  double nu_hat = cfg.get_double("nu", 0.0);
  if (nu_hat <= 0.0) {
    McParams pn = p;
    pn.replicas = static_cast<std::uint64_t>(cfg.get_int("nu_replicas", 60));
    nu_hat = estimate_nu(pn, static_cast<std::uint64_t>(cfg.get_int("nu_n", 20000)))
                 .nu_edge_summary.mean;
  }
  ConditionVResult r = check_condition_V(p, sizes, K, nu_hat);
  ExperimentOutput out;
  out.report["experiment"] = "condition-V";
  out.report["K"] = K;
  out.report["nu_used"] = r.nu_used;
  out.report["sizes"] = sizes;
  out.report["medians"] = r.medians;
  out.report["not_thin"] = r.not_thin;
  for (std::size_t i = 0; i < sizes.size(); ++i)
    out.csv["sup_discrepancy_n" + std::to_string(sizes[i]) + ".csv"] =
        csv_of_vector("replica,sup_discrepancy", r.sup_discrepancy[i]);
  return out;
}

ExperimentOutput run_condition_G(const RunConfig& cfg) {
  McParams p = common_params(cfg);
  std::vector<std::int64_t> sizes_i = cfg.get_int_list("sizes", {8000, 32000});
  std::vector<std::uint64_t> sizes(sizes_i.begin(), sizes_i.end());
  std::uint32_t K = static_cast<std::uint32_t>(cfg.get_int("K", 3));
  double sigma_G = cfg.get_double("sigma_G", 0.0);
  if (sigma_G <= 0.0) {
    McParams pr = p;
    pr.replicas = static_cast<std::uint64_t>(cfg.get_int("rho_replicas", 200));
    sigma_G = estimate_rho_constants(pr, static_cast<std::uint32_t>(cfg.get_int("W", 600)),
                                     static_cast<std::uint32_t>(cfg.get_int("bush_depth_cap", 128)))
                  .rho2;
  }
  std::uint32_t mesh = static_cast<std::uint32_t>(cfg.get_int("mesh", 4096));
  std::uint32_t perms = static_cast<std::uint32_t>(cfg.get_int("ks_permutations", 500));
  ConditionGResult r = check_condition_G(p, sizes, K, sigma_G, mesh, perms);
  ExperimentOutput out;
  out.report["experiment"] = "condition-G";
  out.report["K"] = K;
  out.report["sigma_G"] = sigma_G;
  out.report["sigma_d"] = r.sigma_d;
  out.report["sigma_phi"] = r.sigma_phi;
  out.report["sizes"] = sizes;
  out.report["ks_dist"] = r.ks_dist;
  out.report["ks_dist_p"] = r.ks_dist_p;
  out.report["ks_pos"] = r.ks_pos;
  out.report["ks_pos_p"] = r.ks_pos_p;
  out.report["shape_tv"] = r.shape_tv;
  out.report["not_thin"] = r.not_thin;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    out.csv["dist_disc_n" + std::to_string(sizes[i]) + ".csv"] =
        csv_of_vector("replica,value", r.dist_disc[i]);
    out.csv["pos_disc_n" + std::to_string(sizes[i]) + ".csv"] =
        csv_of_vector("replica,value", r.pos_disc[i]);
  }
  out.csv["dist_cont.csv"] = csv_of_vector("replica,value", r.dist_cont);
  out.csv["pos_cont.csv"] = csv_of_vector("replica,value", r.pos_cont);
  return out;
}

ExperimentOutput run_thinness(const RunConfig& cfg) {
  McParams p = common_params(cfg);
  std::vector<std::int64_t> sizes_i = cfg.get_int_list("sizes", {4000, 16000});
  std::vector<std::uint64_t> sizes(sizes_i.begin(), sizes_i.end());
  std::vector<std::int64_t> ks_i = cfg.get_int_list("k_grid", {5, 10, 20, 40});
  std::vector<std::uint32_t> ks(ks_i.begin(), ks_i.end());
  auto cells = check_thinness(p, sizes, ks);
  ExperimentOutput out;
  out.report["experiment"] = "thinness";
  out.report["cells"] = ordered_json::array();
  std::ostringstream ss;
  ss.precision(17);
  ss << "n,K,p_thin,ci_low,ci_high,median_delta_zd,median_delta_intrinsic\n";
  for (const auto& c : cells) {
    ordered_json j;
    j["n"] = c.n;
    j["K"] = c.K;
    j["p_thin"] = c.p_thin;
    j["ci"] = {c.ci_low, c.ci_high};
    j["median_delta_zd"] = c.median_delta_zd;
    j["median_delta_intrinsic"] = c.median_delta_intrinsic;
    j["thin_count"] = c.thin_count;
    j["total"] = c.total;
    out.report["cells"].push_back(j);
    ss << c.n << "," << c.K << "," << c.p_thin << "," << c.ci_low << "," << c.ci_high << ","
       << c.median_delta_zd << "," << c.median_delta_intrinsic << "\n";
  }
  out.csv["thinness.csv"] = ss.str();
  return out;
}

ExperimentOutput run_intersection(const RunConfig& cfg) {
  McParams p = common_params(cfg);
  std::vector<std::int64_t> grid_i = cfg.get_int_list("r_grid", {2, 4, 8, 16});
  std::vector<std::uint32_t> grid(grid_i.begin(), grid_i.end());
  std::uint32_t cap = static_cast<std::uint32_t>(cfg.get_int("bush_depth_cap", 64));
  bool sens = cfg.get_int("sensitivity", 1) != 0;
  IntersectionResult r = estimate_intersection_decay(p, grid, cap, sens);
  ExperimentOutput out;
  out.report["experiment"] = "intersection-decay";
  out.report["slope"] = r.slope;
  out.report["truncation"] = {{"bush_depth_cap", cap}};
  std::ostringstream ss;
  ss.precision(17);
  ss << "R,q,stderr" << (sens ? ",q_half_cap" : "") << "\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ss << grid[i] << "," << r.q_hat[i] << "," << r.q_stderr[i];
    if (sens) ss << "," << r.q_hat_half_cap[i];
    ss << "\n";
  }
  out.csv["intersection.csv"] = ss.str();
  return out;
}

ExperimentOutput run_walk_exponents(const RunConfig& cfg) {
  McParams p = common_params(cfg);
  std::uint64_t n = static_cast<std::uint64_t>(cfg.get_int("n", 100000));
  std::uint64_t graphs = static_cast<std::uint64_t>(cfg.get_int("graphs", 100));
  std::uint64_t walks = static_cast<std::uint64_t>(cfg.get_int("walks_per_graph", 1000));
  std::uint64_t steps = static_cast<std::uint64_t>(cfg.get_int("steps", 10000));
  WalkExponentsResult r = walk_exponents(p, n, graphs, walks, steps,
                                         static_cast<std::uint64_t>(cfg.get_int("return_fit_min", 128)),
                                         static_cast<std::uint64_t>(cfg.get_int("disp_fit_min", 256)));
  ExperimentOutput out;
  out.report["experiment"] = "walk-exponents";
  out.report["n"] = n;
  out.report["graphs"] = graphs;
  out.report["walks_per_graph"] = walks;
  out.report["return_slope"] = r.return_slope;
  out.report["return_slope_stderr"] = r.return_slope_stderr;
  out.report["displacement_slope"] = r.displacement_slope;
  out.report["displacement_slope_stderr"] = r.displacement_slope_stderr;
  std::ostringstream ss;
  ss.precision(17);
  ss << "m,return_prob,return_se,displacement,displacement_se\n";
  for (std::size_t i = 0; i < r.m_grid.size(); ++i)
    ss << r.m_grid[i] << "," << r.return_prob[i] << "," << r.return_se[i] << ","
       << r.displacement[i] << "," << r.displacement_se[i] << "\n";
  out.csv["profiles.csv"] = ss.str();
  return out;
}

}  // namespace

const std::map<std::string, ExperimentFn>& experiment_registry() {
  static const std::map<std::string, ExperimentFn> registry = {
      {"estimate-rho", run_estimate_rho},
      {"pivotal", run_pivotal},
      {"estimate-nu", run_estimate_nu},
      {"condition-R", run_condition_R},
      {"condition-V", run_condition_V},
      {"condition-G", run_condition_G},
      {"thinness", run_thinness},
      {"intersection-decay", run_intersection},
      {"walk-exponents", run_walk_exponents},
  };
  return registry;
}

int run_and_write(const std::string& name, const RunConfig& cfg, const std::string& out_dir) {
  auto it = experiment_registry().find(name);
  if (it == experiment_registry().end()) throw ConfigError("unknown experiment: " + name);
  auto t0 = std::chrono::steady_clock::now();
  ExperimentOutput out = it->second(cfg);
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  fs::path dir = fs::path(out_dir) / name;
  fs::create_directories(dir);
  // config echo inside the report keeps reruns self-describing
  out.report["config"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : cfg.values()) out.report["config"][k] = v;
  std::string report_text = out.report.dump(2) + "\n";
  {
    std::ofstream f(dir / "report.json", std::ios::binary);
    f << report_text;
  }
  nlohmann::ordered_json manifest;
  manifest["experiment"] = name;
  manifest["config_hash"] = fnv1a64(cfg.canonical_text());
  manifest["seed"] = cfg.get_int("seed", 1);
  manifest["version"] = "brwlab 1.0";
  manifest["wall_time_seconds"] = wall;
  manifest["files"] = nlohmann::ordered_json::array();
  auto add_file = [&](const std::string& fname, const std::string& content) {
    nlohmann::ordered_json e;
    e["name"] = fname;
    e["checksum_fnv1a64"] = fnv1a64(content);
    manifest["files"].push_back(e);
  };
  add_file("report.json", report_text);
  for (const auto& [fname, content] : out.csv) {
    std::ofstream f(dir / fname, std::ios::binary);
    f << content;
    add_file(fname, content);
  }
  manifest["failed_replicas"] = nlohmann::ordered_json::array();
  for (const auto& f : out.failures) {
    nlohmann::ordered_json e;
    e["replica"] = f.replica;
    e["message"] = f.message;
    manifest["failed_replicas"].push_back(e);
  }
  {
    std::ofstream f(dir / "manifest.json", std::ios::binary);
    f << manifest.dump(2) << "\n";
  }
  return out.failures.empty() ? 0 : 3;
}

void write_report_summary(const std::string& results_dir, std::ostream& os) {
  namespace fs = std::filesystem;
  bool found = false;
  for (const auto& entry : fs::directory_iterator(results_dir)) {
    if (!entry.is_directory()) continue;
    fs::path manifest_path = entry.path() / "manifest.json";
    fs::path report_path = entry.path() / "report.json";
    if (!fs::exists(manifest_path) || !fs::exists(report_path)) continue;
    found = true;
    std::ifstream rf(report_path);
    nlohmann::json report = nlohmann::json::parse(rf);
    os << "== " << report.value("experiment", entry.path().filename().string()) << " ==\n";
    if (report.contains("estimates")) {
      for (const auto& e : report["estimates"]) {
        os << "  " << e.value("name", "?") << " = " << e.value("value", 0.0) << "  ci=["
           << e["ci"][0].get<double>() << ", " << e["ci"][1].get<double>() << "]\n";
      }
    }
    for (const char* key : {"return_slope", "displacement_slope", "gap_tail_slope", "nu_used"}) {
      if (report.contains(key)) os << "  " << key << " = " << report[key].get<double>() << "\n";
    }
    if (report.contains("shape_tv")) os << "  shape_tv = " << report["shape_tv"].dump() << "\n";
    if (report.contains("ks_dist")) os << "  ks_dist = " << report["ks_dist"].dump() << "\n";
    if (report.contains("medians")) os << "  medians = " << report["medians"].dump() << "\n";
    // plot-ready (x, y, yerr) extraction from the CSV tables
    for (const auto& fentry : fs::directory_iterator(entry.path())) {
      if (fentry.path().extension() != ".csv") continue;
      std::ifstream cf(fentry.path());
      std::string header;
      std::getline(cf, header);
      // column contract: first column x, second y, third (optional) yerr
      std::ofstream pf(fentry.path().string() + ".plot");
      pf << "# x y yerr (from " << fentry.path().filename().string() << ")\n";
      std::string line;
      while (std::getline(cf, line)) {
        std::stringstream ls(line);
        std::string x, y, yerr;
        std::getline(ls, x, ',');
        std::getline(ls, y, ',');
        std::getline(ls, yerr, ',');
        pf << x << " " << y << " " << (yerr.empty() ? "0" : yerr) << "\n";
      }
    }
  }
  if (!found) throw MissingManifest("no manifest.json found under " + results_dir);
}

}  // namespace brw
