// Command-line front end: bound reports, parameter scans, and the two-qubit
// ten-parameter scheme.

#include "gmebound/bloch.hpp"
#include "gmebound/families.hpp"
#include "gmebound/gme.hpp"
#include "gmebound/io.hpp"
#include "gmebound/scan.hpp"
#include "gmebound/tomo.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace gmebound;

constexpr int kExitError = 1;
constexpr int kExitEntangled = 2;
constexpr int kExitInconclusive = 3;

bool looks_like_family(const std::string& s) {
  for (const char* prefix : {"gwerner", "owerner", "boundent", "ghz"}) {
    const std::string p(prefix);
    if (s == p || s.rfind(p + ":", 0) == 0) return true;
  }
  return false;
}

DensityMatrix load_input(const std::string& input) {
  if (looks_like_family(input)) return families::build(families::parse(input));
  return io::read_state_file(input);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw StateError("cannot write '" + out_path + "'");
  out << text;
}

struct SeeSawFlags {
  int m = 2;
  int restarts = 0;
  std::uint64_t seed = prodrad::SeeSawConfig{}.seed;
  double tol = 1e-12;
  int max_sweeps = 500;

  void attach(CLI::App* cmd) {
    cmd->add_option("-m,--m", m, "Separability level m (number of blocks)");
    cmd->add_option("--restarts", restarts, "See-saw restarts (0: 40 + 10 * dim)");
    cmd->add_option("--seed", seed, "Random seed");
    cmd->add_option("--tol", tol, "Per-sweep improvement below which a restart stops");
    cmd->add_option("--max-sweeps", max_sweeps, "Sweep cap per restart");
  }

  prodrad::SeeSawConfig config() const {
    prodrad::SeeSawConfig cfg;
    cfg.restarts = restarts;
    cfg.seed = seed;
    cfg.tol = tol;
    cfg.max_sweeps = max_sweeps;
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lower and upper bounds on the geometric measure of entanglement"};
  app.require_subcommand(1);

  std::string input;
  std::string out_path;

  SeeSawFlags report_flags;
  auto* report = app.add_subcommand("report", "Bound report for a state file or family spec (JSON)");
  report->add_option("input", input, "State JSON file or family spec, e.g. boundent:alpha=3.5")->required();
  report_flags.attach(report);

  SeeSawFlags scan_flags;
  std::string job_path, columns;
  auto* scan_cmd = app.add_subcommand("scan", "Parameter scan from a job file (CSV)");
  scan_cmd->add_option("job", job_path, "Scan job JSON")->required();
  scan_cmd->add_option("--out", out_path, "Output file (default: stdout)");
  scan_cmd->add_option("--columns", columns, "Comma-separated column list");
  auto* scan_m = scan_cmd->add_option("-m,--m", scan_flags.m, "Separability level m");
  auto* scan_restarts = scan_cmd->add_option("--restarts", scan_flags.restarts, "See-saw restarts");
  auto* scan_seed = scan_cmd->add_option("--seed", scan_flags.seed, "Random seed");
  auto* scan_tol = scan_cmd->add_option("--tol", scan_flags.tol, "See-saw tolerance");

  auto* tomo = app.add_subcommand("tomo", "Ten-parameter two-qubit scheme and its verdict (JSON)");
  tomo->add_option("input", input, "Two-qubit state file or family spec")->required();

  auto* bloch_cmd = app.add_subcommand("bloch", "Bloch form, closed-form bound and criterion (JSON)");
  bloch_cmd->add_option("input", input, "Bipartite state file or family spec")->required();

  auto* state_cmd = app.add_subcommand("state", "Write a family member as a state file (JSON)");
  state_cmd->add_option("spec", input, "Family spec")->required();
  state_cmd->add_option("--out", out_path, "Output file (default: stdout)");

  std::string keep;
  auto* reduce = app.add_subcommand("reduce", "Partial trace onto the listed parties (JSON)");
  reduce->add_option("input", input, "State file or family spec")->required();
  reduce->add_option("--keep", keep, "Comma-separated 1-based party indices to keep")->required();
  reduce->add_option("--out", out_path, "Output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*report) {
      const auto rho = load_input(input);
      const auto r = gme::bound_report(rho, report_flags.m, report_flags.config());
      std::cout << io::report_to_json(r).dump(2) << '\n';
      if (r.criterion_13 == gme::Verdict::kEntangled) return kExitEntangled;
      if (r.criterion_13 == gme::Verdict::kInconclusive) return kExitInconclusive;
      return 0;
    }
    if (*scan_cmd) {
      auto job = scan::read_job_file(job_path);
      if (!columns.empty()) job.columns = split_list(columns);
      if (*scan_m) job.m = scan_flags.m;
      if (*scan_restarts) job.seesaw.restarts = scan_flags.restarts;
      if (*scan_seed) job.seesaw.seed = scan_flags.seed;
      if (*scan_tol) job.seesaw.tol = scan_flags.tol;
      std::ostringstream csv;
      scan::run(job, csv);
      emit(csv.str(), out_path);
      return 0;
    }
    if (*tomo) {
      const auto rho = load_input(input);
      const auto tp = bloch::tomo_simulate(rho);
      const auto v = bloch::tomo_verdict(tp);
      const io::json out{{"params", io::tomo_to_json(tp)},
                         {"reconstructed", io::reconstruction_to_json(tp.reconstructed)},
                         {"g", v.g},
                         {"lhs", v.lhs},
                         {"entangled", v.entangled}};
      std::cout << out.dump(2) << '\n';
      return 0;
    }
    if (*bloch_cmd) {
      const auto rho = load_input(input);
      const auto bf = bloch::bloch_decompose(rho);
      const auto c = bloch::criterion_bloch(bf);
      io::json out = io::bloch_to_json(bf);
      out["upper_bound_L"] = bloch::upper_bound_L(bf);
      out["purity"] = bloch::purity_bloch(bf);
      out["criterion_lhs"] = c.lhs;
      out["entangled"] = c.entangled;
      std::cout << out.dump(2) << '\n';
      return 0;
    }
    if (*state_cmd) {
      const auto rho = families::build(families::parse(input));
      emit(io::state_to_json(rho).dump(1) + "\n", out_path);
      return 0;
    }
    if (*reduce) {
      const auto rho = load_input(input);
      std::vector<int> parties;
      for (const auto& s : split_list(keep)) parties.push_back(std::stoi(s) - 1);
      emit(io::state_to_json(partial_trace(rho, parties)).dump(1) + "\n", out_path);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return 0;
}
