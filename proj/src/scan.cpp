#include "gmebound/scan.hpp"

#include "gmebound/bloch.hpp"
#include "gmebound/io.hpp"
#include "gmebound/parallel.hpp"
#include "gmebound/tomo.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace gmebound::scan {

namespace {

using nlohmann::json;

const std::set<std::string> kSeesawColumns = {"L", "R", "lower", "upper", "criterion_13", "converged", "partition"};
const std::set<std::string> kParamNames = {"p", "d", "lambda", "Lambda", "alpha", "K"};

std::string fmt_bool(bool b) { return b ? "true" : "false"; }

bool is_two_qubit(const DensityMatrix& rho) { return rho.dims().dims() == std::vector<int>{2, 2}; }

// One CSV row; values are produced only for the requested columns.
std::vector<std::string> compute_row(const ScanJob& job, const families::FamilySpec& spec,
                                     const prodrad::SeeSawConfig& cfg) {
  const auto& cols = job.columns;
  auto wants = [&](std::initializer_list<const char*> names) {
    return std::any_of(cols.begin(), cols.end(), [&](const std::string& c) {
      return std::any_of(names.begin(), names.end(), [&](const char* n) { return c == n; });
    });
  };

  const DensityMatrix rho = families::build(spec);
  const bool bipartite = rho.dims().parties() == 2;
  std::map<std::string, std::string> v;

  if (std::any_of(cols.begin(), cols.end(), [](const std::string& c) { return kSeesawColumns.count(c) > 0; })) {
    const auto r = gme::bound_report(rho, job.m, cfg);
    v["L"] = io::format_double(r.L);
    v["R"] = io::format_double(r.R);
    v["lower"] = io::format_double(r.lower);
    v["upper"] = io::format_double(r.upper);
    v["criterion_13"] = gme::to_string(r.criterion_13);
    v["converged"] = fmt_bool(r.converged);
    v["partition"] = r.partition;
  }
  const double pur = purity(rho);
  v["purity"] = io::format_double(pur);

  if (wants({"purity_test"})) {
    bool detected = false;
    for (int party = 0; party < rho.dims().parties(); ++party) {
      if (purity(partial_trace(rho, {party})) < pur - 1e-12) detected = true;
    }
    v["purity_test"] = fmt_bool(detected);
  }
  if (wants({"ppt", "ppt_min_eig"})) {
    if (bipartite) {
      const double ev = min_hermitian_eigenvalue(partial_transpose(rho, 1));
      v["ppt"] = fmt_bool(ev >= -tol::kPsd);
      v["ppt_min_eig"] = io::format_double(ev);
    }
  }
  if (wants({"L_bloch_bound", "criterion_bloch", "bloch_lhs"}) && bipartite) {
    const auto bf = bloch::bloch_decompose(rho);
    const auto c = bloch::criterion_bloch(bf);
    v["L_bloch_bound"] = io::format_double(bloch::upper_bound_L(bf));
    v["criterion_bloch"] = fmt_bool(c.entangled);
    v["bloch_lhs"] = io::format_double(c.lhs);
  }
  if (wants({"restricted_g", "g"}) && is_two_qubit(rho)) {
    const auto tv = bloch::tomo_verdict(bloch::tomo_simulate(rho));
    v["restricted_g"] = fmt_bool(tv.entangled);
    v["g"] = io::format_double(tv.g);
  }
  if (wants({"r", "theta"}) && std::holds_alternative<families::GeneralizedWerner>(spec)) {
    const auto& gw = std::get<families::GeneralizedWerner>(spec);
    if (gw.d == 2) {
      const double lam = gw.lambda.empty() ? 0.5 : gw.lambda[0];
      v["r"] = io::format_double(1.0 - gw.p);
      v["theta"] = io::format_double(2.0 * std::acos(std::sqrt(std::clamp(lam, 0.0, 1.0))));
    }
  }
  if (wants({"L_ref", "purity_ref", "E_exact"}) ||
      std::any_of(cols.begin(), cols.end(), [](const std::string& c) { return c.rfind("t_", 0) == 0; })) {
    const auto ref = families::reference_values(spec);
    if (ref.L) v["L_ref"] = io::format_double(*ref.L);
    if (ref.purity) v["purity_ref"] = io::format_double(*ref.purity);
    if (ref.E_exact) v["E_exact"] = io::format_double(*ref.E_exact);
    for (const auto& [name, value] : ref.thresholds) v["t_" + name] = io::format_double(value);
  }
  for (const auto& c : cols) {
    if (kParamNames.count(c) && !v.count(c)) {
      try {
        v[c] = io::format_double(families::get_parameter(spec, c));
      } catch (const StateError&) {
      }
    }
  }

  std::vector<std::string> row;
  row.reserve(cols.size());
  for (const auto& c : cols) {
    auto it = v.find(c);
    row.push_back(it == v.end() ? std::string() : it->second);
  }
  return row;
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << "\r\n";
}

void run_ordering(const OrderingJob& job, std::ostream& out) {
  out << kOrderingHeader << "\r\n";
  for (double p_ref : job.p_ref) {
    for (const auto& pt : gme::ordering_region(job.d, p_ref, job.grid)) {
      write_row(out, {io::format_double(pt.pprime), io::format_double(pt.Lambda), io::format_double(pt.R),
                      io::format_double(pt.lower), io::format_double(pt.E_ref), fmt_bool(pt.dominates)});
    }
  }
}

}  // namespace

const std::vector<std::string>& known_columns() {
  static const std::vector<std::string> cols = {
      "L",          "purity",          "R",         "lower",        "upper",         "criterion_13", "converged",
      "partition",  "purity_test",     "ppt",       "ppt_min_eig",  "L_bloch_bound", "criterion_bloch",
      "bloch_lhs",  "restricted_g",    "g",         "r",            "theta",         "L_ref",
      "purity_ref", "E_exact"};
  return cols;
}

std::vector<std::string> default_columns(const ScanJob& job) {
  std::vector<std::string> cols;
  for (const auto& s : job.sweeps) cols.push_back(s.param);
  for (const char* c : {"L", "purity", "R", "lower", "upper", "criterion_13"}) cols.emplace_back(c);
  return cols;
}

void validate(const ScanJob& job) {
  if (job.ordering) {
    const auto& o = *job.ordering;
    if (o.p_ref.empty()) throw StateError("ordering job needs at least one p_ref");
    const double p_cr = o.d / (o.d + 1.0);
    for (double p : o.p_ref) {
      if (!(p >= 0.0 && p < p_cr)) throw StateError("ordering p_ref must lie in [0, d/(d+1))");
    }
    return;
  }
  if (job.sweeps.empty() || job.sweeps.size() > 2) throw StateError("scan job needs one or two sweeps");
  for (const auto& s : job.sweeps) {
    if (s.steps < 1) throw StateError("sweep '" + s.param + "' needs steps >= 1");
    if (s.steps == 1 && s.min != s.max) throw StateError("a one-point sweep needs min == max");
    families::get_parameter(job.family, s.param);
  }
  const auto& known = known_columns();
  for (const auto& c : job.columns) {
    const bool ok = std::find(known.begin(), known.end(), c) != known.end() || kParamNames.count(c) ||
                    c.rfind("t_", 0) == 0;
    if (!ok) throw StateError("unknown column '" + c + "'");
  }
  if (job.columns.empty()) throw StateError("scan job selects no columns");
  // Every grid point must be a valid family member.
  for (const auto& s : job.sweeps) {
    auto spec = job.family;
    families::set_parameter(spec, s.param, s.min);
    families::validate(spec);
    spec = job.family;
    families::set_parameter(spec, s.param, s.max);
    families::validate(spec);
  }
}

ScanJob parse_job(const json& j) {
  try {
    ScanJob job;
    if (j.contains("ordering")) {
      const auto& o = j.at("ordering");
      OrderingJob oj;
      oj.d = o.at("d").get<int>();
      if (o.at("p_ref").is_array()) {
        oj.p_ref = o.at("p_ref").get<std::vector<double>>();
      } else {
        oj.p_ref = {o.at("p_ref").get<double>()};
      }
      oj.grid.pprime_steps = o.value("pprime_steps", oj.grid.pprime_steps);
      oj.grid.Lambda_steps = o.value("Lambda_steps", oj.grid.Lambda_steps);
      oj.grid.literal = o.value("literal", false);
      job.ordering = std::move(oj);
      validate(job);
      return job;
    }
    job.family = families::parse(j.at("family").get<std::string>());
    for (const auto& s : j.at("sweep")) {
      job.sweeps.push_back(Sweep{s.at("param").get<std::string>(), s.at("min").get<double>(),
                                 s.at("max").get<double>(), s.at("steps").get<int>()});
    }
    job.m = j.value("m", 2);
    job.seesaw.restarts = j.value("restarts", 0);
    job.seesaw.seed = j.value("seed", job.seesaw.seed);
    job.seesaw.tol = j.value("tol", job.seesaw.tol);
    job.seesaw.max_sweeps = j.value("max_sweeps", job.seesaw.max_sweeps);
    if (j.contains("columns")) {
      job.columns = j.at("columns").get<std::vector<std::string>>();
    } else {
      job.columns = default_columns(job);
    }
    validate(job);
    return job;
  } catch (const json::exception& e) {
    throw StateError(std::string("malformed scan job: ") + e.what());
  }
}

ScanJob read_job_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StateError("cannot open job file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw StateError("cannot parse '" + path + "': " + e.what());
  }
  return parse_job(j);
}

void run(const ScanJob& job, std::ostream& out) {
  validate(job);
  if (job.ordering) {
    run_ordering(*job.ordering, out);
    return;
  }
  std::vector<families::FamilySpec> points;
  const Sweep& outer = job.sweeps.front();
  const Sweep* inner = job.sweeps.size() > 1 ? &job.sweeps[1] : nullptr;
  for (int i = 0; i < outer.steps; ++i) {
    const int inner_steps = inner ? inner->steps : 1;
    for (int k = 0; k < inner_steps; ++k) {
      auto spec = job.family;
      families::set_parameter(spec, outer.param, outer.at(i));
      if (inner) families::set_parameter(spec, inner->param, inner->at(k));
      points.push_back(std::move(spec));
    }
  }

  // Grid points run in parallel; restarts inside each point stay serial.
  prodrad::SeeSawConfig cfg = job.seesaw;
  cfg.threads = 1;
  std::vector<std::vector<std::string>> rows(points.size());
  parallel_for(static_cast<int>(points.size()), prodrad::env_threads(), [&](int i) {
    rows[static_cast<std::size_t>(i)] = compute_row(job, points[static_cast<std::size_t>(i)], cfg);
  });

  write_row(out, job.columns);
  for (const auto& r : rows) write_row(out, r);
}

}  // namespace gmebound::scan
