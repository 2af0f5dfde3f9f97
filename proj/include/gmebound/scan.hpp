#pragma once

#include "gmebound/families.hpp"
#include "gmebound/gme.hpp"
#include "gmebound/prodrad.hpp"

#include "json.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace gmebound::scan {

struct Sweep {
  std::string param;
  double min = 0.0;
  double max = 0.0;
  int steps = 2;

  double at(int i) const { return steps == 1 ? min : min + (max - min) * i / (steps - 1.0); }
};

struct OrderingJob {
  int d = 3;
  std::vector<double> p_ref;
  gme::OrderingGrid grid;
};

/// A family template with one or two swept parameters (the last sweep varies
/// fastest), or an ordering-region job.
struct ScanJob {
  families::FamilySpec family;
  std::vector<Sweep> sweeps;
  std::vector<std::string> columns;
  int m = 2;
  prodrad::SeeSawConfig seesaw;
  std::optional<OrderingJob> ordering;
};

/// Columns a family scan can emit, besides the swept parameter names and
/// "t_<name>" reference thresholds.
const std::vector<std::string>& known_columns();
std::vector<std::string> default_columns(const ScanJob& job);

ScanJob parse_job(const nlohmann::json& j);
ScanJob read_job_file(const std::string& path);

/// Checks the job; throws StateError on invalid sweeps or columns.
void validate(const ScanJob& job);

/// Writes the CSV (header row first). Rows follow grid order regardless of
/// worker count.
void run(const ScanJob& job, std::ostream& out);

inline const char* kOrderingHeader = "pprime,Lambda,R,lower,E_ref,dominates";

}  // namespace gmebound::scan
