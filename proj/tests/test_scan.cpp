#include "doctest.h"

#include "gmebound/families.hpp"
#include "gmebound/io.hpp"
#include "gmebound/scan.hpp"

#include <cmath>
#include <sstream>

using namespace gmebound;
using nlohmann::json;

namespace {

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t col(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    FAIL("missing column " << name);
    return 0;
  }
  double num(std::size_t row, const std::string& name) const { return std::stod(rows[row][col(name)]); }
  const std::string& str(std::size_t row, const std::string& name) const { return rows[row][col(name)]; }
};

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::size_t pos = 0;
  bool first = true;
  while (pos < text.size()) {
    const auto end = text.find("\r\n", pos);
    REQUIRE(end != std::string::npos);
    const auto cells = split_cells(text.substr(pos, end - pos));
    if (first) {
      csv.header = cells;
      first = false;
    } else {
      csv.rows.push_back(cells);
    }
    pos = end + 2;
  }
  return csv;
}

std::string run_job(const json& j) {
  std::ostringstream out;
  scan::run(scan::parse_job(j), out);
  return out.str();
}

}  // namespace

TEST_CASE("one-point grid gives a single row") {
  const auto text = run_job({{"family", "boundent:alpha=3.5"},
                             {"sweep", {{{"param", "alpha"}, {"min", 3.5}, {"max", 3.5}, {"steps", 1}}}},
                             {"columns", {"alpha", "L", "purity", "criterion_13", "ppt"}}});
  const auto csv = parse_csv(text);
  CHECK(csv.header == std::vector<std::string>{"alpha", "L", "purity", "criterion_13", "ppt"});
  REQUIRE(csv.rows.size() == 1);
  CHECK(csv.num(0, "alpha") == 3.5);
  CHECK(csv.num(0, "L") == doctest::Approx(11.0 / 63.0).epsilon(1e-9));
  CHECK(csv.str(0, "criterion_13") == "true");
  CHECK(csv.str(0, "ppt") == "true");
}

TEST_CASE("default columns and grid order") {
  const json j = {{"family", "gwerner:d=2,p=0,lambda=0.5"},
                  {"sweep",
                   {{{"param", "p"}, {"min", 0.0}, {"max", 1.0}, {"steps", 3}},
                    {{"param", "lambda"}, {"min", 0.1}, {"max", 0.5}, {"steps", 2}}}},
                  {"restarts", 8}};
  const auto csv = parse_csv(run_job(j));
  CHECK(csv.header == std::vector<std::string>{"p", "lambda", "L", "purity", "R", "lower", "upper", "criterion_13"});
  REQUIRE(csv.rows.size() == 6);
  CHECK(csv.num(0, "p") == 0.0);
  CHECK(csv.num(0, "lambda") == 0.1);
  CHECK(csv.num(1, "lambda") == 0.5);
  CHECK(csv.num(2, "p") == 0.5);
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const double p = csv.num(r, "p");
    const double lam = csv.num(r, "lambda");
    CHECK(csv.num(r, "L") == doctest::Approx(p / 4 + (1 - p) * std::max(lam, 1 - lam)).epsilon(1e-9));
  }
}

TEST_CASE("output is byte-identical across runs") {
  const json j = {{"family", "ghz:K=3,p=0.2"},
                  {"sweep", {{{"param", "p"}, {"min", 0.2}, {"max", 0.8}, {"steps", 4}}}},
                  {"columns", {"p", "L", "R", "partition", "converged"}},
                  {"restarts", 10},
                  {"seed", 99}};
  CHECK(run_job(j) == run_job(j));
}

TEST_CASE("rows recompute from their inputs") {
  const json j = {{"family", "boundent:alpha=2"},
                  {"sweep", {{{"param", "alpha"}, {"min", 2.0}, {"max", 5.0}, {"steps", 4}}}},
                  {"columns", {"alpha", "purity", "purity_ref", "L_ref", "t_alpha_det"}}};
  const auto csv = parse_csv(run_job(j));
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const families::BoundEntangled s{csv.num(r, "alpha")};
    const auto ref = families::reference_values(s);
    CHECK(csv.num(r, "purity") == purity(families::build(s)));
    CHECK(csv.num(r, "purity_ref") == *ref.purity);
    CHECK(csv.num(r, "L_ref") == *ref.L);
    CHECK(csv.num(r, "t_alpha_det") == ref.thresholds.at("alpha_det"));
  }
}

TEST_CASE("Werner polar scan boundaries") {
  const int steps = 121;
  const json j = {{"family", "gwerner:d=2,p=0,lambda=0.5"},
                  {"sweep",
                   {{{"param", "lambda"}, {"min", 0.3}, {"max", 0.3}, {"steps", 1}},
                    {{"param", "p"}, {"min", 0.0}, {"max", 1.0}, {"steps", steps}}}},
                  {"columns", {"lambda", "p", "r", "theta", "criterion_bloch", "ppt", "t_ppt_separable", "t_criterion"}}};
  const auto csv = parse_csv(run_job(j));
  const double step = 1.0 / (steps - 1);
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const double p = csv.num(r, "p");
    CHECK(csv.num(r, "r") == doctest::Approx(1.0 - p));
    CHECK(csv.num(r, "theta") == doctest::Approx(2.0 * std::acos(std::sqrt(0.3))));
    const double t_ppt = csv.num(r, "t_ppt_separable");
    const double t_crit = csv.num(r, "t_criterion");
    if (std::abs(p - t_ppt) > step) CHECK((csv.str(r, "ppt") == "true") == (p > t_ppt));
    if (std::abs(p - t_crit) > step) CHECK((csv.str(r, "criterion_bloch") == "true") == (p < t_crit));
  }
}

TEST_CASE("bound-entangled lower bound switches on at the detection edge") {
  const json j = {{"family", "boundent:alpha=2"},
                  {"sweep", {{{"param", "alpha"}, {"min", 2.0}, {"max", 5.0}, {"steps", 61}}}},
                  {"columns", {"alpha", "lower", "R"}}};
  const auto csv = parse_csv(run_job(j));
  REQUIRE(csv.rows.size() == 61);
  const double a_det = families::threshold::bound_entangled_detection();
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const double a = csv.num(r, "alpha");
    if (std::abs(a - a_det) <= 0.05) continue;
    CHECK((csv.num(r, "lower") > 0.0) == (a > a_det));
  }
}

TEST_CASE("ordering job") {
  const json j = {{"ordering", {{"d", 3}, {"p_ref", {0.5, 0.7}}, {"pprime_steps", 3}, {"Lambda_steps", 2}}}};
  const auto text = run_job(j);
  const auto csv = parse_csv(text);
  CHECK(text.rfind(std::string(scan::kOrderingHeader) + "\r\n", 0) == 0);
  CHECK(csv.rows.size() == 12);
  CHECK(csv.num(0, "Lambda") == doctest::Approx(1.0 / 3.0));
  CHECK(csv.num(1, "Lambda") == 1.0);
  CHECK(csv.num(6, "E_ref") == doctest::Approx(gme::exact_E_isotropic(3, 0.7)));
}

TEST_CASE("invalid jobs") {
  auto bad = [](const json& j) { CHECK_THROWS_AS(scan::parse_job(j), StateError); };
  bad({{"family", "boundent:alpha=3"}, {"sweep", json::array()}});
  bad({{"family", "boundent:alpha=3"}, {"sweep", {{{"param", "p"}, {"min", 0}, {"max", 1}, {"steps", 3}}}}});
  bad({{"family", "boundent:alpha=3"}, {"sweep", {{{"param", "alpha"}, {"min", 1}, {"max", 3}, {"steps", 3}}}}});
  bad({{"family", "boundent:alpha=3"}, {"sweep", {{{"param", "alpha"}, {"min", 2}, {"max", 3}, {"steps", 1}}}}});
  bad({{"family", "boundent:alpha=3"},
       {"sweep", {{{"param", "alpha"}, {"min", 2}, {"max", 3}, {"steps", 3}}}},
       {"columns", {"nonsense"}}});
  bad({{"family", "boundent:alpha=3"}});
  bad({{"ordering", {{"d", 3}, {"p_ref", 0.8}}}});
}

TEST_CASE("state JSON round trip") {
  const auto rho = families::build(families::parse("gwerner:d=3,p=0.2,lambda=0.5/0.3/0.2"));
  const auto back = io::state_from_json(json::parse(io::state_to_json(rho).dump()));
  CHECK(back.matrix() == rho.matrix());
  CHECK(back.dims().dims() == rho.dims().dims());
  CHECK_THROWS_AS(io::state_from_json(json{{"dims", {2, 2}}, {"re", {{1, 0}, {0, 0}}}}), StateError);
  CHECK(io::format_double(0.1) == "0.1");
  CHECK(std::stod(io::format_double(1.0 / 3.0)) == 1.0 / 3.0);
}
