#include "gmebound/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace gmebound::io {

namespace {

json real_matrix(const RMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

RMatrix read_real_matrix(const json& j, Eigen::Index rows, Eigen::Index cols, const char* what) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) {
    throw StateError(std::string(what) + " has the wrong number of rows");
  }
  RMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw StateError(std::string(what) + " has the wrong number of columns");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = row[static_cast<std::size_t>(c)].get<double>();
  }
  return m;
}

json real_vector(const RVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

RVector read_real_vector(const json& j, Eigen::Index n, const char* what) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n) {
    throw StateError(std::string(what) + " has the wrong length");
  }
  RVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = j[static_cast<std::size_t>(i)].get<double>();
  return v;
}

}  // namespace

json state_to_json(const DensityMatrix& rho) {
  return json{{"dims", rho.dims().dims()},
              {"re", real_matrix(rho.matrix().real())},
              {"im", real_matrix(rho.matrix().imag())}};
}

DensityMatrix state_from_json(const json& j) {
  try {
    MultipartiteDims dims(j.at("dims").get<std::vector<int>>());
    const Eigen::Index n = dims.total();
    const RMatrix re = read_real_matrix(j.at("re"), n, n, "re");
    const RMatrix im = j.contains("im") ? read_real_matrix(j.at("im"), n, n, "im") : RMatrix::Zero(n, n);
    CMatrix m(n, n);
    m.real() = re;
    m.imag() = im;
    return DensityMatrix(std::move(m), std::move(dims));
  } catch (const json::exception& e) {
    throw StateError(std::string("malformed state JSON: ") + e.what());
  }
}

DensityMatrix read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StateError("cannot open state file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw StateError("cannot parse '" + path + "': " + e.what());
  }
  return state_from_json(j);
}

void write_state_file(const DensityMatrix& rho, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw StateError("cannot write '" + path + "'");
  out << state_to_json(rho).dump(1) << '\n';
}

json bloch_to_json(const bloch::BlochForm& bf) {
  return json{{"M", bf.M}, {"N", bf.N}, {"q", real_vector(bf.q)}, {"p", real_vector(bf.p)}, {"B", real_matrix(bf.B)}};
}

bloch::BlochForm bloch_from_json(const json& j) {
  try {
    bloch::BlochForm bf;
    bf.M = j.at("M").get<int>();
    bf.N = j.at("N").get<int>();
    if (bf.M < 2 || bf.N < 2) throw StateError("Bloch form needs M, N >= 2");
    bf.q = read_real_vector(j.at("q"), bf.M * bf.M - 1, "q");
    bf.p = read_real_vector(j.at("p"), bf.N * bf.N - 1, "p");
    bf.B = read_real_matrix(j.at("B"), bf.M * bf.M - 1, bf.N * bf.N - 1, "B");
    bf.basisA = bloch::basis(bf.M);
    bf.basisB = bloch::basis(bf.N);
    return bf;
  } catch (const json::exception& e) {
    throw StateError(std::string("malformed Bloch JSON: ") + e.what());
  }
}

json tomo_to_json(const bloch::TomoParams& tp) {
  json out = json::object();
  for (const auto& [name, value] : tp.measured()) out[std::string(name)] = value;
  return out;
}

bloch::TomoParams tomo_from_json(const json& j) {
  try {
    bloch::TomoParams tp;
    tp.T = {j.at("T1").get<double>(), j.at("T2").get<double>(), j.at("T3").get<double>()};
    tp.G = {j.at("G1").get<double>(), j.at("G2").get<double>()};
    tp.Pp = {j.at("P1p").get<double>(), j.at("P2p").get<double>()};
    tp.Pm = {j.at("P1m").get<double>(), j.at("P2m").get<double>()};
    tp.F12 = j.at("F12").get<double>();
    tp.reconstructed = bloch::tomo_reconstruct(tp);
    return tp;
  } catch (const json::exception& e) {
    throw StateError(std::string("malformed tomography JSON: ") + e.what());
  }
}

json reconstruction_to_json(const bloch::TomoReconstruction& r) {
  return json{{"normP2", r.normP2}, {"normQ2", r.normQ2}, {"normQ2_k2", r.normQ2_k2},
              {"C11", r.C11},       {"C22", r.C22},       {"C12", r.C12}};
}

json report_to_json(const gme::BoundReport& r) {
  json out{{"m", r.m},
           {"L", r.L},
           {"purity", r.purity},
           {"R", r.R},
           {"lower", r.lower},
           {"upper", r.upper},
           {"purity_test", r.purity_test},
           {"marginal_purities", r.marginal_purities},
           {"converged", r.converged},
           {"partition", r.partition}};
  switch (r.criterion_13) {
    case gme::Verdict::kEntangled:
      out["criterion_13"] = true;
      break;
    case gme::Verdict::kNotDetected:
      out["criterion_13"] = false;
      break;
    case gme::Verdict::kInconclusive:
      out["criterion_13"] = "inconclusive";
      break;
  }
  if (r.ppt) {
    out["ppt"] = *r.ppt;
    out["ppt_min_eigenvalue"] = *r.ppt_min_eigenvalue;
  } else {
    out["ppt"] = nullptr;
  }
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace gmebound::io
