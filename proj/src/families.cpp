#include "gmebound/families.hpp"

#include "gmebound/gme.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

namespace gmebound::families {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const std::string& msg) {
  if (!ok) throw StateError(msg);
}

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

std::vector<double> uniform_lambda(int d) { return std::vector<double>(static_cast<std::size_t>(d), 1.0 / d); }

std::vector<double> lambda_from_Lambda(int d, double Lambda) {
  require(Lambda >= 1.0 / d - 1e-12 && Lambda <= 1.0, "gwerner: Lambda must lie in [1/d, 1]");
  std::vector<double> out(static_cast<std::size_t>(d), (1.0 - Lambda) / (d - 1));
  out[0] = Lambda;
  return out;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) throw StateError("not a number: '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  const double v = parse_double(s);
  if (v != std::floor(v)) throw StateError("not an integer: '" + s + "'");
  return static_cast<int>(v);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::string fmt(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

double GeneralizedWerner::Lambda() const {
  if (lambda.empty()) return 1.0 / d;
  return *std::max_element(lambda.begin(), lambda.end());
}

bool GeneralizedWerner::uniform() const {
  if (lambda.empty()) return true;
  return std::all_of(lambda.begin(), lambda.end(), [&](double x) { return std::abs(x - 1.0 / d) <= 1e-12; });
}

void validate(const FamilySpec& spec) {
  std::visit(overloaded{
                 [](const GeneralizedWerner& s) {
                   require(s.d >= 2, "gwerner: d must be >= 2");
                   require(in_unit(s.p), "gwerner: p must lie in [0, 1]");
                   require(s.lambda.empty() || static_cast<int>(s.lambda.size()) == s.d,
                           "gwerner: lambda must have d entries");
                   double sum = 0.0;
                   for (double x : s.lambda) {
                     require(x >= 0.0, "gwerner: lambda entries must be >= 0");
                     sum += x;
                   }
                   require(s.lambda.empty() || std::abs(sum - 1.0) <= 1e-12, "gwerner: lambda must sum to 1");
                 },
                 [](const OriginalWerner& s) {
                   require(s.d >= 2, "owerner: d must be >= 2");
                   require(s.alpha >= -1.0 && s.alpha <= 1.0, "owerner: alpha must lie in [-1, 1]");
                 },
                 [](const BoundEntangled& s) {
                   require(s.alpha >= 2.0 && s.alpha <= 5.0, "boundent: alpha must lie in [2, 5]");
                 },
                 [](const GhzMixture& s) {
                   require(s.K >= 2, "ghz: K must be >= 2");
                   require(in_unit(s.p), "ghz: p must lie in [0, 1]");
                 },
             },
             spec);
}

CVector psi_lambda(int d, const std::vector<double>& lambda) {
  CVector psi = CVector::Zero(d * d);
  for (int i = 0; i < d; ++i) psi(i * d + i) = std::sqrt(lambda[static_cast<std::size_t>(i)]);
  return psi;
}

CMatrix swap_operator(int d) {
  CMatrix v = CMatrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) v(j * d + i, i * d + j) = 1.0;
  }
  return v;
}

DensityMatrix build(const FamilySpec& spec) {
  validate(spec);
  return std::visit(
      overloaded{
          [](const GeneralizedWerner& s) {
            const auto lambda = s.lambda.empty() ? uniform_lambda(s.d) : s.lambda;
            const CVector psi = psi_lambda(s.d, lambda);
            const int n = s.d * s.d;
            CMatrix m = (1.0 - s.p) * psi * psi.adjoint() + s.p * CMatrix::Identity(n, n) / static_cast<double>(n);
            return DensityMatrix(std::move(m), MultipartiteDims({s.d, s.d}));
          },
          [](const OriginalWerner& s) {
            const int n = s.d * s.d;
            CMatrix m = (CMatrix::Identity(n, n) + s.alpha * swap_operator(s.d)) / (n + s.alpha * s.d);
            return DensityMatrix(std::move(m), MultipartiteDims({s.d, s.d}));
          },
          [](const BoundEntangled& s) {
            CVector psi = CVector::Zero(9);
            for (int i = 0; i < 3; ++i) psi(i * 3 + i) = 1.0 / std::sqrt(3.0);
            CMatrix m = (2.0 / 7.0) * psi * psi.adjoint();
            // s_+ on |01>, |12>, |20>; s_- on |02>, |10>, |21>.
            for (int idx : {1, 5, 6}) m(idx, idx) += s.alpha / 21.0;
            for (int idx : {2, 3, 7}) m(idx, idx) += (5.0 - s.alpha) / 21.0;
            return DensityMatrix(std::move(m), MultipartiteDims({3, 3}));
          },
          [](const GhzMixture& s) {
            const int n = 1 << s.K;
            CVector ghz = CVector::Zero(n);
            ghz(0) = ghz(n - 1) = 1.0 / std::sqrt(2.0);
            CMatrix m = (1.0 - s.p) * ghz * ghz.adjoint() + s.p * CMatrix::Identity(n, n) / static_cast<double>(n);
            return DensityMatrix(std::move(m), MultipartiteDims(std::vector<int>(static_cast<std::size_t>(s.K), 2)));
          },
      },
      spec);
}

namespace threshold {
double werner_ppt(double lambda) {
  const double eta = 2.0 * std::sqrt(lambda * (1.0 - lambda));
  return 1.0 - 1.0 / (1.0 + 2.0 * eta);
}
double werner_criterion(double lambda) { return 4.0 * (1.0 - std::max(lambda, 1.0 - lambda)) / 3.0; }
double werner_purity_test() { return 1.0 - 1.0 / std::sqrt(3.0); }
double werner_restricted_g() { return 0.5; }
double isotropic_critical(int d) { return d / (d + 1.0); }
double original_werner_exact(int d) { return -1.0 / d; }
double original_werner_bloch(int d) { return -d / (d + 2.0); }
double bound_entangled_detection() { return (15.0 + std::sqrt(21.0)) / 6.0; }
double ghz_biseparability(int K) { return 1.0 / (2.0 * (1.0 - std::ldexp(1.0, -K))); }
}  // namespace threshold

ReferenceValues reference_values(const FamilySpec& spec) {
  validate(spec);
  ReferenceValues r;
  std::visit(overloaded{
                 [&](const GeneralizedWerner& s) {
                   const double d2 = static_cast<double>(s.d) * s.d;
                   r.purity = 1.0 + (s.p * s.p - 2.0 * s.p) * (d2 - 1.0) / d2;
                   r.L = s.p / d2 + (1.0 - s.p) * s.Lambda();
                   if (s.uniform()) {
                     r.E_exact = gme::exact_E_isotropic(s.d, s.p);
                     r.thresholds["p_cr"] = threshold::isotropic_critical(s.d);
                     r.thresholds["criterion"] = threshold::isotropic_critical(s.d);
                   }
                   if (s.d == 2) {
                     const double lam = s.lambda.empty() ? 0.5 : s.lambda[0];
                     r.thresholds["ppt_separable"] = threshold::werner_ppt(lam);
                     r.thresholds["criterion"] = threshold::werner_criterion(lam);
                     if (s.uniform()) {
                       r.thresholds["purity_test"] = threshold::werner_purity_test();
                       r.thresholds["restricted_g"] = threshold::werner_restricted_g();
                     }
                   }
                 },
                 [&](const OriginalWerner& s) {
                   const double d = s.d, a = s.alpha;
                   r.purity = (d + 2.0 * a + a * a * d) / (d * (d + a) * (d + a));
                   r.L = (a < 0.0 ? 1.0 : 1.0 + a) / (d * (d + a));
                   r.thresholds["exact_detection"] = threshold::original_werner_exact(s.d);
                   r.thresholds["ppt"] = threshold::original_werner_exact(s.d);
                   r.thresholds["bloch_bound"] = threshold::original_werner_bloch(s.d);
                 },
                 [&](const BoundEntangled& s) {
                   const double a = s.alpha;
                   r.purity = (37.0 + 2.0 * a * (a - 5.0)) / 147.0;
                   // max(11/3, a)/21 misses an interior maximum for
                   // (5 + sqrt 5)/2 < a < 4, where L = (a + (4 - a)^2 / 3)/21.
                   const double interior = a < 4.0 ? a + (4.0 - a) * (4.0 - a) / 3.0 : a;
                   r.L = std::max(11.0 / 3.0, interior) / 21.0;
                   r.thresholds["alpha_det"] = threshold::bound_entangled_detection();
                   r.thresholds["separable_max"] = 3.0;
                   r.thresholds["ppt_max"] = 4.0;
                 },
                 [&](const GhzMixture& s) {
                   const double inv = std::ldexp(1.0, -s.K);
                   r.purity = (1.0 - s.p) * (1.0 - s.p) + 2.0 * s.p * (1.0 - s.p) * inv + s.p * s.p * inv;
                   r.L = (1.0 - s.p) / 2.0 + s.p * inv;
                   r.thresholds["p_gme"] = threshold::ghz_biseparability(s.K);
                 },
             },
             spec);
  return r;
}

FamilySpec parse(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  std::map<std::string, std::string> kv;
  if (colon != std::string::npos) {
    for (const auto& item : split(text.substr(colon + 1), ',')) {
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw StateError("expected key=value in '" + item + "'");
      kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
  }
  auto take = [&](const std::string& key) -> std::optional<std::string> {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    auto v = it->second;
    kv.erase(it);
    return v;
  };

  FamilySpec spec;
  if (kind == "gwerner") {
    GeneralizedWerner s;
    if (auto v = take("d")) s.d = parse_int(*v);
    if (auto v = take("p")) s.p = parse_double(*v);
    if (auto v = take("lambda")) {
      for (const auto& x : split(*v, '/')) s.lambda.push_back(parse_double(x));
      if (s.d == 2 && s.lambda.size() == 1) s.lambda.push_back(1.0 - s.lambda[0]);
    }
    if (auto v = take("Lambda")) {
      require(s.lambda.empty(), "gwerner: give either lambda or Lambda");
      require(s.d >= 2, "gwerner: d must be >= 2");
      s.lambda = lambda_from_Lambda(s.d, parse_double(*v));
    }
    spec = s;
  } else if (kind == "owerner") {
    OriginalWerner s;
    if (auto v = take("d")) s.d = parse_int(*v);
    if (auto v = take("alpha")) s.alpha = parse_double(*v);
    spec = s;
  } else if (kind == "boundent") {
    BoundEntangled s;
    if (auto v = take("alpha")) s.alpha = parse_double(*v);
    spec = s;
  } else if (kind == "ghz") {
    GhzMixture s;
    if (auto v = take("K")) s.K = parse_int(*v);
    if (auto v = take("p")) s.p = parse_double(*v);
    spec = s;
  } else {
    throw StateError("unknown state family '" + kind + "'");
  }
  if (!kv.empty()) throw StateError("unknown parameter '" + kv.begin()->first + "' for family " + kind);
  validate(spec);
  return spec;
}

std::string to_string(const FamilySpec& spec) {
  return std::visit(overloaded{
                        [](const GeneralizedWerner& s) {
                          std::string out = "gwerner:d=" + std::to_string(s.d) + ",p=" + fmt(s.p);
                          if (!s.lambda.empty()) {
                            out += ",lambda=";
                            for (std::size_t i = 0; i < s.lambda.size(); ++i) {
                              if (i) out += '/';
                              out += fmt(s.lambda[i]);
                            }
                          }
                          return out;
                        },
                        [](const OriginalWerner& s) {
                          return "owerner:d=" + std::to_string(s.d) + ",alpha=" + fmt(s.alpha);
                        },
                        [](const BoundEntangled& s) { return "boundent:alpha=" + fmt(s.alpha); },
                        [](const GhzMixture& s) { return "ghz:K=" + std::to_string(s.K) + ",p=" + fmt(s.p); },
                    },
                    spec);
}

void set_parameter(FamilySpec& spec, const std::string& name, double value) {
  auto unknown = [&] { throw StateError("parameter '" + name + "' does not exist for this family"); };
  auto as_int = [&](double v) {
    require(v == std::floor(v), "parameter '" + name + "' must be an integer");
    return static_cast<int>(v);
  };
  std::visit(overloaded{
                 [&](GeneralizedWerner& s) {
                   if (name == "p") {
                     s.p = value;
                   } else if (name == "d") {
                     s.d = as_int(value);
                     if (static_cast<int>(s.lambda.size()) != s.d) s.lambda.clear();
                   } else if (name == "lambda") {
                     require(s.d == 2, "scalar lambda is only defined for d = 2; use Lambda");
                     s.lambda = {value, 1.0 - value};
                   } else if (name == "Lambda") {
                     s.lambda = lambda_from_Lambda(s.d, value);
                   } else {
                     unknown();
                   }
                 },
                 [&](OriginalWerner& s) {
                   if (name == "alpha") {
                     s.alpha = value;
                   } else if (name == "d") {
                     s.d = as_int(value);
                   } else {
                     unknown();
                   }
                 },
                 [&](BoundEntangled& s) {
                   if (name == "alpha") {
                     s.alpha = value;
                   } else {
                     unknown();
                   }
                 },
                 [&](GhzMixture& s) {
                   if (name == "p") {
                     s.p = value;
                   } else if (name == "K") {
                     s.K = as_int(value);
                   } else {
                     unknown();
                   }
                 },
             },
             spec);
}

double get_parameter(const FamilySpec& spec, const std::string& name) {
  auto unknown = [&]() -> double { throw StateError("parameter '" + name + "' does not exist for this family"); };
  return std::visit(overloaded{
                        [&](const GeneralizedWerner& s) -> double {
                          if (name == "p") return s.p;
                          if (name == "d") return s.d;
                          if (name == "Lambda") return s.Lambda();
                          if (name == "lambda") return s.lambda.empty() ? 1.0 / s.d : s.lambda[0];
                          return unknown();
                        },
                        [&](const OriginalWerner& s) -> double {
                          if (name == "alpha") return s.alpha;
                          if (name == "d") return s.d;
                          return unknown();
                        },
                        [&](const BoundEntangled& s) -> double {
                          if (name == "alpha") return s.alpha;
                          return unknown();
                        },
                        [&](const GhzMixture& s) -> double {
                          if (name == "p") return s.p;
                          if (name == "K") return s.K;
                          return unknown();
                        },
                    },
                    spec);
}

}  // namespace gmebound::families
