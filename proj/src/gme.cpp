#include "gmebound/gme.hpp"

#include <algorithm>
#include <cmath>

namespace gmebound::gme {

namespace {
// Round-off margin for L < Tr rho^2 on states where both equal 1.
constexpr double kCriterionSlack = 1e-12;
}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kNotDetected:
      return "false";
    case Verdict::kEntangled:
      return "true";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "false";
}

BoundReport bound_from_values(double L, double purity, int m) {
  BoundReport r;
  r.m = m;
  r.L = L;
  r.purity = purity;
  r.R = std::sqrt(std::max(0.0, 1.0 - L)) - std::sqrt(std::max(0.0, 1.0 - purity));
  const double pos = std::max(r.R, 0.0);
  r.lower = pos * pos;
  r.upper = 1.0 - L;
  r.criterion_13 = (purity - L > kCriterionSlack) ? Verdict::kEntangled : Verdict::kNotDetected;
  return r;
}

BoundReport bound_report(const DensityMatrix& rho, int m, const prodrad::SeeSawConfig& cfg) {
  const auto radius = prodrad::product_radius(rho, m, cfg);
  BoundReport r = bound_from_values(radius.L, purity(rho), m);
  r.converged = radius.converged;
  r.partition = radius.partition_used.label();
  if (r.criterion_13 == Verdict::kEntangled && !radius.converged) r.criterion_13 = Verdict::kInconclusive;

  const int K = rho.dims().parties();
  for (int party = 0; party < K; ++party) {
    const double pm = purity(partial_trace(rho, {party}));
    r.marginal_purities.push_back(pm);
    if (pm < r.purity - kCriterionSlack) r.purity_test = true;
  }
  if (K == 2) {
    const double ev = min_hermitian_eigenvalue(partial_transpose(rho, 1));
    r.ppt_min_eigenvalue = ev;
    r.ppt = ev >= -tol::kPsd;
  }
  return r;
}

double exact_E_isotropic(int d, double p) {
  if (d < 2) throw StateError("exact_E_isotropic needs d >= 2");
  if (!(p >= 0.0 && p <= 1.0)) throw StateError("exact_E_isotropic needs p in [0, 1]");
  const double d2 = static_cast<double>(d) * d;
  const double F = 1.0 - p * (d2 - 1.0) / d2;
  // Overlap with the maximally entangled state at or below 1/d is separable.
  if (F <= 1.0 / d) return 0.0;
  const double s = std::sqrt(F) + std::sqrt((d - 1.0) * (1.0 - F));
  return std::max(0.0, 1.0 - s * s / d);
}

double R_generalized_werner(int d, double pprime, double Lambda) {
  if (d < 2) throw StateError("R_generalized_werner needs d >= 2");
  if (!(pprime >= 0.0 && pprime <= 1.0)) throw StateError("R_generalized_werner needs p' in [0, 1]");
  if (!(Lambda >= 1.0 / d - 1e-12 && Lambda <= 1.0 + 1e-12)) {
    throw StateError("R_generalized_werner needs Lambda in [1/d, 1]");
  }
  const double d2 = static_cast<double>(d) * d;
  const double first = std::sqrt(std::max(0.0, 1.0 - pprime / d2 - (1.0 - pprime) * Lambda));
  const double second = std::sqrt((2.0 * pprime - pprime * pprime) * (d2 - 1.0)) / d;
  return first - second;
}

std::vector<OrderingPoint> ordering_region(int d, double p_ref, const OrderingGrid& grid) {
  if (d < 2) throw StateError("ordering_region needs d >= 2");
  const double p_cr = d / (d + 1.0);
  if (!(p_ref >= 0.0 && p_ref < p_cr)) throw StateError("ordering_region needs p_ref in [0, d/(d+1))");
  if (grid.pprime_steps < 1 || grid.Lambda_steps < 1) throw StateError("ordering grid needs at least one step");

  auto axis = [](double lo, double hi, int steps, int i) {
    return steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1.0);
  };
  const double E_ref = exact_E_isotropic(d, p_ref);
  std::vector<OrderingPoint> out;
  out.reserve(static_cast<std::size_t>(grid.pprime_steps) * static_cast<std::size_t>(grid.Lambda_steps));
  for (int i = 0; i < grid.pprime_steps; ++i) {
    const double pp = axis(0.0, 1.0, grid.pprime_steps, i);
    for (int j = 0; j < grid.Lambda_steps; ++j) {
      OrderingPoint pt;
      pt.pprime = pp;
      pt.Lambda = axis(1.0 / d, 1.0, grid.Lambda_steps, j);
      pt.R = R_generalized_werner(d, pp, pt.Lambda);
      const double pos = std::max(pt.R, 0.0);
      pt.lower = pos * pos;
      pt.E_ref = E_ref;
      pt.dominates = grid.literal ? (pt.R > E_ref + kCriterionSlack) : (pt.lower > E_ref + kCriterionSlack);
      out.push_back(pt);
    }
  }
  return out;
}

}  // namespace gmebound::gme
