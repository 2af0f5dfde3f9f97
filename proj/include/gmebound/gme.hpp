#pragma once

#include "gmebound/prodrad.hpp"
#include "gmebound/qstate.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gmebound::gme {

/// Outcome of the L < Tr rho^2 test. Inconclusive marks a would-be detection
/// made with a see-saw run that did not converge, since an underestimated L
/// can fake it.
enum class Verdict { kNotDetected, kEntangled, kInconclusive };

std::string to_string(Verdict v);

struct BoundReport {
  int m = 2;
  double L = 0.0;
  double purity = 0.0;
  /// sqrt(1 - L) - sqrt(1 - Tr rho^2); lower-bounds sqrt(E_m).
  double R = 0.0;
  /// max(R, 0)^2.
  double lower = 0.0;
  /// 1 - L.
  double upper = 0.0;
  Verdict criterion_13 = Verdict::kNotDetected;
  /// True when some single-party marginal has smaller purity than the state.
  bool purity_test = false;
  std::vector<double> marginal_purities;
  /// Bipartite only: partial transpose on the second party is PSD.
  std::optional<bool> ppt;
  std::optional<double> ppt_min_eigenvalue;
  bool converged = true;
  std::string partition;
};

/// R, lower and upper from a product numerical radius and a purity. The
/// criterion is set from L < purity without convergence information.
BoundReport bound_from_values(double L, double purity, int m = 2);

BoundReport bound_report(const DensityMatrix& rho, int m, const prodrad::SeeSawConfig& cfg);

/// Geometric measure of the isotropic state (1 - p)|Phi+><Phi+| + p I/d^2.
double exact_E_isotropic(int d, double p);

/// Closed-form R for the generalized Werner state with max lambda_i = Lambda.
double R_generalized_werner(int d, double pprime, double Lambda);

struct OrderingPoint {
  double pprime = 0.0;
  double Lambda = 0.0;
  double R = 0.0;
  double lower = 0.0;
  double E_ref = 0.0;
  bool dominates = false;
};

struct OrderingGrid {
  int pprime_steps = 41;
  int Lambda_steps = 41;
  /// Compare R itself (not max(R, 0)^2) against E_ref.
  bool literal = false;
};

/// Generalized Werner states certified more entangled than the isotropic
/// reference with noise p_ref. Grid: p' in [0, 1], Lambda in [1/d, 1],
/// Lambda varying fastest.
std::vector<OrderingPoint> ordering_region(int d, double p_ref, const OrderingGrid& grid);

}  // namespace gmebound::gme
