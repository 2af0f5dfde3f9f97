#pragma once

#include "gmebound/qstate.hpp"

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace gmebound::families {

/// (1 - p)|Psi_lambda><Psi_lambda| + p I/d^2, |Psi_lambda> = sum_i sqrt(lambda_i)|ii>.
struct GeneralizedWerner {
  int d = 2;
  double p = 0.0;
  std::vector<double> lambda;

  double Lambda() const;
  bool uniform() const;
};

/// U (x) U invariant state (I + alpha V) / (d^2 + alpha d), V the swap.
struct OriginalWerner {
  int d = 2;
  double alpha = 0.0;
};

/// Two-qutrit family (2/7)|Psi_+><Psi_+| + (alpha/21) s_+ + ((5 - alpha)/21) s_-.
struct BoundEntangled {
  double alpha = 3.0;
};

/// (1 - p)|GHZ_K><GHZ_K| + p I / 2^K.
struct GhzMixture {
  int K = 3;
  double p = 0.0;
};

using FamilySpec = std::variant<GeneralizedWerner, OriginalWerner, BoundEntangled, GhzMixture>;

/// Throws StateError when a family invariant is violated.
void validate(const FamilySpec& spec);

DensityMatrix build(const FamilySpec& spec);

/// Closed forms available for a family member; absent values are empty.
struct ReferenceValues {
  std::optional<double> purity;
  std::optional<double> L;
  std::optional<double> E_exact;
  std::map<std::string, double> thresholds;
};

ReferenceValues reference_values(const FamilySpec& spec);

/// Parses "gwerner:d=3,p=0.2,lambda=0.5/0.3/0.2", "owerner:d=4,alpha=-0.8",
/// "boundent:alpha=3.5", "ghz:K=4,p=0.3". For d = 2 a single lambda value
/// means (lambda, 1 - lambda); "Lambda=x" for any d means
/// (x, (1-x)/(d-1), ..., (1-x)/(d-1)).
FamilySpec parse(const std::string& text);
std::string to_string(const FamilySpec& spec);

/// Sets one named parameter (d, p, lambda, Lambda, alpha, K) on a spec.
void set_parameter(FamilySpec& spec, const std::string& name, double value);
/// Reads a scalar parameter; lambda for d = 2 returns lambda_1.
double get_parameter(const FamilySpec& spec, const std::string& name);

/// |Psi_lambda> = sum_i sqrt(lambda_i) |ii>.
CVector psi_lambda(int d, const std::vector<double>& lambda);
/// Swap operator on C^d (x) C^d.
CMatrix swap_operator(int d);

namespace threshold {
/// PPT separability of the d = 2 generalized Werner state: p >= 1 - 1/(1 + 2 eta).
double werner_ppt(double lambda);
/// Bloch criterion detection edge for d = 2: p < 4(1 - max(lambda, 1 - lambda))/3.
double werner_criterion(double lambda);
/// Purity test edge for lambda = 1/2.
double werner_purity_test();
/// Restricted-g test edge for lambda = 1/2.
double werner_restricted_g();
/// Isotropic separability point d/(d + 1).
double isotropic_critical(int d);
double original_werner_exact(int d);
double original_werner_bloch(int d);
double bound_entangled_detection();
double ghz_biseparability(int K);
}  // namespace threshold

}  // namespace gmebound::families
