#pragma once

#include "gmebound/qstate.hpp"

#include <array>
#include <string_view>
#include <utility>

namespace gmebound::bloch {

/// Quantities reconstructed from the ten measured parameters.
struct TomoReconstruction {
  double normP2 = 0.0;  // |p|^2
  double normQ2 = 0.0;  // |q|^2, from the k = 1 channel
  double normQ2_k2 = 0.0;  // |q|^2, from the k = 2 channel (consistency check)
  double C11 = 0.0;
  double C22 = 0.0;
  double C12 = 0.0;
};

/// Two-qubit measurement scheme. Omega^k_{+/-} = Tr_B(rho I (x) |phi^k_{+/-}><phi^k_{+/-}|)
/// with |phi^k_{+/-}> the eigenvectors of the k-th Pauli matrix.
struct TomoParams {
  std::array<double, 3> T{};   // Tr Omega^k_+
  std::array<double, 2> Pp{};  // Tr (Omega^k_+)^2, k = 1, 2
  std::array<double, 2> Pm{};  // Tr (Omega^k_-)^2, k = 1, 2
  double F12 = 0.0;            // Tr Omega^1_+ Omega^2_+
  std::array<double, 2> G{};   // Tr Omega^k_+ Omega^k_-, k = 1, 2
  TomoReconstruction reconstructed;

  static constexpr std::size_t kMeasuredCount = 10;
  /// The measured parameters in the order T1 T2 T3 G1 G2 P1p P1m P2p P2m F12.
  std::array<std::pair<std::string_view, double>, kMeasuredCount> measured() const;
};

/// Reconstruction of |p|^2, |q|^2, C11, C22, C12 from the measured values.
TomoReconstruction tomo_reconstruct(const TomoParams& tp);

TomoParams tomo_simulate(const DensityMatrix& rho);

struct TomoVerdict {
  double lhs = 0.0;
  double g = 0.0;
  bool entangled = false;
};

/// Bloch criterion with f(C) replaced by restricted_g(C11, C12, C22).
TomoVerdict tomo_verdict(const TomoParams& tp);

}  // namespace gmebound::bloch
