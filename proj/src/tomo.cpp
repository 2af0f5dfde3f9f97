#include "gmebound/tomo.hpp"

#include "gmebound/bloch.hpp"

#include <algorithm>
#include <cmath>

namespace gmebound::bloch {

namespace {

// Eigenvectors of sigma_x, sigma_y, sigma_z with eigenvalue +1 / -1.
std::array<std::array<CVector, 2>, 3> pauli_eigenvectors() {
  const double s = 1.0 / std::sqrt(2.0);
  const cplx i{0.0, 1.0};
  std::array<std::array<CVector, 2>, 3> out;
  out[0][0] = CVector{{s, s}};
  out[0][1] = CVector{{s, -s}};
  out[1][0] = CVector{{cplx(s), i * s}};
  out[1][1] = CVector{{cplx(s), -i * s}};
  out[2][0] = CVector{{1.0, 0.0}};
  out[2][1] = CVector{{0.0, 1.0}};
  return out;
}

// Tr_B(rho (I (x) |phi><phi|)) = (I (x) <phi|) rho (I (x) |phi>).
CMatrix omega(const CMatrix& rho, const CVector& phi) {
  CMatrix out(2, 2);
  for (int a = 0; a < 2; ++a) {
    for (int a2 = 0; a2 < 2; ++a2) {
      out(a, a2) = phi.dot(rho.block(a * 2, a2 * 2, 2, 2) * phi);
    }
  }
  return out;
}

double tr_prod(const CMatrix& x, const CMatrix& y) { return (x * y).trace().real(); }

}  // namespace

std::array<std::pair<std::string_view, double>, TomoParams::kMeasuredCount> TomoParams::measured() const {
  return {{{"T1", T[0]},
           {"T2", T[1]},
           {"T3", T[2]},
           {"G1", G[0]},
           {"G2", G[1]},
           {"P1p", Pp[0]},
           {"P1m", Pm[0]},
           {"P2p", Pp[1]},
           {"P2m", Pm[1]},
           {"F12", F12}}};
}

TomoReconstruction tomo_reconstruct(const TomoParams& tp) {
  TomoReconstruction r;
  const double t1 = 2.0 * tp.T[0] - 1.0, t2 = 2.0 * tp.T[1] - 1.0, t3 = 2.0 * tp.T[2] - 1.0;
  r.normP2 = t1 * t1 + t2 * t2 + t3 * t3;
  r.normQ2 = 4.0 * tp.G[0] + 2.0 * (tp.Pp[0] + tp.Pm[0]) - 1.0;
  r.normQ2_k2 = 4.0 * tp.G[1] + 2.0 * (tp.Pp[1] + tp.Pm[1]) - 1.0;
  r.C11 = 4.0 * (tp.Pp[0] + tp.Pm[0]) - t1 * t1 - r.normQ2 - 1.0;
  r.C22 = 4.0 * (tp.Pp[1] + tp.Pm[1]) - t2 * t2 - r.normQ2 - 1.0;
  r.C12 = 8.0 * tp.F12 - t1 * t2 - r.normQ2 - 1.0 - 2.0 * (tp.Pp[0] - tp.Pm[0]) -
          2.0 * (tp.Pp[1] - tp.Pm[1]);
  return r;
}

TomoParams tomo_simulate(const DensityMatrix& rho) {
  if (rho.dims().dims() != std::vector<int>{2, 2}) throw StateError("tomography needs a two-qubit state");
  static const auto phi = pauli_eigenvectors();
  std::array<std::array<CMatrix, 2>, 3> om;
  for (int k = 0; k < 3; ++k) {
    for (int s = 0; s < 2; ++s) om[k][s] = omega(rho.matrix(), phi[k][s]);
  }
  TomoParams tp;
  for (int k = 0; k < 3; ++k) tp.T[k] = om[k][0].trace().real();
  for (int k = 0; k < 2; ++k) {
    tp.Pp[k] = tr_prod(om[k][0], om[k][0]);
    tp.Pm[k] = tr_prod(om[k][1], om[k][1]);
    tp.G[k] = tr_prod(om[k][0], om[k][1]);
  }
  tp.F12 = tr_prod(om[0][0], om[1][0]);
  tp.reconstructed = tomo_reconstruct(tp);
  return tp;
}

TomoVerdict tomo_verdict(const TomoParams& tp) {
  const auto& r = tp.reconstructed;
  constexpr double slack = 1e-9;
  for (double v : {r.normP2, r.normQ2}) {
    if (v < -slack || v > 1.0 + slack) throw StateError("reconstructed Bloch norm outside [0, 1]");
  }
  const double np = std::sqrt(std::clamp(r.normP2, 0.0, 1.0));
  const double nq = std::sqrt(std::clamp(r.normQ2, 0.0, 1.0));
  TomoVerdict v;
  v.g = restricted_g(r.C11, r.C12, r.C22);
  v.lhs = nq * (1.0 - nq) + np * (1.0 - np) + v.g;
  v.entangled = v.lhs < 0.0;
  return v;
}

}  // namespace gmebound::bloch
