#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gmebound {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Thrown for malformed inputs: dimension mismatches, invalid states, bad
/// party indices.
class StateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace tol {
inline constexpr double kHermitian = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kPsd = 1e-9;
inline constexpr double kNorm = 1e-10;
}  // namespace tol

/// Upper limit on the ambient Hilbert-space dimension of dense states.
inline constexpr std::size_t kDefaultMaxDimension = 1024;

/// Local dimensions d_I of a K-partite system.
class MultipartiteDims {
 public:
  MultipartiteDims() = default;
  explicit MultipartiteDims(std::vector<int> dims,
                            std::size_t max_dimension = kDefaultMaxDimension);

  const std::vector<int>& dims() const { return dims_; }
  int parties() const { return static_cast<int>(dims_.size()); }
  int operator[](int party) const { return dims_.at(static_cast<std::size_t>(party)); }
  /// Product of the local dimensions.
  int total() const { return total_; }

  /// Restriction to a subset of parties, kept in ascending order.
  MultipartiteDims subset(const std::vector<int>& parties) const;

  /// Row-major digits of a basis index (party 0 is most significant).
  std::vector<int> digits(int index) const;
  int index(const std::vector<int>& digits) const;

  bool operator==(const MultipartiteDims&) const = default;

 private:
  std::vector<int> dims_;
  int total_ = 1;
};

class PureState {
 public:
  PureState(CVector amplitudes, MultipartiteDims dims);

  /// Normalizes the input before validation.
  static PureState normalized(CVector amplitudes, MultipartiteDims dims);

  const CVector& amplitudes() const { return amplitudes_; }
  const MultipartiteDims& dims() const { return dims_; }
  CMatrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

 private:
  CVector amplitudes_;
  MultipartiteDims dims_;
};

/// Hermitian, unit-trace, positive semidefinite matrix tagged with its
/// tensor structure. The input is symmetrized as (rho + rho^dagger)/2 before
/// the checks run.
class DensityMatrix {
 public:
  DensityMatrix(CMatrix matrix, MultipartiteDims dims);

  /// Hermitian and unit-trace only; used where data may leave the state set.
  static DensityMatrix without_psd_check(CMatrix matrix, MultipartiteDims dims);

  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(const MultipartiteDims& dims);

  const CMatrix& matrix() const { return matrix_; }
  const MultipartiteDims& dims() const { return dims_; }
  int dim() const { return dims_.total(); }
  bool psd_checked() const { return psd_checked_; }

  double min_eigenvalue() const;

 private:
  DensityMatrix(CMatrix matrix, MultipartiteDims dims, bool check_psd);

  CMatrix matrix_;
  MultipartiteDims dims_;
  bool psd_checked_ = true;
};

/// Tr(rho^2), clamped to [1/dim, 1].
double purity(const DensityMatrix& rho);

/// <psi|rho|psi>, clamped to [0, 1].
double fidelity_pure(const DensityMatrix& rho, const PureState& psi);

/// sqrt(1 - <psi|rho|psi>).
double root_infidelity(const DensityMatrix& rho, const PureState& psi);

/// Reduced state on `keep` (0-based party indices). Result parties follow
/// ascending index order.
DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<int> keep);

/// Transpose on the indices of one party. The result need not be PSD.
CMatrix partial_transpose(const CMatrix& matrix, const MultipartiteDims& dims, int party);
CMatrix partial_transpose(const DensityMatrix& rho, int party);

/// Smallest eigenvalue of a Hermitian matrix.
double min_hermitian_eigenvalue(const CMatrix& matrix);

/// Kronecker product of two matrices / vectors.
CMatrix kron(const CMatrix& a, const CMatrix& b);
CVector kron(const CVector& a, const CVector& b);

}  // namespace gmebound
