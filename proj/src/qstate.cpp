#include "gmebound/qstate.hpp"

#include <algorithm>
#include <cmath>

namespace gmebound {

MultipartiteDims::MultipartiteDims(std::vector<int> dims, std::size_t max_dimension)
    : dims_(std::move(dims)) {
  if (dims_.empty()) throw StateError("dims must list at least one party");
  std::size_t total = 1;
  for (int d : dims_) {
    if (d < 2) throw StateError("every local dimension must be >= 2, got " + std::to_string(d));
    total *= static_cast<std::size_t>(d);
    if (total > max_dimension) {
      throw StateError("ambient dimension exceeds the configured cap of " +
                       std::to_string(max_dimension));
    }
  }
  total_ = static_cast<int>(total);
}

MultipartiteDims MultipartiteDims::subset(const std::vector<int>& parties) const {
  std::vector<int> sub;
  sub.reserve(parties.size());
  for (int p : parties) {
    if (p < 0 || p >= this->parties()) throw StateError("party index out of range");
    sub.push_back(dims_[static_cast<std::size_t>(p)]);
  }
  return MultipartiteDims(std::move(sub));
}

std::vector<int> MultipartiteDims::digits(int index) const {
  std::vector<int> out(dims_.size());
  for (std::size_t k = dims_.size(); k-- > 0;) {
    out[k] = index % dims_[k];
    index /= dims_[k];
  }
  return out;
}

int MultipartiteDims::index(const std::vector<int>& digits) const {
  int idx = 0;
  for (std::size_t k = 0; k < dims_.size(); ++k) idx = idx * dims_[k] + digits[k];
  return idx;
}

PureState::PureState(CVector amplitudes, MultipartiteDims dims)
    : amplitudes_(std::move(amplitudes)), dims_(std::move(dims)) {
  if (amplitudes_.size() != dims_.total()) throw StateError("amplitude count does not match dims");
  if (std::abs(amplitudes_.norm() - 1.0) > tol::kNorm) throw StateError("pure state is not normalized");
}

PureState PureState::normalized(CVector amplitudes, MultipartiteDims dims) {
  const double n = amplitudes.norm();
  if (n == 0.0) throw StateError("cannot normalize the zero vector");
  amplitudes /= n;
  return PureState(std::move(amplitudes), std::move(dims));
}

DensityMatrix::DensityMatrix(CMatrix matrix, MultipartiteDims dims)
    : DensityMatrix(std::move(matrix), std::move(dims), true) {}

DensityMatrix DensityMatrix::without_psd_check(CMatrix matrix, MultipartiteDims dims) {
  return DensityMatrix(std::move(matrix), std::move(dims), false);
}

DensityMatrix::DensityMatrix(CMatrix matrix, MultipartiteDims dims, bool check_psd)
    : dims_(std::move(dims)), psd_checked_(check_psd) {
  if (matrix.rows() != matrix.cols()) throw StateError("density matrix must be square");
  if (matrix.rows() != dims_.total()) throw StateError("matrix dimension does not match dims");
  const double asym = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol::kHermitian) throw StateError("density matrix is not Hermitian");
  matrix_ = (matrix + matrix.adjoint()) / 2.0;
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > tol::kTrace) throw StateError("density matrix trace differs from 1");
  if (check_psd && min_eigenvalue() < -tol::kPsd) {
    throw StateError("density matrix is not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.projector(), psi.dims());
}

DensityMatrix DensityMatrix::maximally_mixed(const MultipartiteDims& dims) {
  const int n = dims.total();
  return DensityMatrix(CMatrix::Identity(n, n) / static_cast<double>(n), dims);
}

double DensityMatrix::min_eigenvalue() const { return min_hermitian_eigenvalue(matrix_); }

double min_hermitian_eigenvalue(const CMatrix& matrix) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(matrix, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double purity(const DensityMatrix& rho) {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  const double value = rho.matrix().squaredNorm();
  return std::clamp(value, 1.0 / rho.dim(), 1.0);
}

double fidelity_pure(const DensityMatrix& rho, const PureState& psi) {
  if (!(rho.dims() == psi.dims())) throw StateError("state and pure state dims differ");
  const cplx f = psi.amplitudes().dot(rho.matrix() * psi.amplitudes());
  return std::clamp(f.real(), 0.0, 1.0);
}

double root_infidelity(const DensityMatrix& rho, const PureState& psi) {
  return std::sqrt(std::max(0.0, 1.0 - fidelity_pure(rho, psi)));
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::vector<int> keep) {
  const auto& dims = rho.dims();
  if (keep.empty()) throw StateError("partial trace needs a nonempty set of kept parties");
  std::sort(keep.begin(), keep.end());
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end()) {
    throw StateError("duplicate party in kept set");
  }
  if (keep.front() < 0 || keep.back() >= dims.parties()) throw StateError("party index out of range");

  std::vector<bool> kept(static_cast<std::size_t>(dims.parties()), false);
  for (int p : keep) kept[static_cast<std::size_t>(p)] = true;

  const int n = dims.total();
  std::vector<int> kidx(static_cast<std::size_t>(n)), tidx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto dg = dims.digits(i);
    int k = 0, t = 0;
    for (int p = 0; p < dims.parties(); ++p) {
      if (kept[static_cast<std::size_t>(p)]) {
        k = k * dims[p] + dg[static_cast<std::size_t>(p)];
      } else {
        t = t * dims[p] + dg[static_cast<std::size_t>(p)];
      }
    }
    kidx[static_cast<std::size_t>(i)] = k;
    tidx[static_cast<std::size_t>(i)] = t;
  }

  MultipartiteDims out_dims = dims.subset(keep);
  CMatrix out = CMatrix::Zero(out_dims.total(), out_dims.total());
  const auto& m = rho.matrix();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (tidx[static_cast<std::size_t>(i)] == tidx[static_cast<std::size_t>(j)]) {
        out(kidx[static_cast<std::size_t>(i)], kidx[static_cast<std::size_t>(j)]) += m(i, j);
      }
    }
  }
  if (rho.psd_checked()) return DensityMatrix(std::move(out), std::move(out_dims));
  return DensityMatrix::without_psd_check(std::move(out), std::move(out_dims));
}

CMatrix partial_transpose(const CMatrix& matrix, const MultipartiteDims& dims, int party) {
  if (party < 0 || party >= dims.parties()) throw StateError("party index out of range");
  if (matrix.rows() != dims.total() || matrix.cols() != dims.total()) {
    throw StateError("matrix dimension does not match dims");
  }
  const int n = dims.total();
  // Stride of the party's digit in the row-major index.
  int stride = 1;
  for (int p = dims.parties() - 1; p > party; --p) stride *= dims[p];
  const int d = dims[party];

  CMatrix out(n, n);
  for (int j = 0; j < n; ++j) {
    const int dj = (j / stride) % d;
    for (int i = 0; i < n; ++i) {
      const int di = (i / stride) % d;
      const int i2 = i + (dj - di) * stride;
      const int j2 = j + (di - dj) * stride;
      out(i2, j2) = matrix(i, j);
    }
  }
  return out;
}

CMatrix partial_transpose(const DensityMatrix& rho, int party) {
  return partial_transpose(rho.matrix(), rho.dims(), party);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

}  // namespace gmebound
