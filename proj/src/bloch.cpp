#include "gmebound/bloch.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace gmebound::bloch {

namespace {

const cplx kI{0.0, 1.0};

void check_length(const RVector& v, int dim, const char* what) {
  if (v.size() != dim * dim - 1) {
    throw StateError(std::string(what) + " must have length dim^2 - 1 = " +
                     std::to_string(dim * dim - 1));
  }
}

// Tr(X Y) for square matrices without forming the product.
cplx trace_product(const CMatrix& x, const CMatrix& y) {
  return (x.array() * y.transpose().array()).sum();
}

}  // namespace

GeneratorBasis make_basis(int dim) {
  if (dim < 2) throw StateError("generator basis needs dim >= 2");
  GeneratorBasis out;
  out.dim = dim;
  out.generators.reserve(static_cast<std::size_t>(dim * dim - 1));
  for (int j = 0; j < dim; ++j) {
    for (int k = j + 1; k < dim; ++k) {
      CMatrix s = CMatrix::Zero(dim, dim);
      s(j, k) = 1.0;
      s(k, j) = 1.0;
      out.generators.push_back(std::move(s));
    }
  }
  for (int j = 0; j < dim; ++j) {
    for (int k = j + 1; k < dim; ++k) {
      CMatrix s = CMatrix::Zero(dim, dim);
      s(j, k) = -kI;
      s(k, j) = kI;
      out.generators.push_back(std::move(s));
    }
  }
  for (int l = 1; l < dim; ++l) {
    CMatrix s = CMatrix::Zero(dim, dim);
    const double c = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int j = 0; j < l; ++j) s(j, j) = c;
    s(l, l) = -c * l;
    out.generators.push_back(std::move(s));
  }
  return out;
}

std::shared_ptr<const GeneratorBasis> basis(int dim) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const GeneratorBasis>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(dim);
  if (it != cache.end()) return it->second;
  auto b = std::make_shared<const GeneratorBasis>(make_basis(dim));
  cache.emplace(dim, b);
  return b;
}

double bloch_scale(int dim) { return std::sqrt(dim * (dim - 1.0) / 2.0); }

CorrelationGram correlation_gram(const RMatrix& B) {
  CorrelationGram g;
  g.C = (B.rows() <= B.cols()) ? RMatrix(B * B.transpose()) : RMatrix(B.transpose() * B);
  if (g.C.size() == 0) return g;
  Eigen::SelfAdjointEigenSolver<RMatrix> es(g.C, Eigen::EigenvaluesOnly);
  g.xi1 = std::max(0.0, es.eigenvalues()(es.eigenvalues().size() - 1));
  g.trC = g.C.trace();
  return g;
}

BlochForm bloch_decompose(const DensityMatrix& rho, int M, int N) {
  if (M < 2 || N < 2 || rho.dim() != M * N) {
    throw StateError("bloch_decompose: ambient dimension must equal M * N");
  }
  BlochForm bf;
  bf.M = M;
  bf.N = N;
  bf.basisA = basis(M);
  bf.basisB = basis(N);
  const auto& sa = bf.basisA->generators;
  const auto& sb = bf.basisB->generators;
  const double kM = bloch_scale(M), kN = bloch_scale(N);
  const CMatrix& r = rho.matrix();

  // Z_i = sum_{a,a'} s_i(a', a) R_{a a'} where R_{a a'} is the (a, a') N x N block.
  std::vector<CMatrix> z(sa.size(), CMatrix::Zero(N, N));
  CMatrix rhoB = CMatrix::Zero(N, N);
  CMatrix rhoA(M, M);
  for (int a = 0; a < M; ++a) {
    for (int a2 = 0; a2 < M; ++a2) {
      const CMatrix blk = r.block(a * N, a2 * N, N, N);
      rhoA(a, a2) = blk.trace();
      if (a == a2) rhoB += blk;
      for (std::size_t i = 0; i < sa.size(); ++i) {
        const cplx c = sa[i](a2, a);
        if (c != cplx(0.0)) z[i] += c * blk;
      }
    }
  }

  bf.q.resize(M * M - 1);
  for (std::size_t i = 0; i < sa.size(); ++i) {
    bf.q(static_cast<Eigen::Index>(i)) = M * trace_product(rhoA, sa[i]).real() / (2.0 * kM);
  }
  bf.p.resize(N * N - 1);
  for (std::size_t j = 0; j < sb.size(); ++j) {
    bf.p(static_cast<Eigen::Index>(j)) = N * trace_product(rhoB, sb[j]).real() / (2.0 * kN);
  }
  bf.B.resize(M * M - 1, N * N - 1);
  for (std::size_t i = 0; i < sa.size(); ++i) {
    for (std::size_t j = 0; j < sb.size(); ++j) {
      bf.B(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          M * N * trace_product(z[i], sb[j]).real() / (4.0 * kM * kN);
    }
  }
  return bf;
}

BlochForm bloch_decompose(const DensityMatrix& rho) {
  if (rho.dims().parties() != 2) throw StateError("bloch_decompose needs a bipartite state");
  return bloch_decompose(rho, rho.dims()[0], rho.dims()[1]);
}

DensityMatrix bloch_reconstruct(const BlochForm& bf) {
  const int M = bf.M, N = bf.N;
  if (M < 2 || N < 2) throw StateError("bloch_reconstruct: M and N must be >= 2");
  check_length(bf.q, M, "q");
  check_length(bf.p, N, "p");
  if (bf.B.rows() != M * M - 1 || bf.B.cols() != N * N - 1) {
    throw StateError("B must be (M^2 - 1) x (N^2 - 1)");
  }
  const auto ba = bf.basisA ? bf.basisA : basis(M);
  const auto bb = bf.basisB ? bf.basisB : basis(N);
  const double kM = bloch_scale(M), kN = bloch_scale(N);

  CMatrix localA = CMatrix::Zero(M, M);
  for (Eigen::Index i = 0; i < bf.q.size(); ++i) localA += bf.q(i) * ba->generators[static_cast<std::size_t>(i)];
  CMatrix localB = CMatrix::Zero(N, N);
  for (Eigen::Index j = 0; j < bf.p.size(); ++j) localB += bf.p(j) * bb->generators[static_cast<std::size_t>(j)];

  CMatrix out = CMatrix::Identity(M * N, M * N);
  out += kM * kron(localA, CMatrix::Identity(N, N));
  out += kN * kron(CMatrix::Identity(M, M), localB);
  for (Eigen::Index i = 0; i < bf.B.rows(); ++i) {
    CMatrix right = CMatrix::Zero(N, N);
    for (Eigen::Index j = 0; j < bf.B.cols(); ++j) {
      if (bf.B(i, j) != 0.0) right += bf.B(i, j) * bb->generators[static_cast<std::size_t>(j)];
    }
    out += kM * kN * kron(ba->generators[static_cast<std::size_t>(i)], right);
  }
  out /= static_cast<double>(M * N);
  return DensityMatrix::without_psd_check(std::move(out), MultipartiteDims({M, N}));
}

RVector bloch_vector(const CMatrix& local, int dim) {
  if (local.rows() != dim || local.cols() != dim) throw StateError("local operator has wrong size");
  const auto b = basis(dim);
  const double k = bloch_scale(dim);
  RVector v(dim * dim - 1);
  for (int i = 0; i < dim * dim - 1; ++i) {
    v(i) = dim * trace_product(local, b->generators[static_cast<std::size_t>(i)]).real() / (2.0 * k);
  }
  return v;
}

RVector bloch_vector(const CVector& pure, int dim) {
  return bloch_vector(CMatrix(pure * pure.adjoint()), dim);
}

CMatrix local_from_bloch(const RVector& v, int dim) {
  check_length(v, dim, "Bloch vector");
  const auto b = basis(dim);
  CMatrix out = CMatrix::Identity(dim, dim);
  const double k = bloch_scale(dim);
  for (Eigen::Index i = 0; i < v.size(); ++i) out += k * v(i) * b->generators[static_cast<std::size_t>(i)];
  return out / static_cast<double>(dim);
}

bool pure_bloch_membership(const RVector& v, int dim) {
  const CMatrix x = local_from_bloch(v, dim);
  return (x * x - x).cwiseAbs().maxCoeff() <= 1e-9;
}

double numerical_radius_bloch_objective(const BlochForm& bf, const RVector& v, const RVector& w) {
  check_length(v, bf.M, "v");
  check_length(w, bf.N, "w");
  const double Mm = bf.M - 1.0, Nm = bf.N - 1.0;
  return (1.0 + Mm * v.dot(bf.q) + Nm * w.dot(bf.p) + Mm * Nm * v.dot(bf.B * w)) / (bf.M * bf.N);
}

double upper_bound_L(const BlochForm& bf) {
  const double Mm = bf.M - 1.0, Nm = bf.N - 1.0;
  const auto g = correlation_gram(bf.B);
  return (1.0 + Nm * bf.p.norm() + Mm * bf.q.norm() + Mm * Nm * std::sqrt(g.xi1)) / (bf.M * bf.N);
}

double purity_bloch(const BlochForm& bf) {
  const double Mm = bf.M - 1.0, Nm = bf.N - 1.0;
  const double trC = bf.B.squaredNorm();
  return (1.0 + Nm * bf.p.squaredNorm() + Mm * bf.q.squaredNorm() + Mm * Nm * trC) / (bf.M * bf.N);
}

double f_of_C(const RMatrix& C) {
  Eigen::SelfAdjointEigenSolver<RMatrix> es(C, Eigen::EigenvaluesOnly);
  const double xi1 = std::max(0.0, es.eigenvalues()(es.eigenvalues().size() - 1));
  return std::sqrt(xi1) - C.trace();
}

CriterionResult criterion_bloch(const BlochForm& bf) {
  const double Mm = bf.M - 1.0, Nm = bf.N - 1.0;
  const double nq = bf.q.norm(), np = bf.p.norm();
  const auto g = correlation_gram(bf.B);
  CriterionResult r;
  r.lhs = Mm * nq * std::max(0.0, 1.0 - nq) + Nm * np * std::max(0.0, 1.0 - np) +
          Mm * Nm * (std::sqrt(g.xi1) - g.trC);
  r.entangled = r.lhs < 0.0;
  return r;
}

double restricted_g(double C11, double C12, double C22) {
  // Rotate the measured block to its eigenbasis: diag(a, b), a >= b. For a
  // fixed C33 = c the largest eigenvalue over PSD completions is a + c (all
  // off-diagonal weight on the larger eigenvalue, Schur boundary u^2 = a c),
  // so g = max_{c >= 0} sqrt(a + c) - (a + c) - b.
  const double mean = 0.5 * (C11 + C22);
  const double rad = std::hypot(0.5 * (C11 - C22), C12);
  double a = mean + rad, b = mean - rad;
  if (b < -tol::kPsd) throw StateError("restricted_g: measured block is not positive semidefinite");
  a = std::max(a, 0.0);
  b = std::max(b, 0.0);
  if (a <= 0.25) return 0.25 - b;
  return std::sqrt(a) - a - b;
}

}  // namespace gmebound::bloch
