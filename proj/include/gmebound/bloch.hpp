#pragma once

#include "gmebound/qstate.hpp"

#include <memory>
#include <vector>

namespace gmebound::bloch {

/// Traceless Hermitian generators of SU(dim) with Tr(s_i s_j) = 2 delta_ij.
/// Ordering: symmetric (j,k) pairs, antisymmetric (j,k) pairs, then the
/// diagonal generators, each family in lexicographic order.
struct GeneratorBasis {
  int dim = 0;
  std::vector<CMatrix> generators;
};

GeneratorBasis make_basis(int dim);

/// Cached, immutable basis for `dim`.
std::shared_ptr<const GeneratorBasis> basis(int dim);

/// sqrt(dim (dim - 1) / 2).
double bloch_scale(int dim);

/// Bipartite M x N state written as
///   rho = [I + k_M q.s (x) I + k_N I (x) p.s~ + k_M k_N B_ij s_i (x) s~_j] / (M N).
struct BlochForm {
  int M = 0;
  int N = 0;
  RVector q;
  RVector p;
  RMatrix B;
  std::shared_ptr<const GeneratorBasis> basisA;
  std::shared_ptr<const GeneratorBasis> basisB;
};

/// Largest eigenvalue and trace of the smaller of B^T B and B B^T.
struct CorrelationGram {
  RMatrix C;
  double xi1 = 0.0;
  double trC = 0.0;
};

CorrelationGram correlation_gram(const RMatrix& B);

BlochForm bloch_decompose(const DensityMatrix& rho, int M, int N);
/// Uses the two local dimensions of a bipartite state.
BlochForm bloch_decompose(const DensityMatrix& rho);

/// Reconstructs the matrix; positivity is not checked.
DensityMatrix bloch_reconstruct(const BlochForm& bf);

/// Bloch vector of a single-party operator (state or projector) of size dim.
RVector bloch_vector(const CMatrix& local, int dim);
RVector bloch_vector(const CVector& pure, int dim);

/// (I + k_dim v.s) / dim.
CMatrix local_from_bloch(const RVector& v, int dim);

/// True iff local_from_bloch(v, dim) is a rank-one projector.
bool pure_bloch_membership(const RVector& v, int dim);

/// [1 + M_- v.q + N_- w.p + M_- N_- v.B w] / (M N).
double numerical_radius_bloch_objective(const BlochForm& bf, const RVector& v, const RVector& w);

/// Closed-form upper bound on the product numerical radius.
double upper_bound_L(const BlochForm& bf);

double purity_bloch(const BlochForm& bf);

struct CriterionResult {
  double lhs = 0.0;
  bool entangled = false;
};

/// M_-|q|(1-|q|) + N_-|p|(1-|p|) + M_- N_- (sqrt(xi1) - Tr C) < 0 certifies
/// entanglement.
CriterionResult criterion_bloch(const BlochForm& bf);

/// sqrt(xi1(C)) - Tr C.
double f_of_C(const RMatrix& C);

/// max f(C) over PSD completions of the 3x3 correlation Gram whose top-left
/// 2x2 block is [[C11, C12], [C12, C22]].
double restricted_g(double C11, double C12, double C22);

}  // namespace gmebound::bloch
