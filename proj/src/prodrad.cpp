#include "gmebound/prodrad.hpp"

#include "gmebound/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <random>

namespace gmebound::prodrad {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

CVector haar_vector(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  CVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = cplx(normal(rng), normal(rng));
  return v / v.norm();
}

int block_dimension(const MultipartiteDims& dims, const std::vector<int>& block) {
  int d = 1;
  for (int p : block) d *= dims[p];
  return d;
}

struct RestartOutcome {
  double value = -1.0;
  std::vector<CVector> factors;
  int sweeps = 0;
  bool converged = false;
  double worst_step = 0.0;
};

// Top eigenvector of a Hermitian matrix; within a degenerate top eigenspace
// the one closest to `previous`.
CVector top_eigenvector(const CMatrix& h, const CVector& previous, int block, double& top_value) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success) throw SeeSawError(block);
  const auto& evals = es.eigenvalues();
  const Eigen::Index n = evals.size();
  top_value = evals(n - 1);
  const double scale = std::max(1.0, std::abs(top_value));
  Eigen::Index first = n - 1;
  while (first > 0 && top_value - evals(first - 1) <= 1e-12 * scale) --first;
  if (first == n - 1) return es.eigenvectors().col(n - 1);
  const auto space = es.eigenvectors().middleCols(first, n - first);
  CVector proj = space * (space.adjoint() * previous);
  const double norm = proj.norm();
  if (norm < 1e-8) return es.eigenvectors().col(first);
  return proj / norm;
}

class SeeSaw {
 public:
  SeeSaw(const DensityMatrix& rho, const Partition& partition, const SeeSawConfig& cfg)
      : rho_(rho.matrix()), indexer_(rho.dims(), partition), cfg_(cfg) {}

  double value(const std::vector<CVector>& factors) const {
    const int n = indexer_.dim();
    CVector x(n);
    for (int i = 0; i < n; ++i) {
      cplx amp = 1.0;
      for (int b = 0; b < indexer_.blocks(); ++b) amp *= factors[static_cast<std::size_t>(b)](indexer_.local(i, b));
      x(i) = amp;
    }
    return x.dot(rho_ * x).real();
  }

  // <chi_rest| rho |chi_rest> on block b.
  CMatrix conditional(const std::vector<CVector>& factors, int block) const {
    const int n = indexer_.dim();
    CVector chi(n);
    for (int i = 0; i < n; ++i) {
      cplx amp = 1.0;
      for (int c = 0; c < indexer_.blocks(); ++c) {
        if (c != block) amp *= factors[static_cast<std::size_t>(c)](indexer_.local(i, c));
      }
      chi(i) = amp;
    }
    const int d = indexer_.block_dim(block);
    CMatrix h = CMatrix::Zero(d, d);
    for (int j = 0; j < n; ++j) {
      const int aj = indexer_.local(j, block);
      const cplx cj = chi(j);
      for (int i = 0; i < n; ++i) {
        h(indexer_.local(i, block), aj) += std::conj(chi(i)) * rho_(i, j) * cj;
      }
    }
    return (h + h.adjoint()) / 2.0;
  }

  RestartOutcome run(std::uint64_t restart_seed) const {
    std::mt19937_64 rng(restart_seed);
    RestartOutcome out;
    out.factors.reserve(static_cast<std::size_t>(indexer_.blocks()));
    for (int b = 0; b < indexer_.blocks(); ++b) out.factors.push_back(haar_vector(indexer_.block_dim(b), rng));

    double current = value(out.factors);
    for (int sweep = 1; sweep <= cfg_.max_sweeps; ++sweep) {
      const double sweep_start = current;
      for (int b = 0; b < indexer_.blocks(); ++b) {
        const CMatrix h = conditional(out.factors, b);
        const double before = out.factors[static_cast<std::size_t>(b)].dot(h * out.factors[static_cast<std::size_t>(b)]).real();
        double top = 0.0;
        out.factors[static_cast<std::size_t>(b)] = top_eigenvector(h, out.factors[static_cast<std::size_t>(b)], b, top);
        out.worst_step = std::min(out.worst_step, top - before);
        current = top;
      }
      out.sweeps = sweep;
      if (current - sweep_start < cfg_.tol) {
        out.converged = true;
        break;
      }
    }
    out.value = value(out.factors);
    return out;
  }

  const BlockIndexer& indexer() const { return indexer_; }

 private:
  const CMatrix& rho_;
  BlockIndexer indexer_;
  const SeeSawConfig& cfg_;
};

}  // namespace

int env_threads() {
  if (const char* s = std::getenv("GMEBOUND_THREADS")) {
    const int n = std::atoi(s);
    if (n > 0) return n;
  }
  return 1;
}

Partition::Partition(std::vector<std::vector<int>> blocks, int parties) : parties_(parties) {
  if (parties < 1) throw StateError("partition needs at least one party");
  std::vector<int> seen(static_cast<std::size_t>(parties), 0);
  for (auto& b : blocks) {
    if (b.empty()) throw StateError("partition blocks must be nonempty");
    std::sort(b.begin(), b.end());
    for (int p : b) {
      if (p < 0 || p >= parties) throw StateError("partition party index out of range");
      if (seen[static_cast<std::size_t>(p)]++) throw StateError("partition blocks overlap");
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw StateError("partition blocks do not cover every party");
  }
  std::sort(blocks.begin(), blocks.end(), [](const auto& x, const auto& y) { return x.front() < y.front(); });
  blocks_ = std::move(blocks);
}

Partition Partition::finest(int parties) {
  std::vector<std::vector<int>> blocks;
  for (int p = 0; p < parties; ++p) blocks.push_back({p});
  return Partition(std::move(blocks), parties);
}

std::string Partition::label() const {
  std::string s;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (b) s += '|';
    for (int p : blocks_[b]) {
      if (parties_ <= 26) {
        s += static_cast<char>('A' + p);
      } else {
        s += std::to_string(p + 1) + ".";
      }
    }
  }
  return s;
}

std::vector<Partition> enumerate_partitions(int K, int m) {
  if (K < 1 || K > kMaxPartitionParties) {
    throw StateError("enumerate_partitions supports 1 <= K <= " + std::to_string(kMaxPartitionParties));
  }
  if (m < 1 || m > K) throw StateError("enumerate_partitions needs 1 <= m <= K");
  std::vector<Partition> out;
  // Restricted growth strings a[0] = 0, a[i] <= 1 + max(a[0..i-1]).
  std::vector<int> a(static_cast<std::size_t>(K), 0);
  auto emit = [&] {
    std::vector<std::vector<int>> blocks(static_cast<std::size_t>(m));
    for (int i = 0; i < K; ++i) blocks[static_cast<std::size_t>(a[static_cast<std::size_t>(i)])].push_back(i);
    out.emplace_back(std::move(blocks), K);
  };
  auto rec = [&](auto&& self, int i, int used) -> void {
    if (i == K) {
      if (used == m) emit();
      return;
    }
    // Not enough positions left to open the remaining blocks.
    if (used + (K - i) < m) return;
    for (int v = 0; v <= std::min(used, m - 1); ++v) {
      a[static_cast<std::size_t>(i)] = v;
      self(self, i + 1, std::max(used, v + 1));
    }
  };
  rec(rec, 1, 1);
  return out;
}

BlockIndexer::BlockIndexer(const MultipartiteDims& dims, const Partition& partition) : dim_(dims.total()) {
  if (partition.parties() != dims.parties()) throw StateError("partition does not match the number of parties");
  const auto& blocks = partition.blocks();
  for (const auto& b : blocks) block_dims_.push_back(block_dimension(dims, b));
  local_.resize(static_cast<std::size_t>(dim_) * blocks.size());
  for (int i = 0; i < dim_; ++i) {
    const auto dg = dims.digits(i);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      int idx = 0;
      for (int p : blocks[b]) idx = idx * dims[p] + dg[static_cast<std::size_t>(p)];
      local_[static_cast<std::size_t>(i) * blocks.size() + b] = idx;
    }
  }
}

PureState ProductState::to_pure(const MultipartiteDims& dims) const {
  BlockIndexer ix(dims, partition);
  CVector x(ix.dim());
  for (int i = 0; i < ix.dim(); ++i) {
    cplx amp = 1.0;
    for (int b = 0; b < ix.blocks(); ++b) amp *= factors[static_cast<std::size_t>(b)](ix.local(i, b));
    x(i) = amp;
  }
  return PureState::normalized(std::move(x), dims);
}

RadiusResult seesaw_L(const DensityMatrix& rho, const Partition& partition, const SeeSawConfig& cfg) {
  if (cfg.max_sweeps < 1 || !(cfg.tol > 0.0)) throw StateError("see-saw config needs max_sweeps >= 1 and tol > 0");
  const SeeSaw solver(rho, partition, cfg);
  const int restarts = cfg.restarts_for(rho.dim());
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(restarts));
  parallel_for(restarts, cfg.threads > 0 ? cfg.threads : env_threads(), [&](int r) {
    outcomes[static_cast<std::size_t>(r)] =
        solver.run(splitmix64(cfg.seed ^ splitmix64(static_cast<std::uint64_t>(r))));
  });

  // Max value; ties resolved by the lowest restart index.
  std::size_t best = 0;
  double worst_step = 0.0;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    if (outcomes[r].value > outcomes[best].value) best = r;
    worst_step = std::min(worst_step, outcomes[r].worst_step);
  }
  RadiusResult res{.L = outcomes[best].value,
                   .argmax = ProductState{partition, std::move(outcomes[best].factors)},
                   .partition_used = partition,
                   .sweeps_used = outcomes[best].sweeps,
                   .converged = outcomes[best].converged,
                   .monotone = worst_step >= -1e-12,
                   .worst_step = worst_step};
  return res;
}

RadiusResult product_radius(const DensityMatrix& rho, int m, const SeeSawConfig& cfg) {
  const int K = rho.dims().parties();
  if (m < 2 || m > K) throw StateError("product_radius needs 2 <= m <= K");
  std::optional<RadiusResult> best;
  bool monotone = true;
  double worst = 0.0;
  for (const auto& part : enumerate_partitions(K, m)) {
    auto r = seesaw_L(rho, part, cfg);
    monotone = monotone && r.monotone;
    worst = std::min(worst, r.worst_step);
    if (!best || r.L > best->L) best = std::move(r);
  }
  best->monotone = monotone;
  best->worst_step = worst;
  return std::move(*best);
}

namespace {

// Full vector of a product state, built by Kronecker products in block order
// and then permuted into canonical party order.
CVector embed_product(const std::vector<CVector>& factors, const Partition& partition, const MultipartiteDims& dims) {
  CVector blockwise = factors.front();
  for (std::size_t b = 1; b < factors.size(); ++b) blockwise = kron(blockwise, factors[b]);
  std::vector<int> order;
  for (const auto& b : partition.blocks()) order.insert(order.end(), b.begin(), b.end());
  std::vector<int> perm_dims;
  for (int p : order) perm_dims.push_back(dims[p]);
  const MultipartiteDims block_dims(perm_dims);
  CVector out(dims.total());
  for (int j = 0; j < block_dims.total(); ++j) {
    const auto dg = block_dims.digits(j);
    std::vector<int> canon(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) canon[static_cast<std::size_t>(order[k])] = dg[k];
    out(dims.index(canon)) = blockwise(j);
  }
  return out;
}

}  // namespace

OracleResult oracle_L(const DensityMatrix& rho, const Partition& partition, int samples, std::uint64_t seed) {
  if (samples < 1) throw StateError("oracle_L needs at least one sample");
  const auto& dims = rho.dims();
  if (partition.parties() != dims.parties()) throw StateError("partition does not match the number of parties");
  std::vector<int> bdims;
  for (const auto& b : partition.blocks()) bdims.push_back(block_dimension(dims, b));

  std::mt19937_64 rng(seed);
  std::vector<CVector> best;
  double best_value = -1.0;
  for (int s = 0; s < samples; ++s) {
    std::vector<CVector> f;
    for (int d : bdims) f.push_back(haar_vector(d, rng));
    const CVector x = embed_product(f, partition, dims);
    const double v = x.dot(rho.matrix() * x).real();
    if (v > best_value) {
      best_value = v;
      best = std::move(f);
    }
  }
  OracleResult res;
  res.sampled = best_value;

  // One refinement pass: H_b = V^dagger rho V with V's columns the product
  // states that vary only block b over its basis.
  for (std::size_t b = 0; b < bdims.size(); ++b) {
    CMatrix v(dims.total(), bdims[b]);
    for (int a = 0; a < bdims[b]; ++a) {
      auto f = best;
      f[b] = CVector::Unit(bdims[b], a);
      v.col(a) = embed_product(f, partition, dims);
    }
    const CMatrix h = v.adjoint() * rho.matrix() * v;
    Eigen::SelfAdjointEigenSolver<CMatrix> es((h + h.adjoint()) / 2.0);
    best[b] = es.eigenvectors().col(bdims[b] - 1);
  }
  const CVector x = embed_product(best, partition, dims);
  res.refined = x.dot(rho.matrix() * x).real();
  return res;
}

}  // namespace gmebound::prodrad
