#pragma once

#include "gmebound/qstate.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gmebound::prodrad {

/// Grouping of the parties {0..K-1} into disjoint nonempty blocks. Blocks are
/// kept sorted internally and ordered by their smallest member.
class Partition {
 public:
  Partition(std::vector<std::vector<int>> blocks, int parties);

  /// Every party in its own block.
  static Partition finest(int parties);

  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  int m() const { return static_cast<int>(blocks_.size()); }
  int parties() const { return parties_; }

  /// e.g. "AB|C".
  std::string label() const;

  bool operator==(const Partition&) const = default;

 private:
  std::vector<std::vector<int>> blocks_;
  int parties_ = 0;
};

/// All partitions of K parties into exactly m blocks, ordered by their
/// restricted growth strings.
std::vector<Partition> enumerate_partitions(int K, int m);

inline constexpr int kMaxPartitionParties = 12;

/// Eigensolver failure during a block update.
class SeeSawError : public std::runtime_error {
 public:
  explicit SeeSawError(int block)
      : std::runtime_error("see-saw eigensolver failed on block " + std::to_string(block)), block_(block) {}
  int block() const { return block_; }

 private:
  int block_;
};

struct SeeSawConfig {
  /// 0 selects the default 40 + 10 * dim.
  int restarts = 0;
  int max_sweeps = 500;
  double tol = 1e-12;
  std::uint64_t seed = 0x5eed5eedULL;
  /// Worker threads for restarts; 0 reads GMEBOUND_THREADS (default: 1).
  int threads = 0;

  int restarts_for(int dim) const { return restarts > 0 ? restarts : 40 + 10 * dim; }
};

/// One normalized factor per partition block; factor dimensions are the
/// products of the block's local dimensions in ascending party order.
struct ProductState {
  Partition partition;
  std::vector<CVector> factors;

  /// Full state vector in canonical party order.
  PureState to_pure(const MultipartiteDims& dims) const;
};

struct RadiusResult {
  double L = 0.0;
  ProductState argmax;
  Partition partition_used;
  int sweeps_used = 0;
  bool converged = false;
  /// False if any block update in any restart decreased the objective by
  /// more than 1e-12.
  bool monotone = true;
  /// Most negative per-update change observed (0 when monotone).
  double worst_step = 0.0;
};

/// Maps each basis index of the full system to the factor-local index of
/// every block of a partition.
class BlockIndexer {
 public:
  BlockIndexer(const MultipartiteDims& dims, const Partition& partition);

  int dim() const { return dim_; }
  int blocks() const { return static_cast<int>(block_dims_.size()); }
  int block_dim(int b) const { return block_dims_[static_cast<std::size_t>(b)]; }
  int local(int full_index, int block) const {
    return local_[static_cast<std::size_t>(full_index) * block_dims_.size() + static_cast<std::size_t>(block)];
  }

 private:
  int dim_ = 0;
  std::vector<int> block_dims_;
  std::vector<int> local_;
};

/// Alternating maximization of <phi|rho|phi> over product states of the
/// partition, best of several Haar-random starts.
RadiusResult seesaw_L(const DensityMatrix& rho, const Partition& partition, const SeeSawConfig& cfg);

/// Maximum of seesaw_L over every partition into exactly m blocks.
RadiusResult product_radius(const DensityMatrix& rho, int m, const SeeSawConfig& cfg);

/// Haar sampling over product states plus one eigenvector refinement pass
/// from the best sample. A lower estimate of L, computed without the see-saw
/// machinery.
struct OracleResult {
  double sampled = 0.0;
  double refined = 0.0;
};
OracleResult oracle_L(const DensityMatrix& rho, const Partition& partition, int samples, std::uint64_t seed);

/// Worker count from GMEBOUND_THREADS, at least 1.
int env_threads();

}  // namespace gmebound::prodrad
