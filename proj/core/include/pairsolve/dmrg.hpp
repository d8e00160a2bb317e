// Copyright 2026 The pairsolve Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file dmrg.hpp
 * @brief Infinite-algorithm DMRG for pairing Hamiltonians.
 *
 * Levels are sorted by eps and split at the centre of the list. A hole block
 * grows downward from the centre and a particle block upward, one level
 * each per iteration, so N/2 iterations cover the full system. Every
 * iteration solves the two-block superblock in a fixed total pair sector,
 * forms both reduced density matrices and keeps the m most probable block
 * states.
 *
 * Block bases are graded by pair number. A block stores its Hamiltonian and,
 * for every level it contains, the projected pair-creation operator b+_l and
 * number operator n_l; b_l is the transpose of b+_l. Cross-block couplings
 * are assembled on the fly when the superblock is formed.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "pairsolve/errors.hpp"
#include "pairsolve/model.hpp"

namespace pairsolve::dmrg {

/// Operator that changes the block pair count by a fixed shift. blocks[p]
/// maps sector p to sector p + shift; it is empty (0 rows) when the target
/// sector does not exist.
struct SectorOperator {
  int shift = 0;
  std::vector<Eigen::MatrixXd> blocks;

  [[nodiscard]] std::size_t entries() const noexcept;
};

struct BlockState {
  std::vector<std::size_t> levels;         // model level indices, in growth order
  std::vector<Eigen::Index> sector_dims;   // states per pair count 0..levels.size()
  SectorOperator h_block;                  // shift 0
  std::vector<SectorOperator> pair_raise;  // b+_l per level, shift +1
  std::vector<SectorOperator> number_op;   // n_l per level (eigenvalues 0, 2), shift 0

  [[nodiscard]] Eigen::Index dim() const noexcept;
  [[nodiscard]] std::size_t n_sectors() const noexcept { return sector_dims.size(); }
  [[nodiscard]] Eigen::Index sector_offset(std::size_t p) const noexcept;

  /// Per-level operator storage, counting b+, b and n (three per level).
  [[nodiscard]] std::size_t level_operator_entries() const noexcept;
  [[nodiscard]] std::size_t pair_entries() const noexcept;
  [[nodiscard]] std::size_t number_entries() const noexcept;
  [[nodiscard]] std::size_t hamiltonian_entries() const noexcept { return h_block.entries(); }

  /// Dense d x d matrix of a sector operator in this block's sector-ordered basis.
  [[nodiscard]] Eigen::MatrixXd dense(const SectorOperator& op) const;
};

enum class LevelOrder { eps_ascending, as_given };

std::string_view to_string(LevelOrder order) noexcept;

struct DmrgConfig {
  std::size_t m = 64;
  std::size_t total_pairs = 0;
  double superblock_tol = 1e-11;
  std::size_t max_superblock_iters = 5000;
  std::uint64_t seed = 0;
  LevelOrder level_order = LevelOrder::eps_ascending;

  /// Throws InvalidArgument (m < 2), OddN or InfeasibleTarget.
  void validate(std::size_t n_levels) const;
};

/// Model level indices in the order the blocks consume them (sorted list;
/// the hole block takes entries c-1, c-2, ... and the particle block c, c+1, ...
/// with c = N/2).
std::vector<std::size_t> run_order(const PairingModel& model, const DmrgConfig& config);

/// Exact block for one level: dims {1, 1}, H = diag(0, 2 eps).
BlockState single_level_block(const PairingModel& model, std::size_t level);

struct BlockPair {
  BlockState hole;
  BlockState particle;
};

/// Blocks for the first iteration: the two levels adjacent to the centre split.
BlockPair init_blocks(const PairingModel& model, const DmrgConfig& config);

/// Adds one level: new basis = old basis x {empty, occupied}, regrouped by sector
/// (within sector P: old sector P with the level empty, then old P-1 with it occupied).
BlockState grow_block(const BlockState& block, std::size_t level, const PairingModel& model);

/// Pair number targeted by the 2k-level superblock at iteration k:
/// round(2kM/N) clipped to [max(0, M - (N - 2k)), min(2k, M)].
std::size_t target_pairs(std::size_t k, std::size_t n_levels, std::size_t total_pairs);

/// Amplitudes on hole x particle restricted to a total pair number. Stored as
/// one column-major block per hole sector p (paired with particle sector target - p).
class SuperblockVector {
 public:
  SuperblockVector() = default;
  SuperblockVector(std::vector<Eigen::Index> hole_dims, std::vector<Eigen::Index> particle_dims,
                   std::size_t target);

  [[nodiscard]] std::size_t target() const noexcept { return target_; }
  [[nodiscard]] Eigen::Index size() const noexcept { return data_.size(); }
  [[nodiscard]] const std::vector<Eigen::Index>& hole_dims() const noexcept { return hole_dims_; }
  [[nodiscard]] const std::vector<Eigen::Index>& particle_dims() const noexcept {
    return particle_dims_;
  }

  /// True when hole sector p pairs with an existing, non-empty particle sector.
  [[nodiscard]] bool has_block(std::size_t p) const noexcept;
  [[nodiscard]] Eigen::Index block_offset(std::size_t p) const noexcept { return offsets_[p]; }

  Eigen::Map<Eigen::MatrixXd> block(std::size_t p);
  Eigen::Map<const Eigen::MatrixXd> block(std::size_t p) const;

  Eigen::VectorXd& data() noexcept { return data_; }
  const Eigen::VectorXd& data() const noexcept { return data_; }

 private:
  std::vector<Eigen::Index> hole_dims_;
  std::vector<Eigen::Index> particle_dims_;
  std::size_t target_ = 0;
  std::vector<Eigen::Index> offsets_;  // -1 when absent
  Eigen::VectorXd data_;
};

/// Matrix-free superblock Hamiltonian in one pair sector:
///   H_h x 1 + 1 x H_p + sum_{i in h, j in p} v1_ij (b+_i x b_j + b_i x b+_j) + 2 v2_ij n_i x n_j.
/// The hole x particle coupling matrices are factored by SVD so each apply
/// costs one product per retained singular value rather than per level pair.
class SuperblockHamiltonian {
 public:
  SuperblockHamiltonian(const BlockState& hole, const BlockState& particle,
                        const PairingModel& model, std::size_t target);

  [[nodiscard]] Eigen::Index dim() const noexcept { return layout_.size(); }
  [[nodiscard]] const SuperblockVector& layout() const noexcept { return layout_; }

  void apply(const Eigen::Ref<const Eigen::VectorXd>& x, Eigen::Ref<Eigen::VectorXd> y) const;

  /// Entries held by the factored cross-block operators.
  [[nodiscard]] std::size_t workspace_entries() const noexcept;
  [[nodiscard]] std::size_t hop_rank() const noexcept { return hop_hole_.size(); }
  [[nodiscard]] std::size_t monopole_rank() const noexcept { return mono_hole_.size(); }

 private:
  const BlockState& hole_;
  const BlockState& particle_;
  SuperblockVector layout_;
  std::vector<SectorOperator> hop_hole_, hop_particle_;    // shift +1 each
  std::vector<SectorOperator> mono_hole_, mono_particle_;  // shift 0 each
};

struct SuperblockSolution {
  double energy = 0.0;
  SuperblockVector psi;
  double residual = 0.0;
  std::size_t applies = 0;
  std::size_t workspace_entries = 0;
};

/// Lowest state of the superblock in the target sector. Throws EmptySector
/// if the sector has no states, NoConvergence if the eigensolver stalls.
SuperblockSolution superblock_ground(const BlockState& hole, const BlockState& particle,
                                     const PairingModel& model, std::size_t target,
                                     const DmrgConfig& config,
                                     const SuperblockVector* guess = nullptr,
                                     std::uint64_t seed_offset = 0);

enum class BlockSide { hole, particle };

/// Sector-diagonal density matrix: sectors[p] is d_p x d_p.
struct DensityMatrix {
  std::vector<Eigen::MatrixXd> sectors;

  [[nodiscard]] double trace() const;
};

/// Partial trace of |psi><psi| over the opposite block. Throws NotNormalized
/// unless | ||psi|| - 1 | <= 1e-12.
DensityMatrix reduced_density(const SuperblockVector& psi, BlockSide side);

struct Truncation {
  BlockState block;
  double weight = 0.0;                 // discarded probability, in [0, 1]
  std::vector<Eigen::MatrixXd> basis;  // kept eigenvectors per sector (d_p x kept_p)
};

/// Keeps the m largest density eigenvalues across all sectors (ties: lower
/// pair count, then basis order) and projects every stored operator. Blocks
/// with dim <= m are returned unchanged with weight 0.
Truncation truncate(const BlockState& block, const DensityMatrix& rho, std::size_t m);

struct IterationRecord {
  std::size_t iteration = 0;
  std::size_t superblock_levels = 0;
  std::size_t target_pairs = 0;
  double energy = 0.0;
  double trunc_weight_hole = 0.0;
  double trunc_weight_particle = 0.0;
  Eigen::Index dim_hole = 0;
  Eigen::Index dim_particle = 0;
  Eigen::Index superblock_dim = 0;
  double residual = 0.0;
  std::size_t applies = 0;
  std::size_t stored_entries = 0;  // block operators + block Hamiltonians after truncation
};

/// Storage at the iteration where stored entries peaked.
struct MemorySnapshot {
  std::size_t iteration = 0;
  std::size_t hole_pair_entries = 0;        // b+ and b, hole block
  std::size_t hole_number_entries = 0;
  std::size_t particle_pair_entries = 0;
  std::size_t particle_number_entries = 0;
  std::size_t hamiltonian_entries = 0;      // both block Hamiltonians
  [[nodiscard]] std::size_t block_operator_entries() const noexcept {
    return hole_pair_entries + hole_number_entries + particle_pair_entries +
           particle_number_entries;
  }
  [[nodiscard]] std::size_t total() const noexcept {
    return block_operator_entries() + hamiltonian_entries;
  }
};

struct DmrgResult {
  std::vector<IterationRecord> iterations;
  double final_energy = 0.0;
  std::size_t memory_peak_entries = 0;
  MemorySnapshot peak;
  /// Transient storage (grown blocks before truncation, factored couplings,
  /// eigensolver vectors); reported, not part of the block-operator bound.
  std::size_t workspace_peak_entries = 0;
  std::size_t m = 0;
  std::size_t n_levels = 0;
  std::size_t total_pairs = 0;
  std::vector<std::size_t> level_order;
  double wall_seconds = 0.0;
};

/// Everything an iteration produced, for diagnostics and invariant checks.
struct IterationView {
  const IterationRecord& record;
  const BlockState& hole;        // before truncation
  const BlockState& particle;
  const SuperblockVector& psi;
  const DensityMatrix& rho_hole;
  const DensityMatrix& rho_particle;
};

using IterationObserver = std::function<void(const IterationView&)>;

/// Error raised inside an iteration; the kind is preserved.
class IterationError : public Error {
 public:
  IterationError(ErrorKind kind, std::size_t iteration, const std::string& message)
      : Error(kind, "iteration " + std::to_string(iteration) + ": " + message),
        iteration_(iteration) {}
  [[nodiscard]] std::size_t iteration() const noexcept { return iteration_; }

 private:
  std::size_t iteration_;
};

DmrgResult run_infinite(const PairingModel& model, const DmrgConfig& config,
                        const IterationObserver& observer = {});

struct MemoryReport {
  std::size_t m = 0;
  std::size_t n_levels = 0;
  MemorySnapshot peak;
  std::size_t block_operator_bound = 0;  // 3 m^2 N
  std::size_t overhead_bound = 0;        // 2 m^2: the two block Hamiltonians
  std::size_t workspace_peak_entries = 0;
  bool within_bound = false;
  double peak_megabytes = 0.0;           // block operators + Hamiltonians, 8 bytes/entry
};

MemoryReport memory_report(const DmrgResult& result);

}  // namespace pairsolve::dmrg
