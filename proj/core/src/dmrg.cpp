// Copyright 2026 The pairsolve Authors
// SPDX-License-Identifier: Apache-2.0

#include "pairsolve/dmrg.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>

#include "pairsolve/eigensolver.hpp"

namespace pairsolve::dmrg {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;

constexpr double kNormTolerance = 1e-12;
// Density eigenvalues below this are treated as exact zeros for ordering.
constexpr double kZeroWeight = 1e-14;
// Singular values of the cross-block couplings below this fraction of the largest are dropped.
constexpr double kCouplingRankTolerance = 1e-14;
// Superblocks up to this dimension are diagonalized densely.
constexpr std::size_t kDenseSuperblock = 48;
constexpr std::size_t kSuperblockSubspace = 24;

Index dim_or_zero(const std::vector<Index>& dims, long p) {
  if (p < 0 || p >= static_cast<long>(dims.size())) return 0;
  return dims[static_cast<std::size_t>(p)];
}

SectorOperator zero_operator(const std::vector<Index>& dims, int shift) {
  SectorOperator op;
  op.shift = shift;
  op.blocks.reserve(dims.size());
  for (std::size_t p = 0; p < dims.size(); ++p) {
    op.blocks.emplace_back(MatrixXd::Zero(dim_or_zero(dims, static_cast<long>(p) + shift), dims[p]));
  }
  return op;
}

// acc += c * op, both on the same sector layout.
void axpy(SectorOperator& acc, double c, const SectorOperator& op) {
  for (std::size_t p = 0; p < acc.blocks.size(); ++p) {
    if (acc.blocks[p].size() != 0) acc.blocks[p] += c * op.blocks[p];
  }
}

// Embeds an operator of the old block into the grown block as O x 1.
SectorOperator embed(const SectorOperator& op, const std::vector<Index>& old_dims,
                     const std::vector<Index>& new_dims) {
  SectorOperator out = zero_operator(new_dims, op.shift);
  const int s = op.shift;
  for (std::size_t np = 0; np < new_dims.size(); ++np) {
    auto& dst = out.blocks[np];
    if (dst.size() == 0) continue;
    const long P = static_cast<long>(np);
    // New level empty: old sector P -> old P + s.
    if (P < static_cast<long>(old_dims.size())) {
      const auto& src = op.blocks[static_cast<std::size_t>(P)];
      if (src.size() != 0) dst.topLeftCorner(src.rows(), src.cols()) = src;
    }
    // New level occupied: old sector P - 1 -> old P - 1 + s.
    if (P >= 1) {
      const auto& src = op.blocks[static_cast<std::size_t>(P - 1)];
      if (src.size() != 0) {
        const Index row0 = dim_or_zero(old_dims, P + s);
        const Index col0 = dim_or_zero(old_dims, P);
        dst.block(row0, col0, src.rows(), src.cols()) = src;
      }
    }
  }
  return out;
}

SectorOperator project(const SectorOperator& op, const std::vector<MatrixXd>& w) {
  SectorOperator out;
  out.shift = op.shift;
  out.blocks.resize(op.blocks.size());
  for (std::size_t p = 0; p < op.blocks.size(); ++p) {
    const long q = static_cast<long>(p) + op.shift;
    if (q < 0 || q >= static_cast<long>(w.size())) {
      out.blocks[p] = MatrixXd::Zero(0, w[p].cols());
      continue;
    }
    out.blocks[p] = w[static_cast<std::size_t>(q)].transpose() * op.blocks[p] * w[p];
  }
  return out;
}

}  // namespace

std::size_t SectorOperator::entries() const noexcept {
  std::size_t n = 0;
  for (const auto& b : blocks) n += static_cast<std::size_t>(b.size());
  return n;
}

Index BlockState::dim() const noexcept {
  return std::accumulate(sector_dims.begin(), sector_dims.end(), Index{0});
}

Index BlockState::sector_offset(std::size_t p) const noexcept {
  return std::accumulate(sector_dims.begin(), sector_dims.begin() + static_cast<long>(p), Index{0});
}

std::size_t BlockState::pair_entries() const noexcept {
  std::size_t n = 0;
  for (const auto& op : pair_raise) n += 2 * op.entries();
  return n;
}

std::size_t BlockState::number_entries() const noexcept {
  std::size_t n = 0;
  for (const auto& op : number_op) n += op.entries();
  return n;
}

std::size_t BlockState::level_operator_entries() const noexcept {
  return pair_entries() + number_entries();
}

MatrixXd BlockState::dense(const SectorOperator& op) const {
  const Index d = dim();
  MatrixXd out = MatrixXd::Zero(d, d);
  for (std::size_t p = 0; p < op.blocks.size(); ++p) {
    const auto& b = op.blocks[p];
    if (b.size() == 0) continue;
    const auto q = static_cast<std::size_t>(static_cast<long>(p) + op.shift);
    out.block(sector_offset(q), sector_offset(p), b.rows(), b.cols()) = b;
  }
  return out;
}

std::string_view to_string(LevelOrder order) noexcept {
  return order == LevelOrder::eps_ascending ? "eps_ascending" : "as_given";
}

void DmrgConfig::validate(std::size_t n_levels) const {
  if (m < 2) throw Error(ErrorKind::InvalidArgument, "m must be at least 2");
  if (n_levels < 2 || n_levels % 2 != 0) {
    throw Error(ErrorKind::OddN, "the infinite algorithm needs an even level count >= 2, got " +
                                     std::to_string(n_levels));
  }
  if (total_pairs > n_levels) {
    throw Error(ErrorKind::InfeasibleTarget, std::to_string(total_pairs) +
                                                 " pairs do not fit on " +
                                                 std::to_string(n_levels) + " levels");
  }
  if (!(superblock_tol > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "superblock tolerance must be positive");
  }
}

std::vector<std::size_t> run_order(const PairingModel& model, const DmrgConfig& config) {
  if (config.level_order == LevelOrder::eps_ascending) return eps_ascending_order(model);
  std::vector<std::size_t> order(model.n_levels());
  std::iota(order.begin(), order.end(), std::size_t{0});
  return order;
}

BlockState single_level_block(const PairingModel& model, std::size_t level) {
  BlockState b;
  b.levels = {level};
  b.sector_dims = {1, 1};
  b.h_block = zero_operator(b.sector_dims, 0);
  b.h_block.blocks[1](0, 0) = 2.0 * model.eps(static_cast<Index>(level));
  SectorOperator raise = zero_operator(b.sector_dims, 1);
  raise.blocks[0](0, 0) = 1.0;
  SectorOperator number = zero_operator(b.sector_dims, 0);
  number.blocks[1](0, 0) = 2.0;
  b.pair_raise.push_back(std::move(raise));
  b.number_op.push_back(std::move(number));
  return b;
}

BlockPair init_blocks(const PairingModel& model, const DmrgConfig& config) {
  config.validate(model.n_levels());
  const auto order = run_order(model, config);
  const std::size_t centre = model.n_levels() / 2;
  return {single_level_block(model, order[centre - 1]), single_level_block(model, order[centre])};
}

BlockState grow_block(const BlockState& block, std::size_t level, const PairingModel& model) {
  if (std::find(block.levels.begin(), block.levels.end(), level) != block.levels.end()) {
    throw Error(ErrorKind::InvalidArgument, "level " + std::to_string(level) + " already in block");
  }
  const auto& old_dims = block.sector_dims;
  const std::size_t n_old = old_dims.size();
  std::vector<Index> new_dims(n_old + 1, 0);
  for (std::size_t p = 0; p <= n_old; ++p) {
    new_dims[p] = dim_or_zero(old_dims, static_cast<long>(p)) +
                  dim_or_zero(old_dims, static_cast<long>(p) - 1);
  }

  const auto l = static_cast<Index>(level);
  // Couplings of the new level to the block: C = sum_j v1_lj b+_j, N = sum_j 4 v2_lj n_j.
  SectorOperator hop = zero_operator(old_dims, 1);
  SectorOperator mono = zero_operator(old_dims, 0);
  for (std::size_t a = 0; a < block.levels.size(); ++a) {
    const auto j = static_cast<Index>(block.levels[a]);
    if (model.v1(l, j) != 0.0) axpy(hop, model.v1(l, j), block.pair_raise[a]);
    if (model.v2(l, j) != 0.0) axpy(mono, 4.0 * model.v2(l, j), block.number_op[a]);
  }

  BlockState out;
  out.levels = block.levels;
  out.levels.push_back(level);
  out.sector_dims = new_dims;
  out.h_block = embed(block.h_block, old_dims, new_dims);
  const double pair_energy = 2.0 * model.eps(l);
  for (std::size_t np = 0; np < new_dims.size(); ++np) {
    auto& h = out.h_block.blocks[np];
    const long P = static_cast<long>(np);
    const Index empty = dim_or_zero(old_dims, P);
    const Index occ = dim_or_zero(old_dims, P - 1);
    if (occ == 0) continue;
    auto occ_block = h.block(empty, empty, occ, occ);
    occ_block.diagonal().array() += pair_energy;
    occ_block += mono.blocks[static_cast<std::size_t>(P - 1)];
    if (empty != 0) {
      const auto& c = hop.blocks[static_cast<std::size_t>(P - 1)];  // old P-1 -> old P
      h.block(0, empty, empty, occ) = c;
      h.block(empty, 0, occ, empty) = c.transpose();
    }
  }

  for (const auto& op : block.pair_raise) out.pair_raise.push_back(embed(op, old_dims, new_dims));
  for (const auto& op : block.number_op) out.number_op.push_back(embed(op, old_dims, new_dims));

  SectorOperator raise = zero_operator(new_dims, 1);
  SectorOperator number = zero_operator(new_dims, 0);
  for (std::size_t np = 0; np < new_dims.size(); ++np) {
    const long P = static_cast<long>(np);
    const Index empty = dim_or_zero(old_dims, P);
    const Index occ = dim_or_zero(old_dims, P - 1);
    if (occ != 0) number.blocks[np].bottomRightCorner(occ, occ).diagonal().setConstant(2.0);
    // (old P, empty) in sector P -> (old P, occupied) in sector P + 1.
    if (empty != 0 && np + 1 < new_dims.size()) {
      const Index row0 = dim_or_zero(old_dims, P + 1);
      raise.blocks[np].block(row0, 0, empty, empty).setIdentity();
    }
  }
  out.pair_raise.push_back(std::move(raise));
  out.number_op.push_back(std::move(number));
  return out;
}

std::size_t target_pairs(std::size_t k, std::size_t n_levels, std::size_t total_pairs) {
  if (n_levels == 0 || k == 0 || 2 * k > n_levels) {
    throw Error(ErrorKind::InvalidArgument, "iteration " + std::to_string(k) +
                                                " outside [1, N/2] for N = " +
                                                std::to_string(n_levels));
  }
  const double ideal = 2.0 * static_cast<double>(k) * static_cast<double>(total_pairs) /
                       static_cast<double>(n_levels);
  const auto rounded = static_cast<long>(std::lround(ideal));
  const long outside = static_cast<long>(n_levels - 2 * k);
  const long lo = std::max(0L, static_cast<long>(total_pairs) - outside);
  const long hi = static_cast<long>(std::min(2 * k, total_pairs));
  return static_cast<std::size_t>(std::clamp(rounded, lo, hi));
}

// ---------------------------------------------------------------------------

SuperblockVector::SuperblockVector(std::vector<Index> hole_dims, std::vector<Index> particle_dims,
                                   std::size_t target)
    : hole_dims_(std::move(hole_dims)), particle_dims_(std::move(particle_dims)), target_(target) {
  offsets_.assign(hole_dims_.size(), -1);
  Index total = 0;
  for (std::size_t p = 0; p < hole_dims_.size(); ++p) {
    const long q = static_cast<long>(target) - static_cast<long>(p);
    const Index cols = dim_or_zero(particle_dims_, q);
    if (hole_dims_[p] == 0 || cols == 0) continue;
    offsets_[p] = total;
    total += hole_dims_[p] * cols;
  }
  data_ = Eigen::VectorXd::Zero(total);
}

bool SuperblockVector::has_block(std::size_t p) const noexcept {
  return p < offsets_.size() && offsets_[p] >= 0;
}

Eigen::Map<MatrixXd> SuperblockVector::block(std::size_t p) {
  const Index cols = particle_dims_[target_ - p];
  return {data_.data() + offsets_[p], hole_dims_[p], cols};
}

Eigen::Map<const MatrixXd> SuperblockVector::block(std::size_t p) const {
  const Index cols = particle_dims_[target_ - p];
  return {data_.data() + offsets_[p], hole_dims_[p], cols};
}

namespace {

// Factors sum_{a,b} coupling(a, b) A_a x B_b into sum_r (sum_a U_ar A_a) x (s_r sum_b W_br B_b).
void factor_coupling(const MatrixXd& coupling, const std::vector<SectorOperator>& hole_ops,
                     const std::vector<Index>& hole_dims,
                     const std::vector<SectorOperator>& particle_ops,
                     const std::vector<Index>& particle_dims, double particle_scale,
                     std::vector<SectorOperator>& hole_out,
                     std::vector<SectorOperator>& particle_out) {
  if (coupling.size() == 0 || (coupling.array() == 0.0).all()) return;
  Eigen::JacobiSVD<MatrixXd> svd(coupling, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double cutoff = kCouplingRankTolerance * s(0);
  const int shift = hole_ops.front().shift;
  for (Index r = 0; r < s.size(); ++r) {
    if (!(s(r) > cutoff)) break;
    SectorOperator a = zero_operator(hole_dims, shift);
    for (std::size_t i = 0; i < hole_ops.size(); ++i) {
      const double u = svd.matrixU()(static_cast<Index>(i), r);
      if (u != 0.0) axpy(a, u, hole_ops[i]);
    }
    SectorOperator b = zero_operator(particle_dims, shift);
    for (std::size_t j = 0; j < particle_ops.size(); ++j) {
      const double w = svd.matrixV()(static_cast<Index>(j), r);
      if (w != 0.0) axpy(b, particle_scale * s(r) * w, particle_ops[j]);
    }
    hole_out.push_back(std::move(a));
    particle_out.push_back(std::move(b));
  }
}

}  // namespace

SuperblockHamiltonian::SuperblockHamiltonian(const BlockState& hole, const BlockState& particle,
                                             const PairingModel& model, std::size_t target)
    : hole_(hole), particle_(particle), layout_(hole.sector_dims, particle.sector_dims, target) {
  const auto nh = static_cast<Index>(hole.levels.size());
  const auto np = static_cast<Index>(particle.levels.size());
  MatrixXd v1(nh, np);
  MatrixXd v2(nh, np);
  for (Index a = 0; a < nh; ++a) {
    for (Index b = 0; b < np; ++b) {
      const auto i = static_cast<Index>(hole.levels[static_cast<std::size_t>(a)]);
      const auto j = static_cast<Index>(particle.levels[static_cast<std::size_t>(b)]);
      v1(a, b) = model.v1(i, j);
      v2(a, b) = model.v2(i, j);
    }
  }
  factor_coupling(v1, hole.pair_raise, hole.sector_dims, particle.pair_raise,
                  particle.sector_dims, 1.0, hop_hole_, hop_particle_);
  // Ordered double sum: v2_ij n_i n_j + v2_ji n_j n_i.
  factor_coupling(v2, hole.number_op, hole.sector_dims, particle.number_op, particle.sector_dims,
                  2.0, mono_hole_, mono_particle_);
}

std::size_t SuperblockHamiltonian::workspace_entries() const noexcept {
  std::size_t n = 0;
  for (const auto* ops : {&hop_hole_, &hop_particle_, &mono_hole_, &mono_particle_}) {
    for (const auto& op : *ops) n += op.entries();
  }
  return n;
}

void SuperblockHamiltonian::apply(const Eigen::Ref<const Eigen::VectorXd>& x,
                                  Eigen::Ref<Eigen::VectorXd> y) const {
  const auto& hd = layout_.hole_dims();
  const auto& pd = layout_.particle_dims();
  const std::size_t t = layout_.target();
  auto in = [&](std::size_t p) {
    return Eigen::Map<const MatrixXd>(x.data() + layout_.block_offset(p), hd[p], pd[t - p]);
  };
  y.setZero();
  MatrixXd tmp;
  for (std::size_t p = 0; p < hd.size(); ++p) {
    if (!layout_.has_block(p)) continue;
    const std::size_t q = t - p;
    Eigen::Map<MatrixXd> out(y.data() + layout_.block_offset(p), hd[p], pd[q]);
    const auto xp = in(p);
    out.noalias() += hole_.h_block.blocks[p] * xp;
    out.noalias() += xp * particle_.h_block.blocks[q];
    for (std::size_t r = 0; r < mono_hole_.size(); ++r) {
      tmp.noalias() = mono_hole_[r].blocks[p] * xp;
      out.noalias() += tmp * mono_particle_[r].blocks[q];
    }
    // b+ on the hole side, b on the particle side: from (p-1, q+1).
    if (p >= 1 && layout_.has_block(p - 1)) {
      const auto xm = in(p - 1);
      for (std::size_t r = 0; r < hop_hole_.size(); ++r) {
        tmp.noalias() = hop_hole_[r].blocks[p - 1] * xm;
        out.noalias() += tmp * hop_particle_[r].blocks[q];
      }
    }
    // b on the hole side, b+ on the particle side: from (p+1, q-1).
    if (layout_.has_block(p + 1)) {
      const auto xp1 = in(p + 1);
      for (std::size_t r = 0; r < hop_hole_.size(); ++r) {
        tmp.noalias() = hop_hole_[r].blocks[p].transpose() * xp1;
        out.noalias() += tmp * hop_particle_[r].blocks[q - 1].transpose();
      }
    }
  }
}

namespace {

// Carries the truncated ground state into the grown blocks of the next
// iteration, filling the new hole level first when the target rises.
SuperblockVector embed_guess(const SuperblockVector& prev, const BlockState& hole,
                             const BlockState& particle, std::size_t target) {
  SuperblockVector guess(hole.sector_dims, particle.sector_dims, target);
  if (target < prev.target() || target > prev.target() + 2) return guess;
  const std::size_t rise = target - prev.target();
  const std::size_t hole_occ = rise >= 1 ? 1 : 0;
  const std::size_t part_occ = rise >= 2 ? 1 : 0;
  const auto& old_h = prev.hole_dims();
  const auto& old_p = prev.particle_dims();
  for (std::size_t p = 0; p < old_h.size(); ++p) {
    if (!prev.has_block(p)) continue;
    const std::size_t q = prev.target() - p;
    const std::size_t new_p = p + hole_occ;
    if (!guess.has_block(new_p)) continue;
    const Index row0 = hole_occ ? dim_or_zero(old_h, static_cast<long>(new_p)) : 0;
    const Index col0 = part_occ ? dim_or_zero(old_p, static_cast<long>(q + part_occ)) : 0;
    const auto src = prev.block(p);
    guess.block(new_p).block(row0, col0, src.rows(), src.cols()) = src;
  }
  return guess;
}

}  // namespace

SuperblockSolution superblock_ground(const BlockState& hole, const BlockState& particle,
                                     const PairingModel& model, std::size_t target,
                                     const DmrgConfig& config, const SuperblockVector* guess,
                                     std::uint64_t seed_offset) {
  SuperblockHamiltonian h(hole, particle, model, target);
  if (h.dim() == 0) {
    throw Error(ErrorKind::EmptySector, "no superblock states hold " + std::to_string(target) +
                                            " pairs");
  }
  EigenOptions eo;
  eo.k = 1;
  eo.tol = config.superblock_tol;
  eo.seed = config.seed + seed_offset;
  eo.max_applies = config.max_superblock_iters;
  eo.dense_cutoff = kDenseSuperblock;
  eo.max_subspace = kSuperblockSubspace;
  std::vector<Eigen::VectorXd> guesses;
  if (guess != nullptr && guess->size() == h.dim() && guess->data().norm() > 0.0) {
    guesses.push_back(guess->data());
  }
  const auto op = [&h](const Eigen::Ref<const Eigen::VectorXd>& x, Eigen::Ref<Eigen::VectorXd> y) {
    h.apply(x, y);
  };
  const auto pairs = lowest_eigenpairs(op, h.dim(), eo, guesses);
  SuperblockSolution sol;
  sol.energy = pairs.values.front();
  sol.psi = h.layout();
  sol.psi.data() = pairs.vectors.col(0);
  sol.psi.data() /= sol.psi.data().norm();
  sol.residual = pairs.residual;
  sol.applies = pairs.applies;
  // Factored couplings plus the search space and its image.
  sol.workspace_entries =
      h.workspace_entries() + 2 * static_cast<std::size_t>(h.dim()) *
                                  std::min(static_cast<std::size_t>(h.dim()), kSuperblockSubspace);
  return sol;
}

double DensityMatrix::trace() const {
  double t = 0.0;
  for (const auto& s : sectors) t += s.trace();
  return t;
}

DensityMatrix reduced_density(const SuperblockVector& psi, BlockSide side) {
  const double norm = psi.data().norm();
  if (!(std::abs(norm - 1.0) <= kNormTolerance)) {
    throw Error(ErrorKind::NotNormalized, "||psi|| = " + std::to_string(norm));
  }
  const auto& hd = psi.hole_dims();
  const auto& pd = psi.particle_dims();
  const auto& dims = side == BlockSide::hole ? hd : pd;
  DensityMatrix rho;
  rho.sectors.reserve(dims.size());
  for (auto d : dims) rho.sectors.emplace_back(MatrixXd::Zero(d, d));
  for (std::size_t p = 0; p < hd.size(); ++p) {
    if (!psi.has_block(p)) continue;
    const auto b = psi.block(p);
    if (side == BlockSide::hole) {
      rho.sectors[p].noalias() += b * b.transpose();
    } else {
      rho.sectors[psi.target() - p].noalias() += b.transpose() * b;
    }
  }
  return rho;
}

Truncation truncate(const BlockState& block, const DensityMatrix& rho, std::size_t m) {
  if (rho.sectors.size() != block.sector_dims.size()) {
    throw Error(ErrorKind::DimensionMismatch, "density matrix sectors do not match the block");
  }
  for (std::size_t p = 0; p < rho.sectors.size(); ++p) {
    if (rho.sectors[p].rows() != block.sector_dims[p]) {
      throw Error(ErrorKind::DimensionMismatch,
                  "density sector " + std::to_string(p) + " has the wrong dimension");
    }
  }
  Truncation out;
  if (block.dim() <= static_cast<Index>(m)) {
    out.block = block;
    for (auto d : block.sector_dims) out.basis.emplace_back(MatrixXd::Identity(d, d));
    return out;
  }

  struct Candidate {
    double weight;
    std::size_t sector;
    Index rank;  // position in descending order within the sector
  };
  std::vector<Candidate> candidates;
  std::vector<MatrixXd> vectors(rho.sectors.size());  // columns in descending eigenvalue order
  for (std::size_t p = 0; p < rho.sectors.size(); ++p) {
    const Index d = block.sector_dims[p];
    if (d == 0) continue;
    const MatrixXd sym = 0.5 * (rho.sectors[p] + rho.sectors[p].transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(sym);
    vectors[p] = es.eigenvectors().rowwise().reverse();
    for (Index r = 0; r < d; ++r) {
      double w = es.eigenvalues()(d - 1 - r);
      if (w < kZeroWeight) w = 0.0;
      candidates.push_back({w, p, r});
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return std::tie(b.weight, a.sector, a.rank) < std::tie(a.weight, b.sector, b.rank);
  });

  std::vector<Index> kept(rho.sectors.size(), 0);
  double kept_weight = 0.0;
  for (std::size_t c = 0; c < m && c < candidates.size(); ++c) {
    ++kept[candidates[c].sector];
    kept_weight += candidates[c].weight;
  }
  // Within a sector the kept states are always the leading eigenvectors.
  out.basis.resize(rho.sectors.size());
  for (std::size_t p = 0; p < rho.sectors.size(); ++p) {
    out.basis[p] = kept[p] > 0 ? MatrixXd(vectors[p].leftCols(kept[p]))
                               : MatrixXd::Zero(block.sector_dims[p], 0);
  }
  out.weight = std::clamp(1.0 - kept_weight, 0.0, 1.0);

  BlockState& nb = out.block;
  nb.levels = block.levels;
  nb.sector_dims = kept;
  nb.h_block = project(block.h_block, out.basis);
  for (const auto& op : block.pair_raise) nb.pair_raise.push_back(project(op, out.basis));
  for (const auto& op : block.number_op) nb.number_op.push_back(project(op, out.basis));
  return out;
}

namespace {

// Rotates psi into the kept bases of both blocks.
SuperblockVector project_state(const SuperblockVector& psi, const Truncation& hole,
                               const Truncation& particle) {
  SuperblockVector out(hole.block.sector_dims, particle.block.sector_dims, psi.target());
  for (std::size_t p = 0; p < psi.hole_dims().size(); ++p) {
    if (!psi.has_block(p) || !out.has_block(p)) continue;
    const std::size_t q = psi.target() - p;
    out.block(p).noalias() = hole.basis[p].transpose() * psi.block(p) * particle.basis[q];
  }
  return out;
}

}  // namespace

DmrgResult run_infinite(const PairingModel& model, const DmrgConfig& config,
                        const IterationObserver& observer) {
  const auto start = std::chrono::steady_clock::now();
  model.validate();
  config.validate(model.n_levels());
  const std::size_t n = model.n_levels();
  const std::size_t centre = n / 2;

  DmrgResult result;
  result.m = config.m;
  result.n_levels = n;
  result.total_pairs = config.total_pairs;
  result.level_order = run_order(model, config);
  const auto& order = result.level_order;

  BlockPair blocks = init_blocks(model, config);
  SuperblockVector carried;
  bool have_carried = false;

  for (std::size_t k = 1; k <= centre; ++k) {
    try {
      if (k > 1) {
        blocks.hole = grow_block(blocks.hole, order[centre - k], model);
        blocks.particle = grow_block(blocks.particle, order[centre + k - 1], model);
      }
      const std::size_t grown_entries =
          blocks.hole.level_operator_entries() + blocks.hole.hamiltonian_entries() +
          blocks.particle.level_operator_entries() + blocks.particle.hamiltonian_entries();

      IterationRecord rec;
      rec.iteration = k;
      rec.superblock_levels = 2 * k;
      rec.target_pairs = target_pairs(k, n, config.total_pairs);

      SuperblockVector guess;
      if (have_carried) guess = embed_guess(carried, blocks.hole, blocks.particle, rec.target_pairs);
      auto sol = superblock_ground(blocks.hole, blocks.particle, model, rec.target_pairs, config,
                                   have_carried ? &guess : nullptr, k);
      rec.energy = sol.energy;
      rec.residual = sol.residual;
      rec.applies = sol.applies;
      rec.superblock_dim = sol.psi.size();

      const auto rho_h = reduced_density(sol.psi, BlockSide::hole);
      const auto rho_p = reduced_density(sol.psi, BlockSide::particle);
      auto cut_h = truncate(blocks.hole, rho_h, config.m);
      auto cut_p = truncate(blocks.particle, rho_p, config.m);
      rec.trunc_weight_hole = cut_h.weight;
      rec.trunc_weight_particle = cut_p.weight;
      rec.dim_hole = cut_h.block.dim();
      rec.dim_particle = cut_p.block.dim();

      MemorySnapshot snap;
      snap.iteration = k;
      snap.hole_pair_entries = cut_h.block.pair_entries();
      snap.hole_number_entries = cut_h.block.number_entries();
      snap.particle_pair_entries = cut_p.block.pair_entries();
      snap.particle_number_entries = cut_p.block.number_entries();
      snap.hamiltonian_entries =
          cut_h.block.hamiltonian_entries() + cut_p.block.hamiltonian_entries();
      rec.stored_entries = snap.total();
      if (snap.total() >= result.peak.total()) result.peak = snap;
      result.workspace_peak_entries =
          std::max(result.workspace_peak_entries, grown_entries + sol.workspace_entries);

      if (observer) observer({rec, blocks.hole, blocks.particle, sol.psi, rho_h, rho_p});

      carried = project_state(sol.psi, cut_h, cut_p);
      have_carried = true;
      blocks.hole = std::move(cut_h.block);
      blocks.particle = std::move(cut_p.block);
      result.iterations.push_back(rec);
    } catch (const IterationError&) {
      throw;
    } catch (const Error& e) {
      throw IterationError(e.kind(), k, e.what());
    }
  }

  result.final_energy = result.iterations.back().energy;
  result.memory_peak_entries = result.peak.total();
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

MemoryReport memory_report(const DmrgResult& result) {
  MemoryReport r;
  r.m = result.m;
  r.n_levels = result.n_levels;
  r.peak = result.peak;
  r.block_operator_bound = 3 * result.m * result.m * result.n_levels;
  r.overhead_bound = 2 * result.m * result.m;
  r.workspace_peak_entries = result.workspace_peak_entries;
  r.within_bound = r.peak.block_operator_entries() <= r.block_operator_bound &&
                   r.peak.hamiltonian_entries <= r.overhead_bound;
  r.peak_megabytes = static_cast<double>(r.peak.total()) * 8.0 / 1e6;
  return r;
}

}  // namespace pairsolve::dmrg
