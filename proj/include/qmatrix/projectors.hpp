#pragma once

#include <cstdint>
#include <vector>

#include "qmatrix/report.hpp"
#include "qmatrix/tensor.hpp"

namespace qmatrix {

enum class ProjectorKind { Antisymmetrizer, Symmetrizer };

/// Deliberate corruptions of the antisymmetrizer recursion, used to show the
/// downstream identity checks are not vacuous.
enum class TowerMutation {
  None,
  FlipRSign,    ///< q^{k−1} + (k−1)_q R̂ instead of q^{k−1} − (k−1)_q R̂
  ShiftQPower,  ///< q^k instead of q^{k−1}
};

/// Levels A^(1..k_max) (or S^(...)) with
///   A^(k) = (1/k_q) A^(k−1) (q^{k−1} − (k−1)_q R̂_{k−1}) A^(k−1),
///   S^(k) = (1/k_q) S^(k−1) (q^{1−k} + (k−1)_q R̂_{k−1}) S^(k−1),
/// A^(k−1) on legs 1..k−1 and R̂_{k−1} on legs (k−1, k).
struct ProjectorTower {
  ProjectorKind kind = ProjectorKind::Antisymmetrizer;
  std::vector<TensorOperator> levels;  ///< levels[k−1] acts on V^{⊗k}.
  std::vector<CheckRecord> checks;     ///< Idempotency per level.

  int k_max() const { return static_cast<int>(levels.size()); }
  const TensorOperator& level(int k) const { return levels.at(static_cast<std::size_t>(k - 1)); }
};

ProjectorTower build_tower(const TensorOperator& rhat, int k_max, ProjectorKind kind, const QField& field = QField::exact(),
                           TowerMutation mutation = TowerMutation::None);

/// Rank of op with q = q0 substituted (exact rational elimination).
std::size_t rank_at(const TensorOperator& op, const mpq_class& q0);

/// Draws a rational a/b with 2 ≤ a, b ≤ 100 and a/b ≠ 1.
mpq_class draw_q_point(std::uint64_t& state);

/// Checks on a pair of towers built from the standard R̂ on V of dimension n:
/// A^(2) + S^(2) = I; A^(n+1) = 0; A^(k) R̂_j A^(k) = −q⁻¹ A^(k) and
/// S^(k) R̂_j S^(k) = q S^(k); in exact mode, rank A^(k) = C(n,k) and
/// rank S^(k) = C(n+k−1,k) at two random rational points that must agree.
std::vector<CheckRecord> check_towers(const TensorOperator& rhat, const ProjectorTower& a, const ProjectorTower& s,
                                      const QField& field, std::uint64_t seed);

/// Binomial coefficient.
std::size_t binomial(int n, int k);

}  // namespace qmatrix
