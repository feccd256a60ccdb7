#pragma once

#include <string>
#include <vector>

#include "qmatrix/projectors.hpp"
#include "qmatrix/report.hpp"
#include "qmatrix/rfpair.hpp"
#include "qmatrix/traces.hpp"

namespace qmatrix {

/// A finite-dimensional representation of quantum-matrix generators.
///
/// Leg layout: leg 1 is the representation space V₀, leg j+1 is the matrix
/// space V_j. The generator is the block operator Σ_{i,j} ρ(M^i_j) ⊗ e_ij on
/// V₀⊗V₁, i.e. generator[(a,i),(b,j)] = ρ(M^i_j)^a_b.
struct Representation {
  enum class Chain {
    Conjugate,  ///< M̄_{j+1} = left_j M̄_j right_j on matrix spaces (j, j+1)
    Place,      ///< M̄_j is the generator on (V₀, V_j): plain products T₁…T_k
  };

  std::string label;  ///< "M", "T", or a caller-chosen name.
  int n = 0;
  QField field;
  TensorOperator generator;
  Chain chain = Chain::Conjugate;
  TensorOperator left;
  TensorOperator right;
  /// Braid generator used in generalized powers and the projector towers.
  TensorOperator rhat;
  /// Trace weight on each traced matrix space.
  TensorOperator weight;
  /// Which index pairing produced the generator.
  std::string convention;
  std::vector<CheckRecord> checks;

  /// ρ(M^i_j) as a 1-leg operator on V₀ (0-based i, j).
  TensorOperator block(int i, int j) const;
};

/// Reassembles blocks[i][j] (1-leg operators on V₀) into a generator.
TensorOperator assemble_blocks(const std::vector<std::vector<TensorOperator>>& blocks);

/// ρ(M^i_j)^n_m = (R̂F̂)^{ni}_{mj}. The defining relation
/// R̂₂₃ · M₁ F̂₂₃ M₁ F̂₂₃⁻¹ = M₁ F̂₂₃ M₁ F̂₂₃⁻¹ · R̂₂₃ on V₀⊗V₁⊗V₂ must hold;
/// if the direct index pairing fails, the swapped pairing is tried once.
Representation build_M_rep(const CompatiblePair& pair, const TraceData& traces);

/// ρ(T^i_j)^a_b from the non-hat R = P R̂, with the RTT relation
/// R̂₂₃ T₁ T₂ = T₁ T₂ R̂₂₃ checked; same fallback rule as build_M_rep.
Representation build_T_rep(const CompatiblePair& pair, const TraceData& traces);

/// The defining relation R̂₂₃ · chain(2) = chain(2) · R̂₂₃.
CheckRecord check_defining_relation(const Representation& rep, const std::string& name);

/// M̄₁ M̄₂ … M̄_k on V₀⊗V^{⊗k}.
TensorOperator build_chain(const Representation& rep, int k);

/// Generalized, wedge and symmetric powers and the symmetric functions of a
/// representation, computed up to level k_max.
class PowerTable {
 public:
  PowerTable(const Representation& rep, const ProjectorTower& antisym, const ProjectorTower& sym, int k_max);

  int k_max() const { return k_max_; }
  /// M^{k̄} = Tr_R(2…k)(R̂₁…R̂_{k−1} M̄₁…M̄_k), on V₀⊗V₁.
  const TensorOperator& generalized_power(int k) const { return gen_.at(static_cast<std::size_t>(k)); }
  /// M^{∧k} = Tr_R(2…k)(A^(k) M̄₁…M̄_k).
  const TensorOperator& wedge_power(int k) const { return wedge_.at(static_cast<std::size_t>(k)); }
  /// M^{Sk} = Tr_R(2…k)(S^(k) M̄₁…M̄_k).
  const TensorOperator& sym_power(int k) const { return symp_.at(static_cast<std::size_t>(k)); }
  /// σ_k = q^k Tr_R(1…k)(A^(k) M̄₁…M̄_k); σ₀ = I.
  const TensorOperator& sigma(int k) const { return sigma_.at(static_cast<std::size_t>(k)); }
  /// τ_k = q^{−k} Tr_R(1…k)(S^(k) M̄₁…M̄_k); τ₀ = I.
  const TensorOperator& tau(int k) const { return tau_.at(static_cast<std::size_t>(k)); }
  const Representation& rep() const { return rep_; }

 private:
  Representation rep_;
  int k_max_;
  std::vector<TensorOperator> gen_;
  std::vector<TensorOperator> wedge_;
  std::vector<TensorOperator> symp_;
  std::vector<TensorOperator> sigma_;
  std::vector<TensorOperator> tau_;
};

/// Both identity families for 1 ≤ i ≤ i_max:
///   i_q M^{∧i} = Σ_{k<i} (−1)^{i−k+1} M^{i−k̄} σ_k,   i_q M^{Si} = Σ_{k<i} M^{i−k̄} τ_k,
/// with σ_k, τ_k acting on V₀ to the right. Records are named
/// "<prefix>/i=<i>/wedge" and ".../sym".
std::vector<CheckRecord> verify_chn(const PowerTable& table, int i_max, const std::string& prefix);
std::vector<CheckRecord> verify_chn_M(const PowerTable& table, int i_max);
std::vector<CheckRecord> verify_chn_T(const PowerTable& table, int i_max);

/// Every commutator among σ_0..σ_k_max, τ_0..τ_k_max on V₀.
std::vector<CheckRecord> verify_commutativity(const PowerTable& table, int k_max, const std::string& prefix);

/// 2_q (M^{∧2} + M^{S2}) = M (σ₁ + τ₁): the i = 2 members of both families
/// with M^{2̄} eliminated. Also M^{∧2} + M^{S2} = Tr_R₂(M̄₁M̄₂).
std::vector<CheckRecord> newton_cross_check(const PowerTable& table, const std::string& prefix);

/// For the standard R̂ at level n+1 ≤ k_max: M^{∧(n+1)} = 0 and σ_{n+1} = 0.
std::vector<CheckRecord> verify_top_vanishing(const PowerTable& table, const std::string& prefix);

}  // namespace qmatrix
