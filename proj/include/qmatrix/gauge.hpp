#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmatrix/chn.hpp"

namespace qmatrix {

/// Structure matrices of the X-parametrized algebra
///   R̂ M₁ Â M₁ (F̂⁻¹)^X = M₁ Â M₁ (F̂⁻¹)^X R̂^X
/// with Â = X₂ Φ⁻¹₂₁ X₁⁻¹ (Φ the skew inverse of F̂, Φ⁻¹₂₁ = embed(Φ⁻¹, {2, 1})),
/// B̂ = X₁X₂F̂⁻¹, R̂^X = X₁X₂ R̂ (X₁X₂)⁻¹, (F̂⁻¹)^X = X₁X₂ F̂⁻¹ (X₁X₂)⁻¹.
struct GaugeData {
  int n = 0;
  QField field;
  TensorOperator Rhat;
  TensorOperator Fhat;
  TensorOperator Fhat_inv;
  TensorOperator Phi;
  TensorOperator X;
  TensorOperator X_inv;
  TensorOperator Ahat;
  TensorOperator Bhat;
  TensorOperator RhatX;
  TensorOperator FhatInvX;
};

/// Raises SingularGauge when X or Φ is singular.
GaugeData build_gauge_data(const TensorOperator& rhat, const TensorOperator& fhat, const TensorOperator& phi,
                           const TensorOperator& x, const QField& field);
GaugeData build_gauge_data(const CompatiblePair& pair, const TraceData& traces, const TensorOperator& x);

/// F̂² R̂ F̂⁻² = D′₁D′₂ R̂ (D′₁D′₂)⁻¹.
CheckRecord check_rff_identity(const CompatiblePair& pair, const TraceData& traces);

/// X = D: Â = F̂, (F̂⁻¹)^X = F̂⁻¹, R̂^X = R̂. X = D′: Â = F̂, R̂^X = F̂²R̂F̂⁻².
std::vector<CheckRecord> check_gauge_reductions(const CompatiblePair& pair, const TraceData& traces);

struct GaugeResult {
  GaugeData data;
  std::vector<CheckRecord> checks;
};

/// R̂ → U₁U₂ R̂ (U₁U₂)⁻¹, F̂ → U₁U₂ F̂ (U₁U₂)⁻¹, Â → Y₁U₂ Â (U₁Y₂)⁻¹, X → Y X U⁻¹.
/// R̂^X, (F̂⁻¹)^X and B̂ are recomputed from the transformed R̂, F̂, X. Checks:
/// the transformed Â against Â rebuilt from the transformed F̂ and X, and
/// compatibility of the transformed pair. Raises SingularGauge for singular
/// U or Y.
GaugeResult apply_gauge(const GaugeData& g, const TensorOperator& u, const TensorOperator& y, const std::string& prefix);

struct TransportResult {
  /// Generator U₂ M Y₂⁻¹ with the chain M̄_{j+1} = Â_j M̄_j ((F̂⁻¹)^X)_j, the
  /// transformed R̂, and the transformed X as trace weight.
  Representation rep;
  std::vector<CheckRecord> checks;
};

/// blocks′[i][j] = Σ_{k,l} U^i_k blocks[k][l] (Y⁻¹)^l_j, then the relation of
/// the transformed data on V₀⊗V₁⊗V₂.
TransportResult gauge_transport_rep(const Representation& m_rep, const GaugeData& transformed, const TensorOperator& u,
                                    const TensorOperator& y, const std::string& prefix);

/// R̂ M₁ Â M₁ (F̂⁻¹)^X = M₁ Â M₁ (F̂⁻¹)^X R̂^X for a generator on V₀⊗V₁.
CheckRecord check_x_relation(const TensorOperator& generator, const GaugeData& g, const std::string& name);

/// Both identity families, commutativity and the cross-check on a transported
/// representation, with projector towers built from its R̂.
std::vector<CheckRecord> verify_transported_chn(const Representation& rep, int i_max, const std::string& prefix);

}  // namespace qmatrix
