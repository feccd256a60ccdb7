#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "qmatrix/report.hpp"
#include "qmatrix/rfpair.hpp"

namespace qmatrix {

/// Skew inverse Ψ of a 2-leg X: the solution of Tr_(2)(Ψ₁₂ X₂₃) = P₁₃ on
/// V^{⊗3}. In components Σ_{b,x} Ψ[(a,b),(c,x)] X[(x,d),(b,e)] = δ_ae δ_dc.

/// Generic route: solves the n²×n² linear system directly. This is the
/// reference the fast route is compared against.
TensorOperator skew_inverse_solve(const TensorOperator& x);

/// Partial-transposition route: Ψ = P (((P X)^{t₁})⁻¹)^{t₁}.
TensorOperator skew_inverse_fast(const TensorOperator& x);

/// Tr_(2)(Ψ₁₂ X₂₃) − P₁₃ and Tr_(2)(X₁₂ Ψ₂₃) − P₁₃ as checks.
std::vector<CheckRecord> check_skew_inverse(const TensorOperator& x, const TensorOperator& psi, const std::string& prefix);

/// Fast route with the generic solve as fallback; both defining equations are
/// verified and a NoSkewInverse error names the one that fails.
TensorOperator skew_inverse(const TensorOperator& x);

struct TraceData {
  TensorOperator Psi;
  TensorOperator Phi;
  TensorOperator D;
  TensorOperator Dprime;
  TensorOperator D_inv;
  TensorOperator Dprime_inv;
  std::vector<CheckRecord> checks;
};

/// D = Tr_(2) Ψ and D′ = Tr_(2) Φ; raises NonInvertibleD when either is
/// singular.
std::pair<TensorOperator, TensorOperator> compute_D(const TensorOperator& psi, const TensorOperator& phi);

/// Ψ, Φ, D, D′ for a pair, with the defining equations of both skew inverses
/// and agreement of the two routes recorded as checks.
TraceData compute_trace_data(const CompatiblePair& pair);

/// Tr(D Z) over the listed legs (weight D on each).
TensorOperator quantum_trace(const TensorOperator& z, std::span<const int> legs, const TensorOperator& d);
TensorOperator quantum_trace(const TensorOperator& z, std::initializer_list<int> legs, const TensorOperator& d);

/// The trace identities of D against R̂ and F̂, with random Z drawn from seed:
/// Tr_R₂ R̂₁ = I; Tr_R₂(X^{±1} Z₁ X^{∓1}) = I Tr_R Z for X = R̂, F̂;
/// R̂ D₁D₂ = D₁D₂ R̂; F̂ D₁D₂ = D₁D₂ F̂.
std::vector<CheckRecord> check_D_properties(const CompatiblePair& pair, const TraceData& traces, std::uint64_t seed = 1);

/// Small random integer 1-leg operator (entries in [-3, 3]).
TensorOperator random_single_leg(int n, std::uint64_t seed);

}  // namespace qmatrix
