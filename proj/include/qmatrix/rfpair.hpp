#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qmatrix/report.hpp"
#include "qmatrix/tensor.hpp"

namespace qmatrix {

/// The GL_q(n) Hecke operator
///   R̂ = q Σ_i e_ii⊗e_ii + Σ_{i≠j} e_ji⊗e_ij + (q − q⁻¹) Σ_{i<j} e_ii⊗e_jj,
/// with entries taken in the given field.
TensorOperator standard_hecke_R(int n, const QField& field = QField::exact());

/// Flip P on V⊗V.
TensorOperator permutation_P(int n);

enum class TwistKind { P, R, Rinv, File };

struct TwistSpec {
  TwistKind kind = TwistKind::P;
  std::string path;  ///< Only for File.

  /// Accepts "p", "r", "rinv" or "file:<path>".
  static TwistSpec parse(std::string_view text);
  std::string to_string() const;
};

/// The selected twist. File twists are loaded, lifted into the field of rhat
/// and returned unvalidated.
TensorOperator twist_from(const TwistSpec& spec, const TensorOperator& rhat, const QField& field = QField::exact());

/// X₁X₂X₁ = X₂X₁X₂ on V^{⊗3}.
CheckRecord check_braid(const TensorOperator& x, std::string name = "braid");

/// X² − (q − q⁻¹)X − I = 0.
CheckRecord check_hecke(const TensorOperator& x, const QField& field = QField::exact(), std::string name = "hecke");

/// The four relations on V^{⊗3} for the non-hat R = P·R̂, F = P·F̂:
///   R¹²F¹³F²³ = F²³F¹³R¹²,  F¹²F¹³R²³ = R²³F¹³F¹²,
///   R¹²R¹³R²³ = R²³R¹³R¹²,  F¹²F¹³F²³ = F²³F¹³F¹².
/// Superscripts are leg positions passed to embed().
std::vector<CheckRecord> check_compatibility(const TensorOperator& rhat, const TensorOperator& fhat);

/// R¹²(R¹³F³¹)F²¹(R²³F³²)(F²¹)⁻¹ = (R²³F³²)F¹²(R¹³F³¹)(F¹²)⁻¹R¹².
CheckRecord check_consistency_identity(const TensorOperator& rhat, const TensorOperator& fhat);

/// Check-record names used for the individual relations.
namespace check_names {
inline constexpr const char* braid_R = "pair/braid/R";
inline constexpr const char* braid_F = "pair/braid/F";
inline constexpr const char* hecke_R = "pair/hecke/R";
inline constexpr const char* mixed_RFF = "pair/compat/mixed-RFF";
inline constexpr const char* mixed_FFR = "pair/compat/mixed-FFR";
inline constexpr const char* ybe_R = "pair/compat/ybe-R";
inline constexpr const char* ybe_F = "pair/compat/ybe-F";
inline constexpr const char* consistency = "pair/consistency";
}  // namespace check_names

/// A validated (R̂, F̂) pair with its check results.
struct CompatiblePair {
  int n = 0;
  QField field;
  TensorOperator Rhat;
  TensorOperator Fhat;
  TensorOperator Rhat_inv;
  TensorOperator Fhat_inv;
  std::vector<CheckRecord> checks;

  bool valid() const { return all_passed(checks); }
};

/// Inverts both operators (a singular one raises SingularOperator) and runs
/// every pair check. The result is returned even when checks fail; callers
/// inspect valid().
CompatiblePair make_pair(TensorOperator rhat, TensorOperator fhat, const QField& field = QField::exact());

/// Convenience: standard R̂ with one of the twists.
CompatiblePair make_standard_pair(int n, const TwistSpec& twist, const QField& field = QField::exact());

}  // namespace qmatrix
