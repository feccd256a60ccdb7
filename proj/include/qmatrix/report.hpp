#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "qmatrix/tensor.hpp"

namespace qmatrix {

/// Outcome of one identity check. Failures are data, not exceptions.
struct CheckRecord {
  std::string name;  ///< Unique within a run, e.g. "pair/braid/R".
  std::string tag;   ///< Relation family, e.g. "chn-M/i=2/wedge".
  bool passed = false;
  std::size_t residual_nonzeros = 0;
  /// Largest |entry| of the residual; only meaningful for numeric entries.
  std::string residual_max_abs;
  /// First nonzero residual entry, "[row; col] = value".
  std::string witness;
  /// Where the residual was exported, if it was.
  std::string witness_path;
  /// Largest degree span among the compared operators.
  int max_degree = 0;
  double seconds = 0;
  std::string detail;
  /// Kept on failure so the caller can export it.
  std::optional<TensorOperator> residual;
};

/// Compares lhs and rhs entrywise; passes iff lhs − rhs is structurally zero.
CheckRecord relation_check(std::string name, std::string tag, const TensorOperator& lhs, const TensorOperator& rhs,
                           std::string detail = {});

/// A residual that should vanish.
CheckRecord residual_check(std::string name, std::string tag, const TensorOperator& residual, std::string detail = {});

/// A yes/no condition without an operator residual.
CheckRecord condition_check(std::string name, std::string tag, bool passed, std::string detail = {});

/// Runs fn (returning a CheckRecord) and stores its wall time.
template <class F>
CheckRecord timed(F&& fn) {
  const auto start = std::chrono::steady_clock::now();
  CheckRecord rec = fn();
  rec.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

bool all_passed(const std::vector<CheckRecord>& records);

}  // namespace qmatrix
