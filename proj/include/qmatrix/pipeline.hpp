#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmatrix/projectors.hpp"
#include "qmatrix/report.hpp"
#include "qmatrix/rfpair.hpp"

namespace qmatrix {

enum class Mode { Exact, Numeric };

struct RunConfig {
  int n = 2;
  TwistSpec twist;
  Mode mode = Mode::Exact;
  int q_points = 8;
  std::uint64_t seed = 1;
  std::optional<int> i_max;  ///< Defaults to n + 1.
  std::optional<std::string> report_path;
  /// Directory for residual witnesses of failed checks.
  std::optional<std::string> export_dir;
  bool timings = false;
  TowerMutation mutation = TowerMutation::None;

  int effective_i_max() const { return i_max.value_or(n + 1); }
  /// The q-points of a numeric run, drawn from the seed.
  std::vector<mpq_class> numeric_points() const;
};

/// Sentence recorded in every report about what a pass means.
extern const char* const kFaithfulnessCaveat;

struct VerificationReport {
  RunConfig config;
  /// Execution order (dependency order); sorted by name when serialized.
  std::vector<CheckRecord> checks;
  std::vector<std::string> notes;
  /// Set when a configuration or data error stopped the run.
  std::optional<std::string> error;
  bool pair_failed = false;

  std::size_t failures() const;
  /// 0 when every check passed, 1 on an identity failure, 2 on an error.
  int exit_code() const;
  const CheckRecord* first_failure() const;
};

/// Runs the full suite in dependency order: pair validation, trace data,
/// D-properties, projector towers and ranks, M and T representations, both
/// identity families, commutativity, the cross-check, and the gauge suite.
/// Data and configuration errors are captured in report.error.
VerificationReport run_verification(const RunConfig& config);

/// JSON document with a schema_version field. Wall times appear only when
/// config.timings is set, so equal configurations give identical bytes.
std::string report_to_json(const VerificationReport& report);

/// Writes residual operators of failed checks to config.export_dir and
/// records the paths in the report details.
void export_witnesses(VerificationReport& report);

}  // namespace qmatrix
