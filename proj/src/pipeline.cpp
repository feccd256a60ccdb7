#include "qmatrix/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <map>

#include "json.hpp"
#include "qmatrix/chn.hpp"
#include "qmatrix/gauge.hpp"
#include "qmatrix/matrix_io.hpp"
#include "qmatrix/traces.hpp"

namespace qmatrix {

const char* const kFaithfulnessCaveat =
    "Identities are verified in the finite-dimensional representation rho(M) = RF (and rho(T) from R). "
    "A failure refutes the implementation; a pass is evidence for the algebra-level identity only up to "
    "faithfulness of the representation, which is not established.";

std::vector<mpq_class> RunConfig::numeric_points() const {
  std::vector<mpq_class> points;
  std::uint64_t state = seed;
  while (static_cast<int>(points.size()) < q_points) {
    mpq_class v = draw_q_point(state);
    if (std::find(points.begin(), points.end(), v) == points.end()) points.push_back(v);
  }
  return points;
}

std::size_t VerificationReport::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const CheckRecord& c) { return !c.passed; }));
}

int VerificationReport::exit_code() const {
  if (error) return 2;
  return failures() == 0 ? 0 : 1;
}

const CheckRecord* VerificationReport::first_failure() const {
  for (const auto& c : checks) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

namespace {

class Suite {
 public:
  Suite(const RunConfig& config, VerificationReport& report, QField field, std::string suffix)
      : config_(config), report_(report), field_(std::move(field)), suffix_(std::move(suffix)) {}

  // Returns false when downstream stages must not run.
  bool run() {
    const int n = config_.n;
    const int i_max = config_.effective_i_max();
    const int levels = std::max(i_max, n + 1);

    const CompatiblePair pair = make_standard_pair(n, config_.twist, field_);
    add(pair.checks);
    if (!pair.valid()) {
      report_.pair_failed = true;
      note("pair validation failed; later stages skipped");
      return false;
    }

    const TraceData traces = compute_trace_data(pair);
    add(traces.checks);
    add(timed_all([&] { return check_D_properties(pair, traces, config_.seed); }));

    const ProjectorTower a = build_tower(pair.Rhat, levels, ProjectorKind::Antisymmetrizer, field_, config_.mutation);
    const ProjectorTower s = build_tower(pair.Rhat, levels, ProjectorKind::Symmetrizer, field_);
    add(a.checks);
    add(s.checks);
    add(timed_all([&] { return check_towers(pair.Rhat, a, s, field_, config_.seed); }));

    const Representation m_rep = build_M_rep(pair, traces);
    const Representation t_rep = build_T_rep(pair, traces);
    add(m_rep.checks);
    add(t_rep.checks);
    note("M representation: " + m_rep.convention);
    note("T representation: " + t_rep.convention);

    const PowerTable m_table(m_rep, a, s, levels);
    const PowerTable t_table(t_rep, a, s, levels);
    add(verify_chn_M(m_table, i_max));
    add(verify_chn_T(t_table, i_max));
    add(timed_all([&] { return verify_commutativity(m_table, levels, "commute-M"); }));
    add(timed_all([&] { return newton_cross_check(m_table, "cross-M"); }));
    add(verify_top_vanishing(m_table, "top-M"));
    add(verify_top_vanishing(t_table, "top-T"));

    add(timed_all([&] { return check_gauge_reductions(pair, traces); }));
    add({timed([&] { return check_rff_identity(pair, traces); })});
    const GaugeData at_d = build_gauge_data(pair, traces, traces.D);
    add({timed([&] { return check_x_relation(m_rep.generator, at_d, "gauge/X=D/relation"); })});
    // The minimal gauge taking X = D to X = D′.
    const TensorOperator u = TensorOperator::identity(n, 1);
    const TensorOperator y = traces.Dprime * traces.D_inv;
    note("gauge transport: U = I, Y = D' D^-1");
    const GaugeResult moved = apply_gauge(at_d, u, y, "gauge/transport");
    add(moved.checks);
    add({relation_check("gauge/transport/X=D'", "Y D U^-1 = D'", moved.data.X, traces.Dprime)});
    const TransportResult transported = gauge_transport_rep(m_rep, moved.data, u, y, "gauge/transport");
    add(transported.checks);
    add(timed_all([&] { return verify_transported_chn(transported.rep, std::min(i_max, levels), "gauge/transport"); }));
    return true;
  }

 private:
  template <class F>
  std::vector<CheckRecord> timed_all(F&& fn) {
    const auto start = std::chrono::steady_clock::now();
    std::vector<CheckRecord> recs = fn();
    const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (auto& r : recs) r.seconds = total / static_cast<double>(std::max<std::size_t>(1, recs.size()));
    return recs;
  }

  void add(std::vector<CheckRecord> recs) {
    for (auto& r : recs) {
      r.name += suffix_;
      report_.checks.push_back(std::move(r));
    }
  }

  void note(const std::string& text) {
    if (std::find(report_.notes.begin(), report_.notes.end(), text) == report_.notes.end()) report_.notes.push_back(text);
  }

  const RunConfig& config_;
  VerificationReport& report_;
  QField field_;
  std::string suffix_;
};

}  // namespace

VerificationReport run_verification(const RunConfig& config) {
  VerificationReport report;
  report.config = config;
  try {
    if (config.n < 1) throw Error(ErrorKind::Config, "--n must be at least 1");
    if (config.effective_i_max() < 1) throw Error(ErrorKind::Config, "--i-max must be at least 1");
    if (config.mode == Mode::Numeric && config.q_points < 1) throw Error(ErrorKind::Config, "--q-points must be at least 1");
    if (config.mode == Mode::Exact) {
      Suite(config, report, QField::exact(), "").run();
    } else {
      for (const auto& q0 : config.numeric_points()) {
        if (!Suite(config, report, QField::numeric(q0), "@q=" + q0.get_str()).run()) break;
      }
    }
  } catch (const Error& e) {
    report.error = e.what();
  }
  if (!report.error && config.export_dir) export_witnesses(report);
  return report;
}

void export_witnesses(VerificationReport& report) {
  if (!report.config.export_dir) return;
  const std::filesystem::path dir(*report.config.export_dir);
  bool created = false;
  for (auto& c : report.checks) {
    if (c.passed || !c.residual) continue;
    if (!created) {
      std::filesystem::create_directories(dir);
      created = true;
    }
    std::string file = c.name;
    for (char& ch : file) {
      if (ch == '/' || ch == '@' || ch == '\'' || ch == ' ') ch = '_';
    }
    const auto path = dir / (file + ".json");
    write_matrix_file(path, *c.residual);
    c.witness_path = path.string();
  }
}

std::string report_to_json(const VerificationReport& report) {
  using nlohmann::ordered_json;
  const RunConfig& cfg = report.config;
  ordered_json doc;
  doc["schema_version"] = 1;
  ordered_json config;
  config["n"] = cfg.n;
  config["twist"] = cfg.twist.to_string();
  config["mode"] = cfg.mode == Mode::Exact ? "exact" : "numeric";
  if (cfg.mode == Mode::Numeric) {
    config["q_points"] = cfg.q_points;
    config["seed"] = cfg.seed;
    ordered_json pts = ordered_json::array();
    for (const auto& q0 : cfg.numeric_points()) pts.push_back(q0.get_str());
    config["q_values"] = pts;
  } else {
    config["seed"] = cfg.seed;
  }
  config["i_max"] = cfg.effective_i_max();
  if (cfg.mutation != TowerMutation::None) {
    config["mutation"] = cfg.mutation == TowerMutation::FlipRSign ? "flip-sign" : "shift-power";
  }
  doc["config"] = config;
  doc["caveat"] = kFaithfulnessCaveat;
  doc["notes"] = report.notes;

  std::vector<const CheckRecord*> sorted;
  for (const auto& c : report.checks) sorted.push_back(&c);
  std::stable_sort(sorted.begin(), sorted.end(), [](const CheckRecord* a, const CheckRecord* b) { return a->name < b->name; });
  ordered_json checks = ordered_json::array();
  int max_degree = 0;
  for (const auto* c : sorted) {
    ordered_json j;
    j["name"] = c->name;
    j["tag"] = c->tag;
    j["status"] = c->passed ? "pass" : "fail";
    j["max_degree"] = c->max_degree;
    max_degree = std::max(max_degree, c->max_degree);
    if (!c->passed) {
      j["residual_nonzeros"] = c->residual_nonzeros;
      if (!c->witness.empty()) j["witness"] = c->witness;
      if (!c->witness_path.empty()) j["witness_path"] = c->witness_path;
    }
    if (!c->residual_max_abs.empty()) j["residual_max_abs"] = c->residual_max_abs;
    if (!c->detail.empty()) j["detail"] = c->detail;
    if (cfg.timings) j["seconds"] = c->seconds;
    checks.push_back(std::move(j));
  }
  doc["checks"] = std::move(checks);

  ordered_json summary;
  summary["total"] = report.checks.size();
  summary["passed"] = report.checks.size() - report.failures();
  summary["failed"] = report.failures();
  summary["max_degree"] = max_degree;
  if (const auto* f = report.first_failure()) summary["first_failure"] = f->name;
  if (report.pair_failed) summary["skipped"] = "stages after pair validation";
  if (report.error) summary["error"] = *report.error;
  summary["exit_code"] = report.exit_code();
  summary["status"] = report.exit_code() == 0 ? "pass" : (report.exit_code() == 1 ? "fail" : "error");
  doc["summary"] = std::move(summary);
  return doc.dump(2) + "\n";
}

}  // namespace qmatrix
