#include "qmatrix/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "qmatrix/chn.hpp"
#include "qmatrix/matrix_io.hpp"
#include "qmatrix/pipeline.hpp"
#include "qmatrix/traces.hpp"

namespace qmatrix {

namespace {

struct CommonOptions {
  int n = 2;
  std::string twist = "r";
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--n", o.n, "Dimension of V")->check(CLI::PositiveNumber);
  cmd->add_option("--twist", o.twist, "Twist F: p, r, rinv or file:<path>");
}

Mode parse_mode(const std::string& s) {
  if (s == "exact") return Mode::Exact;
  if (s == "numeric") return Mode::Numeric;
  throw Error(ErrorKind::Config, "unknown mode '" + s + "' (expected exact or numeric)");
}

TowerMutation parse_mutation(const std::string& s) {
  if (s.empty() || s == "none") return TowerMutation::None;
  if (s == "flip-sign") return TowerMutation::FlipRSign;
  if (s == "shift-power") return TowerMutation::ShiftQPower;
  throw Error(ErrorKind::Config, "unknown mutation '" + s + "' (expected flip-sign or shift-power)");
}

void print_summary(const VerificationReport& report, std::ostream& out) {
  for (const auto& c : report.checks) {
    if (c.passed) continue;
    out << "FAIL " << c.name;
    if (!c.witness.empty()) out << "  " << c.witness;
    if (!c.witness_path.empty()) out << "  -> " << c.witness_path;
    out << "\n";
  }
  out << report.checks.size() << " checks, " << report.failures() << " failed";
  if (report.pair_failed) out << " (later stages skipped)";
  out << "\n";
  if (const auto* f = report.first_failure()) out << "first failure: " << f->name << "\n";
}

int write_report(const VerificationReport& report, std::ostream& out) {
  if (!report.config.report_path) return 0;
  const std::string text = report_to_json(report);
  if (*report.config.report_path == "-") {
    out << text;
    return 0;
  }
  std::ofstream f(*report.config.report_path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Config, "cannot write report to " + *report.config.report_path);
  f << text;
  return 0;
}

int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const VerificationReport report = run_verification(config);
  if (report.error) err << "error: " << *report.error << "\n";
  print_summary(report, out);
  write_report(report, out);
  return report.exit_code();
}

struct ShowRequest {
  std::string object;
  std::optional<std::string> q;
  std::optional<std::string> export_path;
};

std::pair<std::string, int> split_level(const std::string& object) {
  const auto colon = object.find(':');
  if (colon == std::string::npos) return {object, 0};
  const std::string head = object.substr(0, colon);
  const std::string tail = object.substr(colon + 1);
  int k = 0;
  try {
    std::size_t used = 0;
    k = std::stoi(tail, &used);
    if (used != tail.size()) throw std::invalid_argument(tail);
  } catch (const std::exception&) {
    throw Error(ErrorKind::Config, "bad level in '" + object + "'");
  }
  if (k < 0 || (k == 0 && head != "sigma" && head != "tau")) throw Error(ErrorKind::Config, "bad level in '" + object + "'");
  return {head, k};
}

TensorOperator build_object(const CommonOptions& o, const std::string& object) {
  const auto [head, k] = split_level(object);
  const TwistSpec twist = TwistSpec::parse(o.twist);
  if (head == "A" || head == "S") {
    if (k < 1) throw Error(ErrorKind::Config, "projector level must be at least 1");
    const auto kind = head == "A" ? ProjectorKind::Antisymmetrizer : ProjectorKind::Symmetrizer;
    return build_tower(standard_hecke_R(o.n), k, kind).level(k);
  }
  const CompatiblePair pair = make_standard_pair(o.n, twist);
  if (head == "R") return pair.Rhat;
  if (head == "F") return pair.Fhat;
  if (!pair.valid()) throw Error(ErrorKind::Config, "the pair (R, F) fails validation; run verify for details");
  const TraceData traces = compute_trace_data(pair);
  if (head == "D") return traces.D;
  if (head == "Dprime") return traces.Dprime;
  if (head == "Psi") return traces.Psi;
  if (head == "Phi") return traces.Phi;
  if (head == "Mrep") return build_M_rep(pair, traces).generator;
  if (head == "Trep") return build_T_rep(pair, traces).generator;
  if (head == "sigma" || head == "tau") {
    const int levels = std::max(k, 1);
    const ProjectorTower a = build_tower(pair.Rhat, levels, ProjectorKind::Antisymmetrizer);
    const ProjectorTower s = build_tower(pair.Rhat, levels, ProjectorKind::Symmetrizer);
    const PowerTable table(build_M_rep(pair, traces), a, s, levels);
    return head == "sigma" ? table.sigma(k) : table.tau(k);
  }
  throw Error(ErrorKind::Config, "unknown object '" + object +
                                     "' (expected R, F, D, Dprime, Psi, Phi, A:k, S:k, Mrep, Trep, sigma:k, tau:k)");
}

int cmd_show(const CommonOptions& o, const ShowRequest& req, std::ostream& out) {
  TensorOperator op = build_object(o, req.object);
  if (req.q) op = evaluate(op, parse_rational(*req.q));
  out << req.object << "\n" << render(op);
  if (req.export_path) write_matrix_file(*req.export_path, op);
  return 0;
}

struct SelftestRow {
  std::string label;
  std::size_t checks = 0;
  std::size_t failed = 0;
  double seconds = 0;
  std::string first_failure;
  std::string error;
};

int cmd_selftest(bool quick, TowerMutation mutation, std::ostream& out) {
  std::vector<RunConfig> configs;
  const std::vector<std::string> twists{"p", "r", "rinv"};
  for (int n = 1; n <= (quick ? 1 : 2); ++n) {
    for (const auto& t : twists) {
      RunConfig c;
      c.n = n;
      c.twist = TwistSpec::parse(t);
      c.mutation = mutation;
      configs.push_back(c);
    }
  }
  if (!quick) {
    RunConfig c;
    c.n = 2;
    c.twist = TwistSpec::parse("r");
    c.mode = Mode::Numeric;
    c.q_points = 3;
    c.mutation = mutation;
    configs.push_back(c);
    c.n = 3;
    c.twist = TwistSpec::parse("rinv");
    c.q_points = 1;
    c.i_max = 3;
    configs.push_back(c);
  }

  std::vector<SelftestRow> rows;
  bool ok = true;
  for (const auto& c : configs) {
    SelftestRow row;
    std::ostringstream label;
    label << "n=" << c.n << " twist=" << c.twist.to_string() << " " << (c.mode == Mode::Exact ? "exact" : "numeric");
    if (c.mode == Mode::Numeric) label << "x" << c.q_points;
    row.label = label.str();
    const auto start = std::chrono::steady_clock::now();
    const VerificationReport report = run_verification(c);
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    row.checks = report.checks.size();
    row.failed = report.failures();
    if (const auto* f = report.first_failure()) row.first_failure = f->name;
    if (report.error) row.error = *report.error;
    ok = ok && report.exit_code() == 0;
    rows.push_back(row);
  }

  out << std::left << std::setw(32) << "configuration" << std::right << std::setw(8) << "checks" << std::setw(8)
      << "failed" << std::setw(10) << "seconds" << "  first failure\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(32) << r.label << std::right << std::setw(8) << r.checks << std::setw(8) << r.failed
        << std::setw(10) << std::fixed << std::setprecision(2) << r.seconds << "  "
        << (r.error.empty() ? r.first_failure : "error: " + r.error) << "\n";
  }
  out << (ok ? "selftest passed" : "selftest FAILED") << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Exact verification of matrix identities for braided quantum-matrix algebras", "qmatrix");
  app.require_subcommand(1);

  CommonOptions verify_opts;
  RunConfig config;
  std::string mode = "exact";
  std::string verify_mutation;
  auto* verify = app.add_subcommand("verify", "Run the full verification suite");
  add_common(verify, verify_opts);
  verify->add_option("--mode", mode, "exact or numeric");
  verify->add_option("--q-points", config.q_points, "Number of rational q values in numeric mode");
  verify->add_option("--seed", config.seed, "Seed for q values and random test operators");
  verify->add_option("--i-max", config.i_max, "Highest identity level (default n+1)");
  verify->add_option("--report", config.report_path, "Write the JSON report here ('-' for stdout)");
  verify->add_option("--export", config.export_dir, "Directory for residual witnesses of failed checks");
  verify->add_flag("--timings", config.timings, "Include wall times in the report");
  verify->add_option("--inject-mutation", verify_mutation, "Corrupt the antisymmetrizer: flip-sign or shift-power");

  CommonOptions show_opts;
  ShowRequest show_req;
  auto* show = app.add_subcommand("show", "Print one object in the matrix text format");
  add_common(show, show_opts);
  show->add_option("object", show_req.object, "R, F, D, Dprime, Psi, Phi, A:k, S:k, Mrep, Trep, sigma:k, tau:k")
      ->required();
  show->add_option("--q", show_req.q, "Evaluate at this rational q");
  show->add_option("--export", show_req.export_path, "Also write the matrix file");

  bool quick = false;
  std::string selftest_mutation;
  auto* selftest = app.add_subcommand("selftest", "Run the built-in suite at n = 1, 2 and print timings");
  selftest->add_flag("--quick", quick, "n = 1 only");
  selftest->add_option("--inject-mutation", selftest_mutation, "Corrupt the antisymmetrizer: flip-sign or shift-power");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (verify->parsed()) {
      config.n = verify_opts.n;
      config.twist = TwistSpec::parse(verify_opts.twist);
      config.mode = parse_mode(mode);
      config.mutation = parse_mutation(verify_mutation);
      return cmd_verify(config, out, err);
    }
    if (show->parsed()) return cmd_show(show_opts, show_req, out);
    return cmd_selftest(quick, parse_mutation(selftest_mutation), out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace qmatrix
