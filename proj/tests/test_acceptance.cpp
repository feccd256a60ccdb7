#include <algorithm>
#include <chrono>
#include <iomanip>
#include <iostream>
#include <numeric>

#include "qmatrix/gauge.hpp"
#include "qmatrix/pipeline.hpp"

using namespace qmatrix;

namespace {

const std::vector<std::string> kTwists{"p", "r", "rinv"};

class Criterion {
 public:
  explicit Criterion(std::string title) : title_(std::move(title)), start_(std::chrono::steady_clock::now()) {}

  void require(bool ok, const std::string& what) {
    if (!ok && passed_) first_ = what;
    passed_ = passed_ && ok;
  }
  void require_all(const std::vector<CheckRecord>& recs, const std::string& where) {
    require(!recs.empty(), where + ": no checks");
    for (const auto& r : recs) require(r.passed, where + ": " + r.name + " " + r.witness);
  }
  bool finish() const {
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    std::cout << (passed_ ? "PASS " : "FAIL ") << title_ << " (" << std::fixed << std::setprecision(2) << s << " s)";
    if (!passed_) std::cout << "  first failure: " << first_;
    std::cout << "\n";
    return passed_;
  }

 private:
  std::string title_;
  std::chrono::steady_clock::time_point start_;
  bool passed_ = true;
  std::string first_;
};

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

struct Fixture {
  CompatiblePair pair;
  TraceData traces;
  ProjectorTower a;
  ProjectorTower s;
};

Fixture fixture(int n, const std::string& twist, int levels, const QField& field = QField::exact(),
                TowerMutation mutation = TowerMutation::None) {
  auto pair = make_standard_pair(n, TwistSpec::parse(twist), field);
  auto traces = compute_trace_data(pair);
  auto a = build_tower(pair.Rhat, levels, ProjectorKind::Antisymmetrizer, field, mutation);
  auto s = build_tower(pair.Rhat, levels, ProjectorKind::Symmetrizer, field);
  return {std::move(pair), std::move(traces), std::move(a), std::move(s)};
}

std::string label(int n, const std::string& twist) { return "n=" + std::to_string(n) + " twist=" + twist; }

bool pair_validation() {
  Criterion c("1 pair validation, n = 1..3, twists P, R, R^-1");
  for (int n = 1; n <= 3; ++n) {
    for (const auto& tw : kTwists) {
      const auto start = std::chrono::steady_clock::now();
      const auto pair = make_standard_pair(n, TwistSpec::parse(tw));
      c.require_all(pair.checks, label(n, tw));
      c.require(pair.checks.size() == 8, label(n, tw) + ": expected 8 pair checks");
      c.require(seconds_since(start) < (n <= 2 ? 10.0 : 180.0), label(n, tw) + ": too slow");
    }
  }
  return c.finish();
}

bool trace_machinery() {
  Criterion c("2 skew inverses and D, D' properties");
  for (int n = 1; n <= 3; ++n) {
    for (const auto& tw : kTwists) {
      const auto pair = make_standard_pair(n, TwistSpec::parse(tw));
      const auto t = compute_trace_data(pair);
      c.require_all(t.checks, label(n, tw));
      c.require_all(check_D_properties(pair, t), label(n, tw));
      // Tr_2 R̂ weighted by D is the identity, recomputed directly.
      c.require(quantum_trace(pair.Rhat, {2}, t.D) == TensorOperator::identity(n, 1), label(n, tw) + ": Tr_R R");
    }
  }
  return c.finish();
}

bool projectors() {
  Criterion c("3 projector towers, idempotency, A2 + S2 = I, top vanishing, ranks");
  for (int n = 1; n <= 3; ++n) {
    const auto r = standard_hecke_R(n);
    const auto a = build_tower(r, n + 1, ProjectorKind::Antisymmetrizer);
    const auto s = build_tower(r, n + 1, ProjectorKind::Symmetrizer);
    const std::string where = "n=" + std::to_string(n);
    c.require_all(a.checks, where);
    c.require_all(s.checks, where);
    c.require_all(check_towers(r, a, s, QField::exact(), 7), where);
    c.require(a.level(2) + s.level(2) == TensorOperator::identity(n, 2), where + ": A2 + S2");
    c.require(a.level(n + 1).nonzeros() == 0, where + ": A(n+1) not structurally zero");
    std::uint64_t state = 99;
    for (int draw = 0; draw < 2; ++draw) {
      const mpq_class q0 = draw_q_point(state);
      for (int k = 1; k <= n + 1; ++k) {
        c.require(rank_at(a.level(k), q0) == binomial(n, k), where + ": rank A" + std::to_string(k));
        c.require(rank_at(s.level(k), q0) == binomial(n + k - 1, k), where + ": rank S" + std::to_string(k));
      }
    }
  }
  return c.finish();
}

bool chn_m() {
  Criterion c("4 identity families for M");
  for (int n = 1; n <= 2; ++n) {
    for (const auto& tw : kTwists) {
      const auto f = fixture(n, tw, n + 1);
      const PowerTable t(build_M_rep(f.pair, f.traces), f.a, f.s, n + 1);
      const auto recs = verify_chn_M(t, n + 1);
      c.require(recs.size() == static_cast<std::size_t>(2 * (n + 1)), label(n, tw) + ": record count");
      c.require_all(recs, label(n, tw));
    }
  }
  const auto numeric_start = std::chrono::steady_clock::now();
  RunConfig cfg;
  cfg.n = 3;
  cfg.mode = Mode::Numeric;
  for (const auto& q0 : cfg.numeric_points()) {
    const auto f = fixture(3, "r", 3, QField::numeric(q0));
    const PowerTable t(build_M_rep(f.pair, f.traces), f.a, f.s, 3);
    c.require_all(verify_chn_M(t, 3), "n=3 q=" + q0.get_str());
  }
  c.require(seconds_since(numeric_start) < 30.0, "n=3 numeric pre-check too slow");
  for (const std::string tw : {"p", "r"}) {
    const auto start = std::chrono::steady_clock::now();
    const auto f = fixture(3, tw, 3);
    const PowerTable t(build_M_rep(f.pair, f.traces), f.a, f.s, 3);
    c.require_all(verify_chn_M(t, 3), label(3, tw));
    c.require(seconds_since(start) < 600.0, label(3, tw) + ": too slow");
  }
  return c.finish();
}

bool chn_t() {
  Criterion c("5 identity families for T");
  for (int n = 1; n <= 3; ++n) {
    const int i_max = std::min(n + 1, 3);
    for (const auto& tw : kTwists) {
      if (n == 3 && tw != "p") continue;
      const auto f = fixture(n, tw, i_max);
      const auto rep = build_T_rep(f.pair, f.traces);
      c.require_all(rep.checks, label(n, tw));
      const PowerTable t(rep, f.a, f.s, i_max);
      c.require_all(verify_chn_T(t, i_max), label(n, tw));
    }
  }
  return c.finish();
}

bool commutativity() {
  Criterion c("6 commutativity of sigma_j, tau_k");
  for (int n = 1; n <= 2; ++n) {
    for (const auto& tw : kTwists) {
      const auto f = fixture(n, tw, n + 1);
      const PowerTable t(build_M_rep(f.pair, f.traces), f.a, f.s, n + 1);
      const auto recs = verify_commutativity(t, n + 1, "m");
      c.require_all(recs, label(n, tw));
      // Direct recomputation of one commutator.
      c.require(t.sigma(1) * t.tau(n + 1) == t.tau(n + 1) * t.sigma(1), label(n, tw) + ": sigma1 tau(n+1)");
    }
  }
  return c.finish();
}

bool gauge() {
  Criterion c("7 gauge reductions and transport from X = D to X = D'");
  for (const auto& tw : kTwists) {
    const auto f = fixture(2, tw, 3);
    c.require_all(check_gauge_reductions(f.pair, f.traces), label(2, tw));
    c.require(check_rff_identity(f.pair, f.traces).passed, label(2, tw) + ": rff");
    const auto m = build_M_rep(f.pair, f.traces);
    const auto g = build_gauge_data(f.pair, f.traces, f.traces.D);
    c.require(check_x_relation(m.generator, g, "x").passed, label(2, tw) + ": X=D relation");
    const auto u = TensorOperator::identity(2, 1);
    const auto y = f.traces.Dprime * f.traces.D_inv;
    const auto moved = apply_gauge(g, u, y, "t");
    c.require_all(moved.checks, label(2, tw));
    c.require(moved.data.X == f.traces.Dprime, label(2, tw) + ": X after transport");
    const auto tr = gauge_transport_rep(m, moved.data, u, y, "t");
    c.require_all(tr.checks, label(2, tw));
  }
  return c.finish();
}

// (1/k!) Σ_σ sgn(σ) P_σ on V^{⊗k}, with P_σ moving tensor factor l to slot σ(l).
TensorOperator classical_antisymmetrizer(int n, int k) {
  TensorOperator out(n, k);
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 0);
  long count = 0;
  do {
    int inversions = 0;
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) inversions += perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)];
    }
    const Scalar sign = Scalar::numeric(inversions % 2 == 0 ? 1 : -1);
    for (std::size_t col = 0; col < out.dim(); ++col) {
      const auto in = out.unflatten(col);
      std::vector<int> moved(in.size());
      for (int l = 0; l < k; ++l) moved[static_cast<std::size_t>(perm[static_cast<std::size_t>(l)])] = in[static_cast<std::size_t>(l)];
      out.add_to(out.flatten(moved), col, sign);
    }
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out * Scalar::numeric(mpq_class(1, count));
}

bool classical_limit() {
  Criterion c("8 q = 1 limit of the antisymmetrizers");
  for (int n = 2; n <= 3; ++n) {
    const auto a = build_tower(standard_hecke_R(n), 3, ProjectorKind::Antisymmetrizer);
    for (int k = 1; k <= 3; ++k) {
      const std::string where = "n=" + std::to_string(n) + " k=" + std::to_string(k);
      try {
        c.require(specialize(a.level(k), 1) == classical_antisymmetrizer(n, k), where);
      } catch (const Error& e) {
        c.require(false, where + ": " + e.what());
      }
    }
  }
  return c.finish();
}

bool mutation_sensitivity() {
  Criterion c("9 corrupted antisymmetrizers are detected");
  for (const auto mutation : {TowerMutation::FlipRSign, TowerMutation::ShiftQPower}) {
    const std::string which = mutation == TowerMutation::FlipRSign ? "flip-sign" : "shift-power";
    const auto f = fixture(2, "r", 3, QField::exact(), mutation);
    const PowerTable t(build_M_rep(f.pair, f.traces), f.a, f.s, 3);
    const auto recs = verify_chn_M(t, 3);
    c.require(std::any_of(recs.begin(), recs.end(), [](const CheckRecord& r) { return !r.passed; }),
              which + ": no identity failure");
    RunConfig cfg;
    cfg.n = 2;
    cfg.mutation = mutation;
    c.require(run_verification(cfg).exit_code() == 1, which + ": full run did not exit 1");
  }
  return c.finish();
}

}  // namespace

int main() {
  bool ok = true;
  for (auto* criterion : {pair_validation, trace_machinery, projectors, chn_m, chn_t, commutativity, gauge,
                          classical_limit, mutation_sensitivity}) {
    try {
      ok = criterion() && ok;
    } catch (const std::exception& e) {
      std::cout << "FAIL criterion raised: " << e.what() << "\n";
      ok = false;
    }
  }
  return ok ? 0 : 1;
}
