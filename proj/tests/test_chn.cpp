#include "doctest.h"
#include "qmatrix/chn.hpp"
#include "support.hpp"

using namespace qmatrix;

namespace {

using Dense = std::vector<std::vector<Scalar>>;

std::vector<int> digits(std::size_t flat, int n, int legs) {
  std::vector<int> d(static_cast<std::size_t>(legs));
  for (int l = legs - 1; l >= 0; --l) {
    d[static_cast<std::size_t>(l)] = static_cast<int>(flat % static_cast<std::size_t>(n));
    flat /= static_cast<std::size_t>(n);
  }
  return d;
}

Dense dense_embed(const TensorOperator& op, const std::vector<int>& pos, int total) {
  const int n = op.n();
  std::size_t dim = 1;
  for (int l = 0; l < total; ++l) dim *= static_cast<std::size_t>(n);
  Dense out(dim, std::vector<Scalar>(dim));
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) out[r][c] = testing::embed_entry(op, pos, total, digits(r, n, total), digits(c, n, total));
  }
  return out;
}

Dense mul(const Dense& a, const Dense& b) {
  Dense out(a.size(), std::vector<Scalar>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < b.size(); ++j) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

// Tr(W Z) over the last of three legs, written as an explicit index sum.
TensorOperator trace_last(const Dense& z, const TensorOperator& w, int n) {
  TensorOperator out(n, 2);
  for (int a = 0; a < n; ++a) {
    for (int i = 0; i < n; ++i) {
      for (int b = 0; b < n; ++b) {
        for (int j = 0; j < n; ++j) {
          Scalar acc(0);
          for (int k = 0; k < n; ++k) {
            for (int l = 0; l < n; ++l) {
              const auto row = static_cast<std::size_t>(((a * n + i) * n) + l);
              const auto col = static_cast<std::size_t>(((b * n + j) * n) + k);
              acc += w.at(static_cast<std::size_t>(k), static_cast<std::size_t>(l)) * z[row][col];
            }
          }
          out.set(static_cast<std::size_t>(a * n + i), static_cast<std::size_t>(b * n + j), acc);
        }
      }
    }
  }
  return out;
}

struct Setup {
  CompatiblePair pair;
  TraceData traces;
  ProjectorTower a;
  ProjectorTower s;
};

Setup setup(int n, const std::string& twist, int levels, const QField& field = QField::exact()) {
  auto pair = make_standard_pair(n, TwistSpec::parse(twist), field);
  auto traces = compute_trace_data(pair);
  auto a = build_tower(pair.Rhat, levels, ProjectorKind::Antisymmetrizer, field);
  auto s = build_tower(pair.Rhat, levels, ProjectorKind::Symmetrizer, field);
  return {std::move(pair), std::move(traces), std::move(a), std::move(s)};
}

void check_all(const std::vector<CheckRecord>& recs) {
  CHECK_FALSE(recs.empty());
  for (const auto& r : recs) {
    CAPTURE(r.name);
    CAPTURE(r.witness);
    CHECK(r.passed);
  }
}

}  // namespace

TEST_CASE("one-dimensional powers match the scalar formulas") {
  const Scalar q = Scalar::q();
  for (const auto& [twist, f] : std::vector<std::pair<const char*, Scalar>>{{"p", Scalar(1)}, {"r", q}, {"rinv", Scalar::q_pow(-1)}}) {
    CAPTURE(twist);
    const auto st = setup(1, twist, 4);
    const PowerTable t(build_M_rep(st.pair, st.traces), st.a, st.s, 4);
    const Scalar m = q * f;
    const Scalar d = Scalar::q_pow(-1);
    CHECK(st.traces.D.at(0, 0) == d);
    for (int k = 1; k <= 4; ++k) {
      CAPTURE(k);
      Scalar mk(1);
      Scalar dk(1);
      for (int j = 0; j < k; ++j) mk *= m;
      for (int j = 0; j < k - 1; ++j) dk *= d;
      CHECK(t.generalized_power(k).at(0, 0) == mk);
      CHECK(t.sym_power(k).at(0, 0) == dk * mk);
      CHECK(t.tau(k).at(0, 0) == Scalar::q_pow(-k) * dk * d * mk);
      CHECK(t.wedge_power(k).at(0, 0) == (k == 1 ? m : Scalar(0)));
      CHECK(t.sigma(k).at(0, 0) == (k == 1 ? q * d * m : Scalar(0)));
    }
    CHECK(t.sigma(0) == TensorOperator::identity(1, 1));
    CHECK(t.tau(0) == TensorOperator::identity(1, 1));
  }
}

TEST_CASE("second power against an index-level oracle") {
  for (const std::string twist : {"p", "r", "rinv"}) {
    CAPTURE(twist);
    const auto st = setup(2, twist, 2);
    const int n = 2;
    const Dense r23 = dense_embed(st.pair.Rhat, {2, 3}, 3);
    for (const bool is_m : {true, false}) {
      CAPTURE(is_m);
      const Representation rep = is_m ? build_M_rep(st.pair, st.traces) : build_T_rep(st.pair, st.traces);
      const PowerTable t(rep, st.a, st.s, 2);
      const Dense m1 = dense_embed(rep.generator, {1, 2}, 3);
      Dense m2;
      if (is_m) {
        m2 = mul(mul(dense_embed(st.pair.Fhat, {2, 3}, 3), m1), dense_embed(st.pair.Fhat_inv, {2, 3}, 3));
      } else {
        m2 = dense_embed(rep.generator, {1, 3}, 3);
      }
      const Dense chain = mul(m1, m2);
      CHECK(trace_last(mul(r23, chain), st.traces.D, n) == t.generalized_power(2));
      CHECK(trace_last(chain, st.traces.D, n) == t.wedge_power(2) + t.sym_power(2));
    }
  }
}

TEST_CASE("representations satisfy their defining relations") {
  for (int n = 1; n <= 3; ++n) {
    for (const std::string twist : {"p", "r", "rinv"}) {
      CAPTURE(n);
      CAPTURE(twist);
      const auto st = setup(n, twist, 2);
      const auto m = build_M_rep(st.pair, st.traces);
      const auto t = build_T_rep(st.pair, st.traces);
      check_all(m.checks);
      check_all(t.checks);
      CHECK(check_defining_relation(m, "m").passed);
      CHECK(check_defining_relation(t, "t").passed);
      // The block view reassembles to the generator.
      std::vector<std::vector<TensorOperator>> blocks;
      for (int i = 0; i < n; ++i) {
        blocks.emplace_back();
        for (int j = 0; j < n; ++j) blocks.back().push_back(m.block(i, j));
      }
      CHECK(assemble_blocks(blocks) == m.generator);
    }
  }
}

TEST_CASE("top wedge power vanishes") {
  for (int n = 1; n <= 2; ++n) {
    for (const std::string twist : {"p", "r", "rinv"}) {
      const auto st = setup(n, twist, n + 1);
      const PowerTable m(build_M_rep(st.pair, st.traces), st.a, st.s, n + 1);
      const PowerTable t(build_T_rep(st.pair, st.traces), st.a, st.s, n + 1);
      CHECK(m.wedge_power(n + 1).is_zero());
      CHECK(m.sigma(n + 1).is_zero());
      CHECK_FALSE(m.wedge_power(n).is_zero());
      check_all(verify_top_vanishing(m, "m"));
      check_all(verify_top_vanishing(t, "t"));
    }
  }
}

TEST_CASE("both identity families hold for n = 1, 2") {
  for (int n = 1; n <= 2; ++n) {
    for (const std::string twist : {"p", "r", "rinv"}) {
      CAPTURE(n);
      CAPTURE(twist);
      const int levels = n + 2;
      const auto st = setup(n, twist, levels);
      const PowerTable m(build_M_rep(st.pair, st.traces), st.a, st.s, levels);
      const PowerTable t(build_T_rep(st.pair, st.traces), st.a, st.s, levels);
      const auto chn_m = verify_chn_M(m, levels);
      CHECK(chn_m.size() == static_cast<std::size_t>(2 * levels));
      check_all(chn_m);
      check_all(verify_chn_T(t, levels));
      check_all(verify_commutativity(m, levels, "m"));
      check_all(verify_commutativity(t, levels, "t"));
      check_all(newton_cross_check(m, "m"));
      check_all(newton_cross_check(t, "t"));
    }
  }
}

TEST_CASE("identity families at n = 3") {
  const auto st = setup(3, "r", 3);
  const PowerTable m(build_M_rep(st.pair, st.traces), st.a, st.s, 3);
  check_all(verify_chn_M(m, 3));
  check_all(verify_commutativity(m, 3, "m"));
}

TEST_CASE("numeric field agrees with exact evaluation") {
  const mpq_class q0(7, 3);
  const auto ex = setup(2, "r", 3);
  const auto nu = setup(2, "r", 3, QField::numeric(q0));
  const PowerTable e(build_M_rep(ex.pair, ex.traces), ex.a, ex.s, 3);
  const PowerTable v(build_M_rep(nu.pair, nu.traces), nu.a, nu.s, 3);
  for (int k = 0; k <= 3; ++k) {
    CAPTURE(k);
    CHECK(evaluate(e.sigma(k), q0) == v.sigma(k));
    CHECK(evaluate(e.tau(k), q0) == v.tau(k));
    if (k > 0) {
      CHECK(evaluate(e.wedge_power(k), q0) == v.wedge_power(k));
      CHECK(evaluate(e.generalized_power(k), q0) == v.generalized_power(k));
    }
  }
  check_all(verify_chn_M(v, 3));
}

TEST_CASE("corrupted antisymmetrizer breaks the wedge family at i = 2") {
  const auto st = setup(2, "r", 3);
  for (const auto mutation : {TowerMutation::FlipRSign, TowerMutation::ShiftQPower}) {
    const auto bad = build_tower(st.pair.Rhat, 3, ProjectorKind::Antisymmetrizer, QField::exact(), mutation);
    const PowerTable m(build_M_rep(st.pair, st.traces), bad, st.s, 3);
    const auto recs = verify_chn_M(m, 3);
    for (const auto& r : recs) {
      if (r.name == "chn-M/i=1/wedge" || r.name.ends_with("/sym")) CHECK(r.passed);
      if (r.name == "chn-M/i=2/wedge") {
        CHECK_FALSE(r.passed);
        CHECK_FALSE(r.witness.empty());
      }
    }
  }
}
