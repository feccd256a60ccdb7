#include "doctest.h"
#include "qmatrix/traces.hpp"

using namespace qmatrix;

namespace {

TensorOperator diag(int n, const std::vector<Scalar>& v) {
  TensorOperator d(n, 1);
  for (int i = 0; i < n; ++i) d.set(static_cast<std::size_t>(i), static_cast<std::size_t>(i), v[static_cast<std::size_t>(i)]);
  return d;
}

}  // namespace

TEST_CASE("flip is its own skew inverse") {
  for (int n = 1; n <= 3; ++n) {
    CHECK(skew_inverse_solve(permutation_P(n)) == permutation_P(n));
    CHECK(skew_inverse(permutation_P(n)) == permutation_P(n));
  }
}

TEST_CASE("skew inverse routes agree and satisfy both equations") {
  for (int n = 1; n <= 3; ++n) {
    const auto r = standard_hecke_R(n);
    for (const auto& x : {r, invert(r)}) {
      const auto slow = skew_inverse_solve(x);
      CHECK(skew_inverse_fast(x) == slow);
      for (const auto& rec : check_skew_inverse(x, slow, "t")) CHECK(rec.passed);
    }
  }
}

TEST_CASE("skew inverse routes agree on random operators") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const int n = seed % 2 ? 2 : 3;
    TensorOperator x(n, 2);
    const auto a = random_single_leg(n * n, seed);
    for (std::size_t r = 0; r < x.dim(); ++r) {
      for (std::size_t c = 0; c < x.dim(); ++c) x.set(r, c, a.at(r, c) + Scalar(r == c ? 5 : 0) * Scalar::q());
    }
    const auto slow = skew_inverse_solve(x);
    CHECK(skew_inverse_fast(x) == slow);
    for (const auto& rec : check_skew_inverse(x, slow, "t")) CHECK(rec.passed);
  }
}

TEST_CASE("rank-deficient operator has no skew inverse") {
  TensorOperator e(2, 2);
  e.set(0, 0, Scalar(1));
  try {
    skew_inverse(e);
    FAIL("no error");
  } catch (const SingularOperatorError& err) {
    CHECK(err.kind() == ErrorKind::NoSkewInverse);
    CHECK_FALSE(err.witness().empty());
  }
}

TEST_CASE("D matrices") {
  const Scalar q = Scalar::q();
  // Frozen from the linear solve; validated below by the trace identities.
  const auto d2 = diag(2, {Scalar::q_pow(-3), Scalar::q_pow(-1)});
  const auto d3 = diag(3, {Scalar::q_pow(-5), Scalar::q_pow(-3), Scalar::q_pow(-1)});
  const auto t2 = compute_trace_data(make_standard_pair(2, TwistSpec::parse("p")));
  CHECK(t2.D == d2);
  CHECK(t2.Dprime == TensorOperator::identity(2, 1));
  const auto t3 = compute_trace_data(make_standard_pair(3, TwistSpec::parse("r")));
  CHECK(t3.D == d3);
  CHECK(t3.Dprime == t3.D);
  const auto ti = compute_trace_data(make_standard_pair(2, TwistSpec::parse("rinv")));
  CHECK(ti.Dprime == diag(2, {Scalar::q_pow(1), Scalar::q_pow(3)}));
  CHECK(quantum_trace(TensorOperator::identity(2, 1), {1}, t2.D).scalar_value() == Scalar::q_pow(-3) + Scalar::q_pow(-1));
}

TEST_CASE("D properties for every built-in twist") {
  for (int n = 1; n <= 3; ++n) {
    for (const char* tw : {"p", "r", "rinv"}) {
      const auto pair = make_standard_pair(n, TwistSpec::parse(tw));
      const auto t = compute_trace_data(pair);
      CAPTURE(n);
      CAPTURE(tw);
      for (const auto& c : t.checks) {
        CAPTURE(c.name);
        CHECK(c.passed);
      }
      for (std::uint64_t seed : {1u, 2u}) {
        for (const auto& c : check_D_properties(pair, t, seed)) {
          CAPTURE(c.name);
          CHECK(c.passed);
        }
      }
    }
  }
}

TEST_CASE("quantum trace is basis independent at numeric q") {
  const QField field = QField::numeric(mpq_class(5, 3));
  const auto pair = make_standard_pair(2, TwistSpec::parse("r"), field);
  const auto t = compute_trace_data(pair);
  const auto z = random_single_leg(2, 5);
  const auto w = random_single_leg(2, 6);
  // Tr_R is linear; conjugating Z and D together leaves it unchanged.
  const auto g = random_single_leg(2, 7) + 9 * TensorOperator::identity(2, 1);
  const auto gi = invert(g);
  const auto lhs = quantum_trace(g * z * gi, {1}, g * t.D * gi).scalar_value();
  CHECK(lhs == quantum_trace(z, {1}, t.D).scalar_value());
  CHECK(quantum_trace(z + w, {1}, t.D) == quantum_trace(z, {1}, t.D) + quantum_trace(w, {1}, t.D));
}
