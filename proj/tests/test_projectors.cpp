#include "doctest.h"
#include "qmatrix/projectors.hpp"
#include "qmatrix/rfpair.hpp"

using namespace qmatrix;

TEST_CASE("first levels") {
  const auto r = standard_hecke_R(2);
  const auto a = build_tower(r, 3, ProjectorKind::Antisymmetrizer);
  const auto s = build_tower(r, 3, ProjectorKind::Symmetrizer);
  CHECK(a.level(1) == TensorOperator::identity(2, 1));
  CHECK(s.level(1) == TensorOperator::identity(2, 1));
  const Scalar q = Scalar::q();
  CHECK(a.level(2) == q_number(2).inverse() * (q * TensorOperator::identity(2, 2) - r));
  CHECK(rank_at(a.level(2), 2) == 1);
  CHECK(rank_at(a.level(3), 2) == 0);
  CHECK(a.level(3).is_zero());
  CHECK(rank_at(s.level(2), 2) == 3);
}

TEST_CASE("tower checks hold for n = 1..3") {
  for (int n = 1; n <= 3; ++n) {
    const auto r = standard_hecke_R(n);
    const auto a = build_tower(r, n + 1, ProjectorKind::Antisymmetrizer);
    const auto s = build_tower(r, n + 1, ProjectorKind::Symmetrizer);
    CAPTURE(n);
    for (const auto* t : {&a, &s}) {
      for (const auto& c : t->checks) {
        CAPTURE(c.name);
        CHECK(c.passed);
      }
    }
    const auto recs = check_towers(r, a, s, QField::exact(), 99);
    for (const auto& c : recs) {
      CAPTURE(c.name);
      CAPTURE(c.detail);
      CHECK(c.passed);
    }
  }
}

TEST_CASE("lower level absorbs") {
  const QField field = QField::numeric(mpq_class(7, 3));
  const auto r = standard_hecke_R(3, field);
  const auto a = build_tower(r, 3, ProjectorKind::Antisymmetrizer, field);
  const auto s = build_tower(r, 3, ProjectorKind::Symmetrizer, field);
  CHECK(a.level(3) * embed(a.level(2), {1, 2}, 3) == a.level(3));
  CHECK(embed(s.level(2), {2, 3}, 3) * s.level(3) == s.level(3));
}

TEST_CASE("mutations break idempotency") {
  const auto r = standard_hecke_R(2);
  for (auto m : {TowerMutation::FlipRSign, TowerMutation::ShiftQPower}) {
    const auto a = build_tower(r, 3, ProjectorKind::Antisymmetrizer, QField::exact(), m);
    bool any_fail = false;
    for (const auto& c : a.checks) any_fail = any_fail || !c.passed;
    CHECK(any_fail);
  }
}

TEST_CASE("binomials and q points") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(2, 3) == 0);
  std::uint64_t state = 42;
  for (int i = 0; i < 100; ++i) {
    const mpq_class v = draw_q_point(state);
    CHECK(v != 1);
    CHECK(v.get_num() <= 100);
    CHECK(v.get_den() <= 100);
  }
}
