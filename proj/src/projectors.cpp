#include "qmatrix/projectors.hpp"

#include <random>

#include "qmatrix/parallel.hpp"

namespace qmatrix {

ProjectorTower build_tower(const TensorOperator& rhat, int k_max, ProjectorKind kind, const QField& field,
                           TowerMutation mutation) {
  if (k_max < 1) throw Error(ErrorKind::Config, "tower needs k_max >= 1");
  const int n = rhat.n();
  const bool anti = kind == ProjectorKind::Antisymmetrizer;
  const TowerMutation m = anti ? mutation : TowerMutation::None;
  ProjectorTower tower;
  tower.kind = kind;
  tower.levels.push_back(TensorOperator::identity(n, 1));
  for (int k = 2; k <= k_max; ++k) {
    const Scalar kq = field.q_number(k);
    if (kq.is_zero()) throw Error(ErrorKind::VanishingQNumber, std::to_string(k) + "_q = 0 at " + field.to_string());
    std::vector<int> lower(static_cast<std::size_t>(k - 1));
    for (int l = 1; l < k; ++l) lower[static_cast<std::size_t>(l - 1)] = l;
    const TensorOperator below = embed(tower.levels.back(), lower, k);
    const TensorOperator r = embed(rhat, {k - 1, k}, k);
    int power = anti ? k - 1 : 1 - k;
    if (m == TowerMutation::ShiftQPower) power = k;
    Scalar coeff = field.q_number(k - 1);
    if (anti != (m == TowerMutation::FlipRSign)) coeff = -coeff;
    const TensorOperator middle = field.q_pow(power) * TensorOperator::identity(n, k) + coeff * r;
    tower.levels.push_back(kq.inverse() * (below * middle * below));
  }
  const char* label = anti ? "A" : "S";
  for (int k = 1; k <= k_max; ++k) {
    const auto& lv = tower.level(k);
    tower.checks.push_back(relation_check(std::string("projectors/") + label + "/" + std::to_string(k) + "/idempotent",
                                          "idempotent", lv * lv, lv));
  }
  return tower;
}

std::size_t rank_at(const TensorOperator& op, const mpq_class& q0) { return rank(evaluate(op, q0)); }

mpq_class draw_q_point(std::uint64_t& state) {
  std::mt19937_64 rng(state);
  std::uniform_int_distribution<int> part(2, 100);
  mpq_class v;
  do {
    v = mpq_class(part(rng), part(rng));
    v.canonicalize();
  } while (v == 1);
  state = rng();
  return v;
}

std::size_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::size_t>(n - k + i) / static_cast<std::size_t>(i);
  return r;
}

std::vector<CheckRecord> check_towers(const TensorOperator& rhat, const ProjectorTower& a, const ProjectorTower& s,
                                      const QField& field, std::uint64_t seed) {
  const int n = rhat.n();
  std::vector<CheckRecord> out;
  if (a.k_max() >= 2 && s.k_max() >= 2) {
    out.push_back(relation_check("projectors/A2+S2", "A2 + S2 = I", a.level(2) + s.level(2), TensorOperator::identity(n, 2)));
  }
  if (a.k_max() >= n + 1) {
    const auto& top = a.level(n + 1);
    out.push_back(residual_check("projectors/A/" + std::to_string(n + 1) + "/vanishes", "A(n+1) = 0", top));
  }
  const Scalar minus_qi = -field.q_pow(-1);
  const Scalar q = field.q();
  for (const auto* tower : {&a, &s}) {
    const bool anti = tower->kind == ProjectorKind::Antisymmetrizer;
    const std::string label = anti ? "A" : "S";
    for (int k = 2; k <= tower->k_max(); ++k) {
      const auto& lv = tower->level(k);
      for (int j = 1; j < k; ++j) {
        const auto rj = embed(rhat, {j, j + 1}, k);
        out.push_back(relation_check("projectors/" + label + "/" + std::to_string(k) + "/eigen-R" + std::to_string(j),
                                     anti ? "A R_j A = -q^-1 A" : "S R_j S = q S", lv * rj * lv,
                                     (anti ? minus_qi : q) * lv));
      }
    }
  }
  if (field.is_exact()) {
    std::uint64_t state = seed;
    const mpq_class q1 = draw_q_point(state);
    mpq_class q2 = draw_q_point(state);
    while (q2 == q1) q2 = draw_q_point(state);
    struct Job {
      const TensorOperator* op;
      std::string name;
      std::size_t expected;
    };
    std::vector<Job> jobs;
    for (int k = 1; k <= a.k_max(); ++k) {
      jobs.push_back({&a.level(k), "projectors/A/" + std::to_string(k) + "/rank", binomial(n, k)});
    }
    for (int k = 1; k <= s.k_max(); ++k) {
      jobs.push_back({&s.level(k), "projectors/S/" + std::to_string(k) + "/rank", binomial(n + k - 1, k)});
    }
    std::vector<CheckRecord> recs(jobs.size());
    parallel_for(jobs.size(), [&](std::size_t i) {
      const auto r1 = rank_at(*jobs[i].op, q1);
      const auto r2 = rank_at(*jobs[i].op, q2);
      recs[i] = condition_check(jobs[i].name, "rank at random q", r1 == jobs[i].expected && r2 == jobs[i].expected,
                                "rank " + std::to_string(r1) + " at q=" + q1.get_str() + ", " + std::to_string(r2) +
                                    " at q=" + q2.get_str() + ", expected " + std::to_string(jobs[i].expected));
    });
    for (auto& r : recs) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace qmatrix
