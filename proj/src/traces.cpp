#include "qmatrix/traces.hpp"

#include <random>

#include "qmatrix/parallel.hpp"

namespace qmatrix {

namespace {

std::size_t pair_index(int n, int a, int b) { return static_cast<std::size_t>(a * n + b); }

}  // namespace

TensorOperator skew_inverse_solve(const TensorOperator& x) {
  if (x.legs() != 2) throw Error(ErrorKind::DimensionMismatch, "skew inverse needs a 2-leg operator");
  const int n = x.n();
  const std::size_t dim = x.dim();
  // B[(b,x),(d,e)] = X[(x,d),(b,e)]; then A·B = P with A[(a,c),(b,x)] = Ψ[(a,b),(c,x)].
  linalg::Dense bt(dim, std::vector<Scalar>(dim));
  for (int b = 0; b < n; ++b) {
    for (int xi = 0; xi < n; ++xi) {
      for (int d = 0; d < n; ++d) {
        for (int e = 0; e < n; ++e) {
          // Store the transpose so one solve gives A: Bᵀ Aᵀ = Pᵀ = P.
          bt[pair_index(n, d, e)][pair_index(n, b, xi)] = x.at(pair_index(n, xi, d), pair_index(n, b, e));
        }
      }
    }
  }
  linalg::Dense p(dim, std::vector<Scalar>(dim));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) p[pair_index(n, i, j)][pair_index(n, j, i)] = Scalar(1);
  }
  linalg::Dense at;
  try {
    at = linalg::solve(std::move(bt), std::move(p));
  } catch (const SingularOperatorError& e) {
    throw SingularOperatorError("the reshaped operator is singular", e.witness(), ErrorKind::NoSkewInverse);
  }
  TensorOperator psi(n, 2);
  for (int a = 0; a < n; ++a) {
    for (int c = 0; c < n; ++c) {
      for (int b = 0; b < n; ++b) {
        for (int xi = 0; xi < n; ++xi) {
          // at = Aᵀ, so A[(a,c),(b,x)] = at[(b,x)][(a,c)].
          psi.set(pair_index(n, a, b), pair_index(n, c, xi), at[pair_index(n, b, xi)][pair_index(n, a, c)]);
        }
      }
    }
  }
  return psi;
}

TensorOperator skew_inverse_fast(const TensorOperator& x) {
  const TensorOperator p = flip(x.n());
  return p * partial_transpose(invert(partial_transpose(p * x, 1)), 1);
}

std::vector<CheckRecord> check_skew_inverse(const TensorOperator& x, const TensorOperator& psi, const std::string& prefix) {
  // After tracing leg 2 the result acts on legs (1, 3), where P13 is the flip.
  const TensorOperator p13 = flip(x.n());
  const auto left = partial_trace(embed(psi, {1, 2}, 3) * embed(x, {2, 3}, 3), {2});
  const auto right = partial_trace(embed(x, {1, 2}, 3) * embed(psi, {2, 3}, 3), {2});
  std::vector<CheckRecord> out;
  out.push_back(relation_check(prefix + "/left", "skew inverse Tr2(S12 X23) = P13", left, p13));
  out.push_back(relation_check(prefix + "/right", "skew inverse Tr2(X12 S23) = P13", right, p13));
  return out;
}

TensorOperator skew_inverse(const TensorOperator& x) {
  TensorOperator psi;
  try {
    psi = skew_inverse_fast(x);
  } catch (const SingularOperatorError&) {
    // The fast route needs an invertible partial transpose; the generic solve
    // decides existence.
    psi = skew_inverse_solve(x);
  }
  for (const auto& rec : check_skew_inverse(x, psi, "skew")) {
    if (!rec.passed) {
      throw Error(ErrorKind::NoSkewInverse, "defining equation " + rec.tag + " fails at " + rec.witness);
    }
  }
  return psi;
}

std::pair<TensorOperator, TensorOperator> compute_D(const TensorOperator& psi, const TensorOperator& phi) {
  TensorOperator d = partial_trace(psi, {2});
  TensorOperator dp = partial_trace(phi, {2});
  for (const auto* m : {&d, &dp}) {
    if (rank(*m) != m->dim()) throw Error(ErrorKind::NonInvertibleD, m == &d ? "Tr_(2) Psi is singular" : "Tr_(2) Phi is singular");
  }
  return {std::move(d), std::move(dp)};
}

TraceData compute_trace_data(const CompatiblePair& pair) {
  TraceData t;
  TensorOperator psi_solve;
  TensorOperator phi_solve;
  const TensorOperator* inputs[2] = {&pair.Rhat, &pair.Fhat};
  TensorOperator* fast[2] = {&t.Psi, &t.Phi};
  TensorOperator* solved[2] = {&psi_solve, &phi_solve};
  parallel_for(4, [&](std::size_t i) {
    const std::size_t which = i / 2;
    try {
      if (i % 2 == 0) {
        *fast[which] = skew_inverse_fast(*inputs[which]);
      } else {
        *solved[which] = skew_inverse_solve(*inputs[which]);
      }
    } catch (const SingularOperatorError&) {
      if (i % 2 == 1) throw;
    }
  });
  const char* names[2] = {"traces/Psi", "traces/Phi"};
  for (std::size_t w = 0; w < 2; ++w) {
    if (fast[w]->dim() == 0) {
      t.checks.push_back(condition_check(std::string(names[w]) + "/routes-agree", "skew inverse routes", true,
                                         "partial transpose singular; generic solve used"));
      *fast[w] = *solved[w];
    } else {
      t.checks.push_back(relation_check(std::string(names[w]) + "/routes-agree", "skew inverse routes", *fast[w], *solved[w]));
    }
    auto eqs = check_skew_inverse(*inputs[w], *fast[w], names[w]);
    bool left = eqs[0].passed;
    bool right = eqs[1].passed;
    for (auto& e : eqs) t.checks.push_back(std::move(e));
    if (left != right) {
      throw Error(ErrorKind::NoSkewInverse, std::string(names[w]) + ": only the " + (left ? "left" : "right") +
                                                " defining equation holds");
    }
  }
  std::tie(t.D, t.Dprime) = compute_D(t.Psi, t.Phi);
  t.D_inv = invert(t.D);
  t.Dprime_inv = invert(t.Dprime);
  return t;
}

TensorOperator quantum_trace(const TensorOperator& z, std::span<const int> legs, const TensorOperator& d) {
  return partial_trace(z, legs, &d);
}

TensorOperator quantum_trace(const TensorOperator& z, std::initializer_list<int> legs, const TensorOperator& d) {
  return partial_trace(z, legs, &d);
}

TensorOperator random_single_leg(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> v(-3, 3);
  TensorOperator z(n, 1);
  for (std::size_t r = 0; r < z.dim(); ++r) {
    for (std::size_t c = 0; c < z.dim(); ++c) z.set(r, c, Scalar(v(rng)));
  }
  return z;
}

std::vector<CheckRecord> check_D_properties(const CompatiblePair& pair, const TraceData& traces, std::uint64_t seed) {
  const int n = pair.n;
  const TensorOperator& d = traces.D;
  const TensorOperator id1 = TensorOperator::identity(n, 1);
  const TensorOperator z = random_single_leg(n, seed);
  const TensorOperator z1 = embed(z, {1}, 2);
  const Scalar trz = quantum_trace(z, {1}, d).scalar_value();
  const TensorOperator dd = embed(d, {1}, 2) * embed(d, {2}, 2);

  std::vector<CheckRecord> out;
  out.push_back(relation_check("traces/D/trace-R", "Tr_R2 R1 = I", quantum_trace(pair.Rhat, {2}, d), id1));
  struct Conj {
    const char* label;
    const TensorOperator* x;
    const TensorOperator* x_inv;
  };
  const Conj conj[] = {{"R", &pair.Rhat, &pair.Rhat_inv}, {"F", &pair.Fhat, &pair.Fhat_inv}};
  for (const auto& c : conj) {
    for (int sign : {1, -1}) {
      const auto& a = sign > 0 ? *c.x : *c.x_inv;
      const auto& b = sign > 0 ? *c.x_inv : *c.x;
      const std::string s = sign > 0 ? "+" : "-";
      out.push_back(relation_check(std::string("traces/D/conjugation-") + c.label + s,
                                   std::string("Tr_R2(") + c.label + "^{" + s + "1} Z1 " + c.label + "^{" +
                                       (sign > 0 ? "-" : "+") + "1}) = I Tr_R Z",
                                   quantum_trace(a * z1 * b, {2}, d), trz * id1));
    }
  }
  out.push_back(relation_check("traces/D/commutes-R", "R D1 D2 = D1 D2 R", pair.Rhat * dd, dd * pair.Rhat));
  out.push_back(relation_check("traces/D/commutes-F", "F D1 D2 = D1 D2 F", pair.Fhat * dd, dd * pair.Fhat));
  return out;
}

}  // namespace qmatrix
