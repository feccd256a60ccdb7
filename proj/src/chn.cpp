#include "qmatrix/chn.hpp"

#include <numeric>

#include "qmatrix/parallel.hpp"

namespace qmatrix {

namespace {

std::vector<int> leg_range(int first, int last) {
  std::vector<int> legs;
  for (int l = first; l <= last; ++l) legs.push_back(l);
  return legs;
}

}  // namespace

TensorOperator Representation::block(int i, int j) const {
  TensorOperator b(n, 1);
  for (int a = 0; a < n; ++a) {
    for (int c = 0; c < n; ++c) {
      b.set(static_cast<std::size_t>(a), static_cast<std::size_t>(c),
            generator.at(static_cast<std::size_t>(a * n + i), static_cast<std::size_t>(c * n + j)));
    }
  }
  return b;
}

TensorOperator assemble_blocks(const std::vector<std::vector<TensorOperator>>& blocks) {
  const int n = static_cast<int>(blocks.size());
  TensorOperator gen(n, 2);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto& b = blocks[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      for (std::size_t a = 0; a < b.dim(); ++a) {
        for (const auto& [c, v] : b.row(a)) gen.set(a * static_cast<std::size_t>(n) + static_cast<std::size_t>(i), c * static_cast<std::size_t>(n) + static_cast<std::size_t>(j), v);
      }
    }
  }
  return gen;
}

TensorOperator build_chain(const Representation& rep, int k) {
  if (k < 1) throw Error(ErrorKind::Config, "chain length must be at least 1");
  const int total = k + 1;
  TensorOperator mbar = embed(rep.generator, {1, 2}, total);
  TensorOperator chain = mbar;
  for (int j = 1; j < k; ++j) {
    // M̄_{j+1} acts on V₀ and V_{j+1} (operator leg j+2).
    if (rep.chain == Representation::Chain::Place) {
      mbar = embed(rep.generator, {1, j + 2}, total);
    } else {
      mbar = embed(rep.left, {j + 1, j + 2}, total) * mbar * embed(rep.right, {j + 1, j + 2}, total);
    }
    chain = chain * mbar;
  }
  return chain;
}

CheckRecord check_defining_relation(const Representation& rep, const std::string& name) {
  const TensorOperator chain = build_chain(rep, 2);
  const TensorOperator r = embed(rep.rhat, {2, 3}, 3);
  return relation_check(name, "defining relation R23 chain(2) = chain(2) R23", r * chain, chain * r,
                        "convention: " + rep.convention);
}

namespace {

Representation try_conventions(Representation rep, const TensorOperator& direct, const std::string& check_name,
                               const char* direct_label, const char* swapped_label) {
  rep.generator = direct;
  rep.convention = direct_label;
  CheckRecord rec = check_defining_relation(rep, check_name);
  if (!rec.passed) {
    Representation alt = rep;
    alt.generator = embed(direct, {2, 1}, 2);
    alt.convention = swapped_label;
    CheckRecord alt_rec = check_defining_relation(alt, check_name);
    if (!alt_rec.passed) {
      throw Error(ErrorKind::NoRepresentationConvention,
                  rep.label + " representation: " + rec.witness + " (direct), " + alt_rec.witness + " (swapped)");
    }
    alt_rec.detail += "; direct pairing failed at " + rec.witness;
    alt.checks.push_back(std::move(alt_rec));
    return alt;
  }
  rep.checks.push_back(std::move(rec));
  return rep;
}

}  // namespace

Representation build_M_rep(const CompatiblePair& pair, const TraceData& traces) {
  Representation rep;
  rep.label = "M";
  rep.n = pair.n;
  rep.field = pair.field;
  rep.chain = Representation::Chain::Conjugate;
  rep.left = pair.Fhat;
  rep.right = pair.Fhat_inv;
  rep.rhat = pair.Rhat;
  rep.weight = traces.D;
  return try_conventions(std::move(rep), pair.Rhat * pair.Fhat, "rep/M/defining-relation",
                         "rho(M^i_j)^a_b = (RF)[(a,i),(b,j)]", "rho(M^i_j)^a_b = (RF)[(i,a),(j,b)]");
}

Representation build_T_rep(const CompatiblePair& pair, const TraceData& traces) {
  Representation rep;
  rep.label = "T";
  rep.n = pair.n;
  rep.field = pair.field;
  rep.chain = Representation::Chain::Place;
  rep.rhat = pair.Rhat;
  rep.weight = traces.D;
  const TensorOperator r = flip(pair.n) * pair.Rhat;
  return try_conventions(std::move(rep), r, "rep/T/rtt-relation", "rho(T^i_j)^a_b = R[(a,i),(b,j)]",
                         "rho(T^i_j)^a_b = R[(i,a),(j,b)]");
}

PowerTable::PowerTable(const Representation& rep, const ProjectorTower& antisym, const ProjectorTower& sym, int k_max)
    : rep_(rep), k_max_(k_max) {
  if (antisym.k_max() < k_max || sym.k_max() < k_max) {
    throw Error(ErrorKind::Config, "projector towers shorter than the requested level");
  }
  const auto size = static_cast<std::size_t>(k_max) + 1;
  gen_.resize(size);
  wedge_.resize(size);
  symp_.resize(size);
  sigma_.resize(size);
  tau_.resize(size);
  sigma_[0] = TensorOperator::identity(rep.n, 1);
  tau_[0] = TensorOperator::identity(rep.n, 1);

  std::vector<TensorOperator> chains(size);
  for (int k = 1; k <= k_max; ++k) chains[static_cast<std::size_t>(k)] = build_chain(rep, k);

  const TensorOperator& w = rep.weight;
  // Independent (level, quantity) cells.
  parallel_for(static_cast<std::size_t>(k_max) * 3, [&](std::size_t cell) {
    const int k = static_cast<int>(cell / 3) + 1;
    const int what = static_cast<int>(cell % 3);
    const int total = k + 1;
    const auto& chain = chains[static_cast<std::size_t>(k)];
    const auto upper = leg_range(3, total);
    auto trace_upper = [&](const TensorOperator& x) { return upper.empty() ? x : partial_trace(x, upper, &w); };
    if (what == 0) {
      TensorOperator x = chain;
      for (int j = k - 1; j >= 1; --j) x = embed(rep.rhat, {j + 1, j + 2}, total) * x;
      gen_[static_cast<std::size_t>(k)] = trace_upper(x);
    } else {
      const bool anti = what == 1;
      const auto& proj = (anti ? antisym : sym).level(k);
      const TensorOperator x = embed(proj, leg_range(2, total), total) * chain;
      TensorOperator power = trace_upper(x);
      TensorOperator fn = rep.field.q_pow(anti ? k : -k) * partial_trace(power, {2}, &w);
      (anti ? wedge_ : symp_)[static_cast<std::size_t>(k)] = std::move(power);
      (anti ? sigma_ : tau_)[static_cast<std::size_t>(k)] = std::move(fn);
    }
  });
}

std::vector<CheckRecord> verify_chn(const PowerTable& table, int i_max, const std::string& prefix) {
  if (i_max > table.k_max()) throw Error(ErrorKind::Config, "i_max exceeds the computed levels");
  const int n = table.rep().n;
  const QField& field = table.rep().field;
  std::vector<CheckRecord> out(static_cast<std::size_t>(i_max) * 2);
  parallel_for(out.size(), [&](std::size_t cell) {
    const int i = static_cast<int>(cell / 2) + 1;
    const bool wedge = cell % 2 == 0;
    TensorOperator rhs(n, 2);
    for (int k = 0; k < i; ++k) {
      const auto& fn = wedge ? table.sigma(k) : table.tau(k);
      TensorOperator term = table.generalized_power(i - k) * embed(fn, {1}, 2);
      if (wedge && (i - k + 1) % 2 != 0) term *= Scalar(-1);
      rhs += term;
    }
    const TensorOperator lhs = field.q_number(i) * (wedge ? table.wedge_power(i) : table.sym_power(i));
    const std::string family = wedge ? "wedge" : "sym";
    out[cell] = timed([&] {
      return relation_check(prefix + "/i=" + std::to_string(i) + "/" + family,
                            prefix + "/i=" + std::to_string(i) + "/" + family, lhs, rhs);
    });
  });
  return out;
}

std::vector<CheckRecord> verify_chn_M(const PowerTable& table, int i_max) { return verify_chn(table, i_max, "chn-M"); }

std::vector<CheckRecord> verify_chn_T(const PowerTable& table, int i_max) { return verify_chn(table, i_max, "chn-T"); }

std::vector<CheckRecord> verify_commutativity(const PowerTable& table, int k_max, const std::string& prefix) {
  struct Item {
    std::string name;
    const TensorOperator* op;
  };
  std::vector<Item> items;
  for (int k = 0; k <= k_max; ++k) items.push_back({"sigma" + std::to_string(k), &table.sigma(k)});
  for (int k = 0; k <= k_max; ++k) items.push_back({"tau" + std::to_string(k), &table.tau(k)});
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < items.size(); ++a) {
    for (std::size_t b = a + 1; b < items.size(); ++b) pairs.emplace_back(a, b);
  }
  std::vector<CheckRecord> out(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t p) {
    const auto& x = items[pairs[p].first];
    const auto& y = items[pairs[p].second];
    out[p] = relation_check(prefix + "/" + x.name + "-" + y.name, "commutator on V0", *x.op * *y.op, *y.op * *x.op,
                            "necessary for, not equivalent to, commutativity in the algebra");
  });
  return out;
}

std::vector<CheckRecord> newton_cross_check(const PowerTable& table, const std::string& prefix) {
  std::vector<CheckRecord> out;
  if (table.k_max() < 2) return out;
  const auto& rep = table.rep();
  const QField& field = rep.field;
  const TensorOperator both = table.wedge_power(2) + table.sym_power(2);
  const TensorOperator fn = table.sigma(1) + table.tau(1);
  out.push_back(relation_check(prefix + "/newton-eliminated", "2_q (wedge2 + sym2) = M (sigma1 + tau1)",
                               field.q_number(2) * both, table.generalized_power(1) * embed(fn, {1}, 2)));
  const TensorOperator chain = build_chain(rep, 2);
  out.push_back(relation_check(prefix + "/wedge2+sym2", "wedge2 + sym2 = Tr_R2(chain(2))", both,
                               partial_trace(chain, {3}, &rep.weight)));
  return out;
}

std::vector<CheckRecord> verify_top_vanishing(const PowerTable& table, const std::string& prefix) {
  std::vector<CheckRecord> out;
  const int top = table.rep().n + 1;
  if (table.k_max() < top) return out;
  out.push_back(residual_check(prefix + "/wedge" + std::to_string(top) + "-vanishes", "wedge power above n vanishes",
                               table.wedge_power(top)));
  out.push_back(residual_check(prefix + "/sigma" + std::to_string(top) + "-vanishes", "sigma above n vanishes",
                               table.sigma(top)));
  return out;
}

}  // namespace qmatrix
