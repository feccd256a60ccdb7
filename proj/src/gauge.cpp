#include "qmatrix/gauge.hpp"

namespace qmatrix {

namespace {

TensorOperator checked_inverse(const TensorOperator& x, const std::string& what) {
  try {
    return invert(x);
  } catch (const SingularOperatorError& e) {
    throw SingularOperatorError(what + " is singular", e.witness(), ErrorKind::SingularGauge);
  }
}

TensorOperator both_legs(const TensorOperator& x) { return embed(x, {1}, 2) * embed(x, {2}, 2); }

}  // namespace

GaugeData build_gauge_data(const TensorOperator& rhat, const TensorOperator& fhat, const TensorOperator& phi,
                           const TensorOperator& x, const QField& field) {
  GaugeData g;
  g.n = rhat.n();
  g.field = field;
  g.Rhat = rhat;
  g.Fhat = fhat;
  g.Fhat_inv = checked_inverse(fhat, "F");
  g.Phi = phi;
  g.X = x;
  g.X_inv = checked_inverse(x, "X");
  const TensorOperator phi_inv = checked_inverse(phi, "Phi");
  g.Ahat = embed(x, {2}, 2) * embed(phi_inv, {2, 1}, 2) * embed(g.X_inv, {1}, 2);
  const TensorOperator xx = both_legs(x);
  const TensorOperator xx_inv = both_legs(g.X_inv);
  g.Bhat = xx * g.Fhat_inv;
  g.RhatX = xx * rhat * xx_inv;
  g.FhatInvX = xx * g.Fhat_inv * xx_inv;
  return g;
}

GaugeData build_gauge_data(const CompatiblePair& pair, const TraceData& traces, const TensorOperator& x) {
  return build_gauge_data(pair.Rhat, pair.Fhat, traces.Phi, x, pair.field);
}

CheckRecord check_rff_identity(const CompatiblePair& pair, const TraceData& traces) {
  const TensorOperator ff = pair.Fhat * pair.Fhat;
  const TensorOperator ff_inv = pair.Fhat_inv * pair.Fhat_inv;
  const TensorOperator dd = both_legs(traces.Dprime);
  const TensorOperator dd_inv = both_legs(traces.Dprime_inv);
  return relation_check("gauge/rff", "F^2 R F^-2 = D'1 D'2 R (D'1 D'2)^-1", ff * pair.Rhat * ff_inv,
                        dd * pair.Rhat * dd_inv);
}

std::vector<CheckRecord> check_gauge_reductions(const CompatiblePair& pair, const TraceData& traces) {
  std::vector<CheckRecord> out;
  const GaugeData at_d = build_gauge_data(pair, traces, traces.D);
  out.push_back(relation_check("gauge/X=D/A=F", "X=D: A = F", at_d.Ahat, pair.Fhat));
  out.push_back(relation_check("gauge/X=D/FinvX=Finv", "X=D: (F^-1)^X = F^-1", at_d.FhatInvX, pair.Fhat_inv));
  out.push_back(relation_check("gauge/X=D/RX=R", "X=D: R^X = R", at_d.RhatX, pair.Rhat));
  const GaugeData at_dp = build_gauge_data(pair, traces, traces.Dprime);
  out.push_back(relation_check("gauge/X=D'/A=F", "X=D': A = F", at_dp.Ahat, pair.Fhat));
  out.push_back(relation_check("gauge/X=D'/RX=FFRFF", "X=D': R^X = F^2 R F^-2", at_dp.RhatX,
                               pair.Fhat * pair.Fhat * pair.Rhat * pair.Fhat_inv * pair.Fhat_inv));
  return out;
}

GaugeResult apply_gauge(const GaugeData& g, const TensorOperator& u, const TensorOperator& y, const std::string& prefix) {
  const TensorOperator u_inv = checked_inverse(u, "U");
  const TensorOperator y_inv = checked_inverse(y, "Y");
  const TensorOperator uu = both_legs(u);
  const TensorOperator uu_inv = both_legs(u_inv);
  const TensorOperator rhat = uu * g.Rhat * uu_inv;
  const TensorOperator fhat = uu * g.Fhat * uu_inv;
  const TensorOperator x = y * g.X * u_inv;
  const TensorOperator phi = skew_inverse(fhat);

  GaugeResult res;
  const GaugeData rebuilt = build_gauge_data(rhat, fhat, phi, x, g.field);
  res.data = rebuilt;
  res.data.Ahat = embed(y, {1}, 2) * embed(u, {2}, 2) * g.Ahat * embed(u_inv, {1}, 2) * embed(y_inv, {2}, 2);
  res.checks.push_back(relation_check(prefix + "/A-rebuilt", "transformed A = A rebuilt from transformed F and X",
                                      res.data.Ahat, rebuilt.Ahat));
  auto compat = check_compatibility(rhat, fhat);
  for (auto& c : compat) {
    c.name = prefix + "/" + c.name;
    res.checks.push_back(std::move(c));
  }
  return res;
}

CheckRecord check_x_relation(const TensorOperator& generator, const GaugeData& g, const std::string& name) {
  const TensorOperator m1 = embed(generator, {1, 2}, 3);
  const TensorOperator r = embed(g.Rhat, {2, 3}, 3);
  const TensorOperator a = embed(g.Ahat, {2, 3}, 3);
  const TensorOperator fx = embed(g.FhatInvX, {2, 3}, 3);
  const TensorOperator rx = embed(g.RhatX, {2, 3}, 3);
  const TensorOperator core = m1 * a * m1 * fx;
  return relation_check(name, "R M1 A M1 (F^-1)^X = M1 A M1 (F^-1)^X R^X", r * core, core * rx);
}

TransportResult gauge_transport_rep(const Representation& m_rep, const GaugeData& transformed, const TensorOperator& u,
                                    const TensorOperator& y, const std::string& prefix) {
  const int n = m_rep.n;
  const TensorOperator y_inv = checked_inverse(y, "Y");
  checked_inverse(u, "U");
  std::vector<std::vector<TensorOperator>> blocks(static_cast<std::size_t>(n));
  std::vector<std::vector<TensorOperator>> original(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) original[static_cast<std::size_t>(i)].push_back(m_rep.block(i, j));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      TensorOperator b(n, 1);
      for (int k = 0; k < n; ++k) {
        const Scalar uik = u.at(static_cast<std::size_t>(i), static_cast<std::size_t>(k));
        if (uik.is_zero()) continue;
        for (int l = 0; l < n; ++l) {
          const Scalar ylj = y_inv.at(static_cast<std::size_t>(l), static_cast<std::size_t>(j));
          if (ylj.is_zero()) continue;
          b += (uik * ylj) * original[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
        }
      }
      blocks[static_cast<std::size_t>(i)].push_back(std::move(b));
    }
  }
  TransportResult res;
  Representation& rep = res.rep;
  rep.label = m_rep.label + "'";
  rep.n = n;
  rep.field = m_rep.field;
  rep.generator = assemble_blocks(blocks);
  rep.chain = Representation::Chain::Conjugate;
  rep.left = transformed.Ahat;
  rep.right = transformed.FhatInvX;
  rep.rhat = transformed.Rhat;
  rep.weight = transformed.X;
  rep.convention = m_rep.convention + ", transported by M -> U M Y^-1";
  res.checks.push_back(check_x_relation(rep.generator, transformed, prefix + "/relation"));
  return res;
}

std::vector<CheckRecord> verify_transported_chn(const Representation& rep, int i_max, const std::string& prefix) {
  const ProjectorTower a = build_tower(rep.rhat, i_max, ProjectorKind::Antisymmetrizer, rep.field);
  const ProjectorTower s = build_tower(rep.rhat, i_max, ProjectorKind::Symmetrizer, rep.field);
  const PowerTable table(rep, a, s, i_max);
  std::vector<CheckRecord> out = verify_chn(table, i_max, prefix + "/chn");
  for (auto& c : verify_commutativity(table, i_max, prefix + "/commute")) out.push_back(std::move(c));
  for (auto& c : newton_cross_check(table, prefix + "/cross")) out.push_back(std::move(c));
  return out;
}

}  // namespace qmatrix
