#include "qmatrix/rfpair.hpp"

#include "qmatrix/matrix_io.hpp"
#include "qmatrix/parallel.hpp"

namespace qmatrix {

TensorOperator standard_hecke_R(int n, const QField& field) {
  if (n < 1) throw Error(ErrorKind::Config, "n must be at least 1");
  const Scalar q = field.q();
  const Scalar gap = field.q() - field.q_pow(-1);
  TensorOperator r(n, 2);
  auto at = [n](int a, int b) { return static_cast<std::size_t>(a * n + b); };
  for (int i = 0; i < n; ++i) {
    r.set(at(i, i), at(i, i), q);
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      // e_ji ⊗ e_ij maps e_i⊗e_j to e_j⊗e_i.
      r.set(at(j, i), at(i, j), Scalar(1));
      if (i < j) r.set(at(i, j), at(i, j), gap);
    }
  }
  return r;
}

TensorOperator permutation_P(int n) { return flip(n); }

TwistSpec TwistSpec::parse(std::string_view text) {
  TwistSpec spec;
  if (text == "p" || text == "P") {
    spec.kind = TwistKind::P;
  } else if (text == "r" || text == "R") {
    spec.kind = TwistKind::R;
  } else if (text == "rinv" || text == "Rinv") {
    spec.kind = TwistKind::Rinv;
  } else if (text.starts_with("file:") && text.size() > 5) {
    spec.kind = TwistKind::File;
    spec.path = std::string(text.substr(5));
  } else {
    throw Error(ErrorKind::Config, "unknown twist '" + std::string(text) + "' (expected p, r, rinv or file:<path>)");
  }
  return spec;
}

std::string TwistSpec::to_string() const {
  switch (kind) {
    case TwistKind::P: return "p";
    case TwistKind::R: return "r";
    case TwistKind::Rinv: return "rinv";
    case TwistKind::File: return "file:" + path;
  }
  return "?";
}

TensorOperator twist_from(const TwistSpec& spec, const TensorOperator& rhat, const QField& field) {
  switch (spec.kind) {
    case TwistKind::P: return permutation_P(rhat.n());
    case TwistKind::R: return rhat;
    case TwistKind::Rinv: return invert(rhat);
    case TwistKind::File: {
      TensorOperator f = read_matrix_file(spec.path);
      if (f.legs() != 2 || f.n() != rhat.n()) {
        throw Error(ErrorKind::DimensionMismatch, "twist file " + spec.path + " has n=" + std::to_string(f.n()) +
                                                      ", legs=" + std::to_string(f.legs()) + "; expected n=" +
                                                      std::to_string(rhat.n()) + ", legs=2");
      }
      return lift(f, field);
    }
  }
  throw Error(ErrorKind::Config, "unknown twist kind");
}

CheckRecord check_braid(const TensorOperator& x, std::string name) {
  const TensorOperator x1 = embed(x, {1, 2}, 3);
  const TensorOperator x2 = embed(x, {2, 3}, 3);
  return relation_check(std::move(name), "braid", x1 * x2 * x1, x2 * x1 * x2);
}

CheckRecord check_hecke(const TensorOperator& x, const QField& field, std::string name) {
  const Scalar gap = field.q() - field.q_pow(-1);
  const TensorOperator id = TensorOperator::identity(x.n(), x.legs());
  return residual_check(std::move(name), "hecke", x * x - gap * x - id);
}

std::vector<CheckRecord> check_compatibility(const TensorOperator& rhat, const TensorOperator& fhat) {
  if (rhat.n() != fhat.n() || rhat.legs() != 2 || fhat.legs() != 2) {
    throw Error(ErrorKind::DimensionMismatch, "compatibility needs two 2-leg operators on the same V");
  }
  const TensorOperator p = flip(rhat.n());
  const TensorOperator r = p * rhat;
  const TensorOperator f = p * fhat;
  const auto R12 = embed(r, {1, 2}, 3);
  const auto R13 = embed(r, {1, 3}, 3);
  const auto R23 = embed(r, {2, 3}, 3);
  const auto F12 = embed(f, {1, 2}, 3);
  const auto F13 = embed(f, {1, 3}, 3);
  const auto F23 = embed(f, {2, 3}, 3);
  std::vector<CheckRecord> out(4);
  parallel_for(4, [&](std::size_t i) {
    switch (i) {
      case 0:
        out[0] = relation_check(check_names::mixed_RFF, "mixed relation R12 F13 F23 = F23 F13 R12", R12 * F13 * F23,
                                F23 * F13 * R12);
        break;
      case 1:
        out[1] = relation_check(check_names::mixed_FFR, "mixed relation F12 F13 R23 = R23 F13 F12", F12 * F13 * R23,
                                R23 * F13 * F12);
        break;
      case 2:
        out[2] = relation_check(check_names::ybe_R, "Yang-Baxter R", R12 * R13 * R23, R23 * R13 * R12);
        break;
      default:
        out[3] = relation_check(check_names::ybe_F, "Yang-Baxter F", F12 * F13 * F23, F23 * F13 * F12);
        break;
    }
  });
  return out;
}

CheckRecord check_consistency_identity(const TensorOperator& rhat, const TensorOperator& fhat) {
  const TensorOperator p = flip(rhat.n());
  const TensorOperator r = p * rhat;
  const TensorOperator f = p * fhat;
  const TensorOperator f_inv = invert(f);
  const auto R12 = embed(r, {1, 2}, 3);
  const auto R13 = embed(r, {1, 3}, 3);
  const auto R23 = embed(r, {2, 3}, 3);
  const auto F31 = embed(f, {3, 1}, 3);
  const auto F32 = embed(f, {3, 2}, 3);
  const auto F21 = embed(f, {2, 1}, 3);
  const auto F12 = embed(f, {1, 2}, 3);
  const auto F21_inv = embed(f_inv, {2, 1}, 3);
  const auto F12_inv = embed(f_inv, {1, 2}, 3);
  const auto lhs = R12 * (R13 * F31) * F21 * (R23 * F32) * F21_inv;
  const auto rhs = (R23 * F32) * F12 * (R13 * F31) * F12_inv * R12;
  return relation_check(check_names::consistency, "consistency identity with reversed legs", lhs, rhs);
}

CompatiblePair make_pair(TensorOperator rhat, TensorOperator fhat, const QField& field) {
  if (rhat.legs() != 2 || fhat.legs() != 2 || rhat.n() != fhat.n()) {
    throw Error(ErrorKind::DimensionMismatch, "R̂ and F̂ must be 2-leg operators on the same V");
  }
  CompatiblePair pair;
  pair.n = rhat.n();
  pair.field = field;
  pair.Rhat_inv = invert(rhat);
  pair.Fhat_inv = invert(fhat);
  pair.Rhat = std::move(rhat);
  pair.Fhat = std::move(fhat);

  std::vector<CheckRecord> checks(3);
  parallel_for(3, [&](std::size_t i) {
    if (i == 0) checks[0] = timed([&] { return check_braid(pair.Rhat, check_names::braid_R); });
    if (i == 1) checks[1] = timed([&] { return check_braid(pair.Fhat, check_names::braid_F); });
    if (i == 2) checks[2] = timed([&] { return check_hecke(pair.Rhat, field, check_names::hecke_R); });
  });
  const auto start = std::chrono::steady_clock::now();
  auto compat = check_compatibility(pair.Rhat, pair.Fhat);
  const double each = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / 4;
  for (auto& c : compat) {
    c.seconds = each;
    checks.push_back(std::move(c));
  }
  checks.push_back(timed([&] { return check_consistency_identity(pair.Rhat, pair.Fhat); }));
  pair.checks = std::move(checks);
  return pair;
}

CompatiblePair make_standard_pair(int n, const TwistSpec& twist, const QField& field) {
  TensorOperator r = standard_hecke_R(n, field);
  TensorOperator f = twist_from(twist, r, field);
  return make_pair(std::move(r), std::move(f), field);
}

}  // namespace qmatrix
