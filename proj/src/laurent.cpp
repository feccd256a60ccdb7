#include "qmatrix/laurent.hpp"

#include <algorithm>
#include <sstream>

#include "qmatrix/error.hpp"

namespace qmatrix {

LaurentPoly::LaurentPoly(long c) : LaurentPoly(mpq_class(c)) {}

LaurentPoly::LaurentPoly(const mpq_class& c) {
  if (c != 0) terms_.emplace_back(0, c);
}

LaurentPoly LaurentPoly::monomial(const mpq_class& coeff, int exponent) {
  LaurentPoly p;
  if (coeff != 0) p.terms_.emplace_back(exponent, coeff);
  return p;
}

LaurentPoly LaurentPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  LaurentPoly p;
  for (auto& [e, c] : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == e) {
      p.terms_.back().second += c;
    } else {
      p.terms_.emplace_back(e, std::move(c));
    }
  }
  p.drop_zeros();
  return p;
}

bool LaurentPoly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().first == 0);
}

mpq_class LaurentPoly::coefficient(int e) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                             [](const Term& t, int x) { return t.first < x; });
  if (it != terms_.end() && it->first == e) return it->second;
  return 0;
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly p = *this;
  for (auto& t : p.terms_) t.first += k;
  return p;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly p = *this;
  for (auto& t : p.terms_) t.second = -t.second;
  return p;
}

void LaurentPoly::drop_zeros() {
  std::erase_if(terms_, [](const Term& t) { return t.second == 0; });
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) return *this = o;
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->first < a->first) {
      out.push_back(*b++);
    } else {
      mpq_class s = a->second + b->second;
      if (s != 0) out.emplace_back(a->first, std::move(s));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly& LaurentPoly::operator*=(const mpq_class& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.second *= c;
  }
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.terms_.size() == 1) {
    LaurentPoly p = b;
    for (auto& t : p.terms_) {
      t.first += a.terms_[0].first;
      t.second *= a.terms_[0].second;
    }
    return p;
  }
  if (b.terms_.size() == 1) return b * a;
  const int low = a.low_exponent() + b.low_exponent();
  const int span = a.high_exponent() + b.high_exponent() - low + 1;
  std::vector<mpq_class> acc(static_cast<std::size_t>(span));
  std::vector<char> touched(static_cast<std::size_t>(span), 0);
  mpq_class tmp;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      const auto k = static_cast<std::size_t>(ea + eb - low);
      mpq_mul(tmp.get_mpq_t(), ca.get_mpq_t(), cb.get_mpq_t());
      acc[k] += tmp;
      touched[k] = 1;
    }
  }
  LaurentPoly p;
  for (std::size_t k = 0; k < acc.size(); ++k) {
    if (touched[k] && acc[k] != 0) p.terms_.emplace_back(static_cast<int>(k) + low, std::move(acc[k]));
  }
  return p;
}

mpq_class LaurentPoly::evaluate(const mpq_class& q0) const {
  if (terms_.empty()) return 0;
  // Horner in q0 from the top exponent down, then fix the low shift.
  mpq_class acc = 0;
  int prev = high_exponent();
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    for (int e = prev; e > it->first; --e) acc *= q0;
    acc += it->second;
    prev = it->first;
  }
  const int low = low_exponent();
  mpq_class scale = 1;
  for (int e = 0; e < (low < 0 ? -low : low); ++e) scale *= q0;
  if (low >= 0) return acc * scale;
  return acc / scale;
}

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    mpq_class c = it->second;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    os << c.get_str();
    if (it->first != 0) os << "*q^" << it->first;
    first = false;
  }
  return os.str();
}

namespace poly {
namespace {

// Ordinary polynomial (low exponent >= 0) to a primitive integer polynomial.
IntPoly to_primitive(const LaurentPoly& p) {
  if (p.is_zero()) return {};
  if (p.low_exponent() < 0) throw Error(ErrorKind::DimensionMismatch, "negative exponent in polynomial gcd");
  mpz_class den_lcm = 1;
  for (const auto& [e, c] : p.terms()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  IntPoly out(static_cast<std::size_t>(p.high_exponent()) + 1);
  for (const auto& [e, c] : p.terms()) {
    mpz_class v = c.get_num() * (den_lcm / c.get_den());
    out[static_cast<std::size_t>(e)] = v;
  }
  mpz_class content = 0;
  for (const auto& v : out) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
  for (auto& v : out) v /= content;
  return out;
}

void trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

void make_primitive(IntPoly& p) {
  mpz_class content = 0;
  for (const auto& v : p) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
  if (content == 0) return;
  if (p.back() < 0) content = -content;
  for (auto& v : p) v /= content;
}

// Pseudo-remainder of a by b (deg a >= deg b).
IntPoly pseudo_remainder(IntPoly a, const IntPoly& b) {
  const mpz_class& lead = b.back();
  const std::size_t db = b.size() - 1;
  while (!a.empty() && a.size() - 1 >= db) {
    const mpz_class factor = a.back();
    const std::size_t shift = a.size() - 1 - db;
    for (auto& v : a) v *= lead;
    for (std::size_t i = 0; i <= db; ++i) a[i + shift] -= factor * b[i];
    trim(a);
  }
  return a;
}

}  // namespace

LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero()) return b.is_zero() ? LaurentPoly(1) : b;
  if (b.is_zero()) return a;
  IntPoly x = to_primitive(a);
  IntPoly y = to_primitive(b);
  if (x.size() < y.size()) std::swap(x, y);
  while (!y.empty()) {
    if (y.size() == 1) return LaurentPoly(1);
    IntPoly r = pseudo_remainder(x, y);
    x = std::move(y);
    y = std::move(r);
    if (!y.empty()) make_primitive(y);
  }
  make_primitive(x);
  std::vector<LaurentPoly::Term> terms;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0) terms.emplace_back(static_cast<int>(i), mpq_class(x[i]));
  }
  return LaurentPoly::from_terms(std::move(terms));
}

LaurentPoly divide_exact(const LaurentPoly& a, const LaurentPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  if (a.is_zero()) return {};
  if (b.size() == 1) {
    return a.shifted(-b.low_exponent()) * mpq_class(1 / b.low_coefficient());
  }
  const int shift = b.low_exponent();
  const int lo = a.low_exponent() - shift;
  // Dense long division on coefficient vectors relative to the low exponents.
  const int da = a.high_exponent() - a.low_exponent();
  const int db = b.high_exponent() - b.low_exponent();
  if (da < db) throw Error(ErrorKind::DivisionByZero, "inexact polynomial division");
  std::vector<mpq_class> rem(static_cast<std::size_t>(da) + 1);
  for (const auto& [e, c] : a.terms()) rem[static_cast<std::size_t>(e - a.low_exponent())] = c;
  std::vector<mpq_class> den(static_cast<std::size_t>(db) + 1);
  for (const auto& [e, c] : b.terms()) den[static_cast<std::size_t>(e - b.low_exponent())] = c;
  std::vector<LaurentPoly::Term> quot;
  const mpq_class lead_inv = 1 / den.back();
  for (int k = da - db; k >= 0; --k) {
    const mpq_class f = rem[static_cast<std::size_t>(k + db)] * lead_inv;
    if (f == 0) continue;
    quot.emplace_back(k + lo, f);
    for (int i = 0; i <= db; ++i) rem[static_cast<std::size_t>(k + i)] -= f * den[static_cast<std::size_t>(i)];
  }
  for (const auto& v : rem) {
    if (v != 0) throw Error(ErrorKind::DivisionByZero, "inexact polynomial division");
  }
  return LaurentPoly::from_terms(std::move(quot));
}

}  // namespace poly

}  // namespace qmatrix
