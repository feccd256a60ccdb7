#include "qmatrix/scalar.hpp"

#include <cctype>
#include <sstream>

#include "qmatrix/error.hpp"

namespace qmatrix {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EvaluationPole: return "evaluation pole";
    case ErrorKind::DegenerateQ: return "degenerate q";
    case ErrorKind::DivisionByZero: return "division by zero";
    case ErrorKind::ModeMismatch: return "mode mismatch";
    case ErrorKind::LegOutOfRange: return "leg out of range";
    case ErrorKind::DuplicateLeg: return "duplicate leg";
    case ErrorKind::DimensionMismatch: return "dimension mismatch";
    case ErrorKind::SingularOperator: return "singular operator";
    case ErrorKind::NoSkewInverse: return "skew inverse does not exist";
    case ErrorKind::NonInvertibleD: return "non-invertible D";
    case ErrorKind::VanishingQNumber: return "vanishing q-number";
    case ErrorKind::NoRepresentationConvention: return "no representation convention satisfies defining relations";
    case ErrorKind::SingularGauge: return "singular gauge matrix";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Config: return "configuration error";
  }
  return "error";
}

// ---------------------------------------------------------------------------
// RationalFunction

RationalFunction::RationalFunction(LaurentPoly num) : num_(std::move(num)), den_(1) {}

RationalFunction::RationalFunction(LaurentPoly num, LaurentPoly den) {
  *this = reduce(std::move(num), std::move(den));
}

RationalFunction RationalFunction::reduce(LaurentPoly num, LaurentPoly den) {
  if (den.is_zero()) throw Error(ErrorKind::DivisionByZero, "zero denominator");
  if (num.is_zero()) return {};
  const int shift = num.low_exponent() - den.low_exponent();
  num = num.shifted(-num.low_exponent());
  den = den.shifted(-den.low_exponent());
  if (den.size() > 1 && num.size() > 1) {
    LaurentPoly g = poly::gcd(num, den);
    if (!g.is_constant()) {
      num = poly::divide_exact(num, g);
      den = poly::divide_exact(den, g);
    }
  }
  const mpq_class scale = 1 / den.low_coefficient();
  num *= scale;
  den *= scale;
  return RationalFunction(Raw{}, num.shifted(shift), std::move(den));
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_laurent() && b.is_laurent()) return RationalFunction(a.num_ + b.num_);
  if (a.den_ == b.den_) return RationalFunction::reduce(a.num_ + b.num_, a.den_);
  return RationalFunction::reduce(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_laurent() && b.is_laurent()) return RationalFunction(a.num_ * b.num_);
  return RationalFunction::reduce(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }

RationalFunction RationalFunction::operator-() const { return RationalFunction(Raw{}, -num_, den_); }

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  // Already coprime: only the shift and the constant-term scale change.
  const int shift = -num_.low_exponent();
  LaurentPoly den = num_.shifted(shift);
  LaurentPoly num = den_.shifted(shift);
  const mpq_class scale = 1 / den.low_coefficient();
  num *= scale;
  den *= scale;
  return RationalFunction(Raw{}, std::move(num), std::move(den));
}

int RationalFunction::degree_span() const {
  if (num_.is_zero()) return 0;
  return (num_.high_exponent() - num_.low_exponent()) + (den_.high_exponent() - den_.low_exponent());
}

// ---------------------------------------------------------------------------
// Scalar

Scalar Scalar::numeric(const mpq_class& v) {
  Scalar s;
  s.value_ = v;
  return s;
}

Scalar Scalar::q() { return q_pow(1); }

Scalar Scalar::q_pow(int k) { return Scalar(LaurentPoly::monomial(1, k)); }

bool Scalar::is_zero() const {
  if (const auto* f = std::get_if<RationalFunction>(&value_)) return f->is_zero();
  return std::get<mpq_class>(value_) == 0;
}

bool Scalar::is_constant() const {
  if (const auto* f = std::get_if<RationalFunction>(&value_)) return f->is_constant();
  return true;
}

const RationalFunction& Scalar::exact() const {
  if (const auto* f = std::get_if<RationalFunction>(&value_)) return *f;
  throw Error(ErrorKind::ModeMismatch, "numeric scalar where an exact one was required");
}

const mpq_class& Scalar::numeric_value() const {
  if (const auto* v = std::get_if<mpq_class>(&value_)) return *v;
  throw Error(ErrorKind::ModeMismatch, "exact scalar where a numeric one was required");
}

mpq_class Scalar::constant_value() const {
  if (const auto* v = std::get_if<mpq_class>(&value_)) return *v;
  const auto& f = std::get<RationalFunction>(value_);
  if (!f.is_constant()) throw Error(ErrorKind::ModeMismatch, "q-dependent exact scalar mixed with a numeric one");
  return f.numerator().is_zero() ? mpq_class(0) : f.numerator().low_coefficient();
}

namespace {

template <class ExactOp, class NumOp>
void combine(std::variant<RationalFunction, mpq_class>& lhs, const std::variant<RationalFunction, mpq_class>& rhs,
             ExactOp exact_op, NumOp num_op) {
  auto* le = std::get_if<RationalFunction>(&lhs);
  const auto* re = std::get_if<RationalFunction>(&rhs);
  if (le && re) {
    *le = exact_op(*le, *re);
    return;
  }
  auto as_num = [](const std::variant<RationalFunction, mpq_class>& v) -> mpq_class {
    if (const auto* n = std::get_if<mpq_class>(&v)) return *n;
    const auto& f = std::get<RationalFunction>(v);
    if (!f.is_constant()) throw Error(ErrorKind::ModeMismatch, "q-dependent exact scalar mixed with a numeric one");
    return f.numerator().is_zero() ? mpq_class(0) : f.numerator().low_coefficient();
  };
  mpq_class a = as_num(lhs);
  mpq_class b = as_num(rhs);
  lhs = num_op(a, b);
}

}  // namespace

Scalar& Scalar::operator+=(const Scalar& o) {
  combine(value_, o.value_, [](const RationalFunction& a, const RationalFunction& b) { return a + b; },
          [](const mpq_class& a, const mpq_class& b) { return mpq_class(a + b); });
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  combine(value_, o.value_, [](const RationalFunction& a, const RationalFunction& b) { return a - b; },
          [](const mpq_class& a, const mpq_class& b) { return mpq_class(a - b); });
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  combine(value_, o.value_, [](const RationalFunction& a, const RationalFunction& b) { return a * b; },
          [](const mpq_class& a, const mpq_class& b) { return mpq_class(a * b); });
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::operator-() const {
  if (const auto* f = std::get_if<RationalFunction>(&value_)) return Scalar(-*f);
  return numeric(-std::get<mpq_class>(value_));
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "invert(0)");
  if (const auto* f = std::get_if<RationalFunction>(&value_)) return Scalar(f->inverse());
  return numeric(1 / std::get<mpq_class>(value_));
}

bool operator==(const Scalar& a, const Scalar& b) {
  const auto* ae = std::get_if<RationalFunction>(&a.value_);
  const auto* be = std::get_if<RationalFunction>(&b.value_);
  if (ae && be) return *ae == *be;
  if (!ae && !be) return std::get<mpq_class>(a.value_) == std::get<mpq_class>(b.value_);
  if (!a.is_constant() || !b.is_constant()) return false;
  return a.constant_value() == b.constant_value();
}

int Scalar::degree_span() const {
  if (const auto* f = std::get_if<RationalFunction>(&value_)) return f->degree_span();
  return 0;
}

std::string Scalar::to_string() const {
  if (const auto* v = std::get_if<mpq_class>(&value_)) return v->get_str();
  const auto& f = std::get<RationalFunction>(value_);
  if (f.is_laurent()) return f.numerator().to_string();
  return "(" + f.numerator().to_string() + ")/(" + f.denominator().to_string() + ")";
}

Scalar q_number(int k) {
  if (k == 0) return Scalar(0);
  if (k < 0) return -q_number(-k);
  std::vector<LaurentPoly::Term> terms;
  for (int j = 0; j < k; ++j) terms.emplace_back(k - 1 - 2 * j, mpq_class(1));
  return Scalar(LaurentPoly::from_terms(std::move(terms)));
}

Scalar specialize(const Scalar& s, const mpq_class& q0) {
  if (q0 == 0) throw Error(ErrorKind::DegenerateQ, "q0 = 0");
  const auto& f = s.exact();
  const mpq_class den = f.denominator().evaluate(q0);
  if (den == 0) throw Error(ErrorKind::EvaluationPole, "denominator vanishes at q0 = " + q0.get_str());
  return Scalar::numeric(f.numerator().evaluate(q0) / den);
}

Scalar evaluate(const Scalar& s, const mpq_class& q0) {
  if (q0 == 1 || q0 == -1) {
    // A pole is the more specific diagnosis when both apply.
    if (s.is_exact() && s.exact().denominator().evaluate(q0) == 0) {
      throw Error(ErrorKind::EvaluationPole, "denominator vanishes at q0 = " + q0.get_str());
    }
  }
  if (q0 == 0 || q0 == 1 || q0 == -1) throw Error(ErrorKind::DegenerateQ, "q0 = " + q0.get_str());
  return specialize(s, q0);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Scalar parse_all() {
    skip_ws();
    Scalar result;
    if (peek() == '(') {
      LaurentPoly num = parse_parenthesized();
      skip_ws();
      if (peek() == '/') {
        ++pos_;
        skip_ws();
        LaurentPoly den = parse_parenthesized();
        result = Scalar(RationalFunction(std::move(num), std::move(den)));
      } else {
        result = Scalar(std::move(num));
      }
    } else {
      result = Scalar(parse_poly());
    }
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return result;
  }

  mpq_class parse_rational_only() {
    skip_ws();
    bool neg = false;
    if (peek() == '-' || peek() == '+') neg = text_[pos_++] == '-';
    mpq_class v = parse_unsigned_rational();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return neg ? mpq_class(-v) : v;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::Parse, why + " at offset " + std::to_string(pos_) + " in \"" + std::string(text_) + "\"");
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  LaurentPoly parse_parenthesized() {
    if (peek() != '(') fail("expected '('");
    ++pos_;
    LaurentPoly p = parse_poly();
    skip_ws();
    if (peek() != ')') fail("expected ')'");
    ++pos_;
    return p;
  }

  mpz_class parse_digits() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  mpq_class parse_unsigned_rational() {
    mpz_class num = parse_digits();
    mpz_class den = 1;
    if (peek() == '/' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      ++pos_;
      den = parse_digits();
      if (den == 0) fail("zero denominator");
    }
    mpq_class v(num, den);
    v.canonicalize();
    return v;
  }

  int parse_exponent() {
    skip_ws();
    if (peek() != '^') return 1;
    ++pos_;
    skip_ws();
    bool neg = false;
    if (peek() == '-' || peek() == '+') neg = text_[pos_++] == '-';
    mpz_class e = parse_digits();
    if (!e.fits_sint_p()) fail("exponent out of range");
    return neg ? -static_cast<int>(e.get_si()) : static_cast<int>(e.get_si());
  }

  LaurentPoly parse_term() {
    skip_ws();
    mpq_class coeff = 1;
    bool have_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = parse_unsigned_rational();
      have_coeff = true;
      skip_ws();
      if (peek() != '*') return LaurentPoly(coeff);
      ++pos_;
      skip_ws();
    }
    if (peek() != 'q') fail(have_coeff ? "expected 'q' after '*'" : "expected a term");
    ++pos_;
    return LaurentPoly::monomial(coeff, parse_exponent());
  }

  LaurentPoly parse_poly() {
    skip_ws();
    bool neg = false;
    if (peek() == '-' || peek() == '+') {
      neg = text_[pos_++] == '-';
    }
    LaurentPoly acc = parse_term();
    if (neg) acc = -acc;
    for (;;) {
      skip_ws();
      const char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      LaurentPoly t = parse_term();
      if (c == '-') {
        acc -= t;
      } else {
        acc += t;
      }
    }
    return acc;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar parse_scalar(std::string_view text) { return Parser(text).parse_all(); }

mpq_class parse_rational(std::string_view text) { return Parser(text).parse_rational_only(); }

// ---------------------------------------------------------------------------
// QField

QField QField::numeric(const mpq_class& q0) {
  if (q0 == 0 || q0 == 1 || q0 == -1) throw Error(ErrorKind::DegenerateQ, "q0 = " + q0.get_str());
  QField f;
  f.q0_ = q0;
  return f;
}

Scalar QField::q() const { return q_pow(1); }

Scalar QField::q_pow(int k) const {
  if (!q0_) return Scalar::q_pow(k);
  mpq_class v = 1;
  for (int i = 0; i < (k < 0 ? -k : k); ++i) v *= *q0_;
  return Scalar::numeric(k < 0 ? mpq_class(1 / v) : v);
}

Scalar QField::q_number(int k) const { return lift(qmatrix::q_number(k)); }

Scalar QField::lift(const Scalar& s) const {
  if (!q0_ || !s.is_exact()) return s;
  return evaluate(s, *q0_);
}

std::string QField::to_string() const { return q0_ ? "q=" + q0_->get_str() : std::string("exact"); }

}  // namespace qmatrix
