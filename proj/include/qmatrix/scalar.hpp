#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "qmatrix/laurent.hpp"

namespace qmatrix {

/// Element of Q(q), kept reduced.
///
/// Canonical form: the denominator has lowest exponent 0 and constant term 1,
/// and numerator and denominator share no polynomial factor. Structural
/// equality is therefore field equality.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(LaurentPoly num);  // NOLINT(google-explicit-constructor)
  RationalFunction(LaurentPoly num, LaurentPoly den);

  const LaurentPoly& numerator() const noexcept { return num_; }
  const LaurentPoly& denominator() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_laurent() const noexcept { return den_.size() == 1; }
  bool is_constant() const noexcept { return is_laurent() && num_.is_constant(); }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  RationalFunction operator-() const;
  RationalFunction inverse() const;
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) = default;

  /// Total exponent span of numerator plus denominator; a rough size measure.
  int degree_span() const;

 private:
  struct Raw {};
  RationalFunction(Raw, LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {}
  static RationalFunction reduce(LaurentPoly num, LaurentPoly den);

  LaurentPoly num_;
  LaurentPoly den_;
};

/// Matrix-entry scalar: an exact element of Q(q), or its rational value at a
/// fixed admissible q0.
///
/// Exact constants (no q dependence) mix freely with numeric values; mixing a
/// q-dependent exact value with a numeric one raises ModeMismatch.
class Scalar {
 public:
  enum class Mode { Exact, Numeric };

  Scalar() = default;
  Scalar(long c) : value_(RationalFunction(LaurentPoly(c))) {}  // NOLINT(google-explicit-constructor)
  Scalar(int c) : Scalar(static_cast<long>(c)) {}  // NOLINT(google-explicit-constructor)
  Scalar(const mpq_class& c) : value_(RationalFunction(LaurentPoly(c))) {}  // NOLINT(google-explicit-constructor)
  Scalar(RationalFunction f) : value_(std::move(f)) {}  // NOLINT(google-explicit-constructor)
  Scalar(LaurentPoly p) : value_(RationalFunction(std::move(p))) {}  // NOLINT(google-explicit-constructor)

  static Scalar numeric(const mpq_class& v);
  /// The indeterminate q (exact mode).
  static Scalar q();
  /// q^k (exact mode).
  static Scalar q_pow(int k);

  Mode mode() const noexcept { return std::holds_alternative<mpq_class>(value_) ? Mode::Numeric : Mode::Exact; }
  bool is_exact() const noexcept { return mode() == Mode::Exact; }
  bool is_zero() const;
  /// True for exact values with no q dependence, and for every numeric value.
  bool is_constant() const;

  const RationalFunction& exact() const;
  const mpq_class& numeric_value() const;
  /// Rational value of a constant (exact constant or numeric).
  mpq_class constant_value() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  Scalar operator-() const;
  /// Multiplicative inverse; throws DivisionByZero on zero.
  Scalar inverse() const;

  friend bool operator==(const Scalar& a, const Scalar& b);

  int degree_span() const;

  /// Text rendering: sparse "c*q^e" sums, "(N)/(D)" for proper fractions,
  /// plain "a/b" for numeric values.
  std::string to_string() const;

 private:
  std::variant<RationalFunction, mpq_class> value_;
};

/// The q-number k_q = (q^k - q^-k)/(q - q^-1) as a Laurent polynomial.
Scalar q_number(int k);

/// Substitutes q = q0 into an exact scalar. Rejects q0 in {0, 1, -1}
/// (DegenerateQ) and vanishing denominators (EvaluationPole).
Scalar evaluate(const Scalar& s, const mpq_class& q0);

/// Substitution without the degenerate-q guard: used for classical limits
/// (q0 = 1) of reduced fractions whose denominator does not vanish there.
Scalar specialize(const Scalar& s, const mpq_class& q0);

/// Parses the text rendering produced by Scalar::to_string (exact grammar).
Scalar parse_scalar(std::string_view text);

/// Parses "a" or "a/b".
mpq_class parse_rational(std::string_view text);

/// Where the deformation parameter lives for a computation: symbolic q, or a
/// fixed admissible rational q0.
class QField {
 public:
  QField() = default;
  static QField exact() { return {}; }
  static QField numeric(const mpq_class& q0);

  bool is_exact() const noexcept { return !q0_.has_value(); }
  const std::optional<mpq_class>& q0() const noexcept { return q0_; }

  Scalar q() const;
  Scalar q_pow(int k) const;
  Scalar q_number(int k) const;
  /// Maps an exact scalar into this field (identity in exact mode).
  Scalar lift(const Scalar& s) const;

  std::string to_string() const;

 private:
  std::optional<mpq_class> q0_;
};

}  // namespace qmatrix
