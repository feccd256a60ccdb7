#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace qmatrix {

/// Laurent polynomial in q with rational coefficients.
///
/// Terms are kept sorted by ascending exponent and no stored coefficient is
/// zero, so two polynomials are equal iff their term lists are equal.
class LaurentPoly {
 public:
  using Term = std::pair<int, mpq_class>;

  LaurentPoly() = default;
  LaurentPoly(long c);  // NOLINT(google-explicit-constructor)
  LaurentPoly(const mpq_class& c);  // NOLINT(google-explicit-constructor)

  static LaurentPoly monomial(const mpq_class& coeff, int exponent);
  /// Builds from arbitrary (exponent, coefficient) pairs; duplicates are summed.
  static LaurentPoly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  std::size_t size() const noexcept { return terms_.size(); }

  // Only meaningful for nonzero polynomials.
  int low_exponent() const { return terms_.front().first; }
  int high_exponent() const { return terms_.back().first; }
  const mpq_class& low_coefficient() const { return terms_.front().second; }
  const mpq_class& high_coefficient() const { return terms_.back().second; }
  /// Coefficient of q^e (zero when absent).
  mpq_class coefficient(int e) const;

  /// Multiplies by q^k.
  LaurentPoly shifted(int k) const;
  LaurentPoly operator-() const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const mpq_class& c);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend LaurentPoly operator*(LaurentPoly a, const mpq_class& c) { return a *= c; }

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

  mpq_class evaluate(const mpq_class& q0) const;

  /// "c*q^e" terms by descending exponent; "0" for the zero polynomial.
  std::string to_string() const;

 private:
  void drop_zeros();
  std::vector<Term> terms_;
};

namespace poly {

/// Dense polynomial a_0 + a_1 q + ... with integer coefficients (index = degree).
using IntPoly = std::vector<mpz_class>;

/// Greatest common divisor of two ordinary polynomials (lowest exponent >= 0)
/// over Q, returned primitive with positive leading coefficient.
LaurentPoly gcd(const LaurentPoly& a, const LaurentPoly& b);

/// Exact division of ordinary polynomials; throws if the remainder is nonzero.
LaurentPoly divide_exact(const LaurentPoly& a, const LaurentPoly& b);

}  // namespace poly

}  // namespace qmatrix
