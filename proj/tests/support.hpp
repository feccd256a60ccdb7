#pragma once

#include <random>
#include <vector>

#include "qmatrix/tensor.hpp"

namespace testing {

using qmatrix::LaurentPoly;
using qmatrix::Scalar;
using qmatrix::TensorOperator;

inline Scalar random_laurent(std::mt19937_64& rng, int terms = 3, int spread = 3) {
  std::uniform_int_distribution<int> coeff(-4, 4);
  std::uniform_int_distribution<int> expo(-spread, spread);
  std::vector<LaurentPoly::Term> t;
  for (int i = 0; i < terms; ++i) t.emplace_back(expo(rng), mpq_class(coeff(rng)));
  return Scalar(LaurentPoly::from_terms(std::move(t)));
}

inline Scalar random_fraction(std::mt19937_64& rng) {
  Scalar den;
  do {
    den = random_laurent(rng, 2, 2);
  } while (den.is_zero());
  return random_laurent(rng) / den;
}

inline TensorOperator random_operator(std::mt19937_64& rng, int n, int legs, double density = 0.5) {
  TensorOperator op(n, legs);
  std::bernoulli_distribution keep(density);
  for (std::size_t r = 0; r < op.dim(); ++r) {
    for (std::size_t c = 0; c < op.dim(); ++c) {
      if (keep(rng)) op.set(r, c, random_laurent(rng, 2, 2));
    }
  }
  return op;
}

// Small integer entries; invertible with overwhelming probability after a
// diagonal shift.
inline TensorOperator random_integer_operator(std::mt19937_64& rng, int n, int legs) {
  TensorOperator op(n, legs);
  std::uniform_int_distribution<int> v(-3, 3);
  for (std::size_t r = 0; r < op.dim(); ++r) {
    for (std::size_t c = 0; c < op.dim(); ++c) op.set(r, c, Scalar(v(rng) + (r == c ? 7 : 0)));
  }
  return op;
}

// Dense index-level oracle: the entry of embed(op, pos, total) at (row, col)
// written directly from the definition.
inline Scalar embed_entry(const TensorOperator& op, const std::vector<int>& pos, int total,
                          const std::vector<int>& row, const std::vector<int>& col) {
  std::vector<char> used(static_cast<std::size_t>(total), 0);
  std::vector<int> r;
  std::vector<int> c;
  for (int p : pos) {
    used[static_cast<std::size_t>(p - 1)] = 1;
    r.push_back(row[static_cast<std::size_t>(p - 1)]);
    c.push_back(col[static_cast<std::size_t>(p - 1)]);
  }
  for (int l = 0; l < total; ++l) {
    if (!used[static_cast<std::size_t>(l)] && row[static_cast<std::size_t>(l)] != col[static_cast<std::size_t>(l)]) {
      return Scalar(0);
    }
  }
  return op.at(r, c);
}

}  // namespace testing
