#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qmatrix/error.hpp"
#include "qmatrix/scalar.hpp"

namespace qmatrix {

/// Linear operator on V^{⊗k}, dim V = n, with Scalar entries.
///
/// Basis vectors of V^{⊗k} are flattened row-major with leg 1 the most
/// significant digit: e_{i1}⊗...⊗e_{ik} has index ((i1*n + i2)*n + ...) + ik,
/// indices 0-based internally. The operator e_ij⊗e_kl therefore has its single
/// nonzero entry at row (i,k), column (j,l).
///
/// Superscript notation X^{ab} on a larger tensor power means
/// embed(X, {a, b}, k): X acts with its first leg on leg a and its second on
/// leg b. X^{21} = embed(X, {2, 1}, 2) = P X P. Worked n = 2 example: for the
/// flip P, embed(P, {1, 2}, 3) sends e_a⊗e_b⊗e_c to e_b⊗e_a⊗e_c.
///
/// Storage is sparse by row; absent entries are zero. Legs are 1-based in the
/// public API.
class TensorOperator {
 public:
  using Entry = std::pair<std::uint32_t, Scalar>;
  using Row = std::vector<Entry>;

  TensorOperator() = default;
  /// Zero operator.
  TensorOperator(int n, int legs);

  static TensorOperator identity(int n, int legs);
  /// 0-leg operator holding a scalar.
  static TensorOperator scalar(int n, Scalar value);
  /// Single-leg operator from a dense n×n row-major array.
  static TensorOperator from_matrix(int n, const std::vector<std::vector<Scalar>>& rows);

  int n() const noexcept { return n_; }
  int legs() const noexcept { return legs_; }
  std::size_t dim() const noexcept { return rows_.size(); }

  Scalar at(std::size_t row, std::size_t col) const;
  Scalar at(std::span<const int> row, std::span<const int> col) const;
  void set(std::size_t row, std::size_t col, Scalar value);
  void add_to(std::size_t row, std::size_t col, const Scalar& value);

  const Row& row(std::size_t r) const { return rows_[r]; }
  std::size_t nonzeros() const;
  bool is_zero() const;
  /// The value of a 0-leg operator.
  Scalar scalar_value() const;

  std::size_t flatten(std::span<const int> index) const;
  std::vector<int> unflatten(std::size_t flat) const;

  TensorOperator& operator+=(const TensorOperator& o);
  TensorOperator& operator-=(const TensorOperator& o);
  TensorOperator& operator*=(const Scalar& s);
  friend TensorOperator operator+(TensorOperator a, const TensorOperator& b) { return a += b; }
  friend TensorOperator operator-(TensorOperator a, const TensorOperator& b) { return a -= b; }
  friend TensorOperator operator*(TensorOperator a, const Scalar& s) { return a *= s; }
  friend TensorOperator operator*(const Scalar& s, TensorOperator a) { return a *= s; }
  /// Composition (a·b)v = a(b v).
  friend TensorOperator operator*(const TensorOperator& a, const TensorOperator& b);

  friend bool operator==(const TensorOperator& a, const TensorOperator& b);

  /// Largest Scalar::degree_span over the entries.
  int max_degree_span() const;

 private:
  int n_ = 0;
  int legs_ = 0;
  std::vector<Row> rows_;
};

TensorOperator compose(const TensorOperator& a, const TensorOperator& b);
/// Kronecker product: a on the leading legs, b on the trailing ones.
TensorOperator tensor(const TensorOperator& a, const TensorOperator& b);

/// Places an m-leg operator on the given (1-based, ordered, distinct) legs of
/// V^{⊗total}, identity elsewhere.
TensorOperator embed(const TensorOperator& op, std::span<const int> positions, int total);
TensorOperator embed(const TensorOperator& op, std::initializer_list<int> positions, int total);

/// Contracts the listed legs. With a weight W (one-leg operator) each traced
/// leg l contributes Tr_l(W_l ·), i.e. the quantum-trace convention Tr(W Z).
/// The remaining legs keep their order; tracing every leg yields a 0-leg
/// operator.
TensorOperator partial_trace(const TensorOperator& op, std::span<const int> legs,
                             const TensorOperator* weight = nullptr);
TensorOperator partial_trace(const TensorOperator& op, std::initializer_list<int> legs,
                             const TensorOperator* weight = nullptr);

/// Swaps row and column index on one leg.
TensorOperator partial_transpose(const TensorOperator& op, int leg);

/// Two-sided inverse by fraction-free elimination. Throws a SingularOperator
/// error carrying a null vector.
TensorOperator invert(const TensorOperator& op);

/// Exact rank over the Scalar field.
std::size_t rank(const TensorOperator& op);

/// Entrywise evaluate() at q0.
TensorOperator evaluate(const TensorOperator& op, const mpq_class& q0);
/// Entrywise specialize() (allows the classical point q0 = 1).
TensorOperator specialize(const TensorOperator& op, const mpq_class& q0);
/// Entrywise QField::lift.
TensorOperator lift(const TensorOperator& op, const QField& field);

/// Flip operator P on V⊗V.
TensorOperator flip(int n);

/// First nonzero entry rendered as "[row multi-index; col multi-index] = value"
/// (1-based), or an empty string.
std::string first_nonzero(const TensorOperator& op);

/// Exception raised by invert(): kind SingularOperator with a witness v ≠ 0,
/// op·v = 0, stored as a column of Scalars. Callers that fail for the same
/// reason (a missing skew inverse) rethrow it under their own kind.
class SingularOperatorError : public Error {
 public:
  SingularOperatorError(const std::string& what, std::vector<Scalar> witness,
                        ErrorKind kind = ErrorKind::SingularOperator)
      : Error(kind, what), witness_(std::move(witness)) {}
  const std::vector<Scalar>& witness() const noexcept { return witness_; }

 private:
  std::vector<Scalar> witness_;
};

namespace linalg {

using Dense = std::vector<std::vector<Scalar>>;

/// Solves A X = B for square A (Bareiss forward elimination, then back
/// substitution over the field). Throws SingularOperatorError with a null
/// vector of A when A is singular.
Dense solve(Dense a, Dense b);

/// A nonzero v with A v = 0, or nullopt when A has full column rank.
std::optional<std::vector<Scalar>> null_vector(Dense a);

std::size_t rank(Dense a);

}  // namespace linalg

}  // namespace qmatrix
