#include "qmatrix/tensor.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "qmatrix/parallel.hpp"

namespace qmatrix {

namespace {

std::size_t ipow(int base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
  return r;
}

void sort_row(TensorOperator::Row& row) {
  std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
}

// Accumulates entries in arbitrary order, then emits a canonical operator.
class Builder {
 public:
  Builder(int n, int legs) : n_(n), legs_(legs), rows_(ipow(n, legs)) {}

  void add(std::size_t r, std::size_t c, const Scalar& v) {
    if (v.is_zero()) return;
    auto [it, inserted] = rows_[r].try_emplace(static_cast<std::uint32_t>(c), v);
    if (!inserted) it->second += v;
  }

  TensorOperator finish() && {
    TensorOperator out(n_, legs_);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      for (auto& [c, v] : rows_[r]) {
        if (!v.is_zero()) out.set(r, c, std::move(v));
      }
    }
    return out;
  }

 private:
  int n_;
  int legs_;
  std::vector<std::map<std::uint32_t, Scalar>> rows_;
};

std::vector<std::size_t> place_values(int n, int legs) {
  std::vector<std::size_t> w(static_cast<std::size_t>(legs));
  std::size_t v = 1;
  for (int l = legs - 1; l >= 0; --l) {
    w[static_cast<std::size_t>(l)] = v;
    v *= static_cast<std::size_t>(n);
  }
  return w;
}

void require_same_shape(const TensorOperator& a, const TensorOperator& b, const char* what) {
  if (a.n() != b.n() || a.legs() != b.legs()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": (n=" + std::to_string(a.n()) + ", legs=" + std::to_string(a.legs()) +
                    ") vs (n=" + std::to_string(b.n()) + ", legs=" + std::to_string(b.legs()) + ")");
  }
}

}  // namespace

TensorOperator::TensorOperator(int n, int legs) : n_(n), legs_(legs) {
  if (n < 1 || legs < 0) throw Error(ErrorKind::DimensionMismatch, "operator needs n >= 1 and legs >= 0");
  rows_.resize(ipow(n, legs));
}

TensorOperator TensorOperator::identity(int n, int legs) {
  TensorOperator op(n, legs);
  for (std::size_t i = 0; i < op.dim(); ++i) op.rows_[i].emplace_back(static_cast<std::uint32_t>(i), Scalar(1));
  return op;
}

TensorOperator TensorOperator::scalar(int n, Scalar value) {
  TensorOperator op(n, 0);
  op.set(0, 0, std::move(value));
  return op;
}

TensorOperator TensorOperator::from_matrix(int n, const std::vector<std::vector<Scalar>>& rows) {
  TensorOperator op(n, 1);
  if (rows.size() != static_cast<std::size_t>(n)) throw Error(ErrorKind::DimensionMismatch, "matrix row count");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != static_cast<std::size_t>(n)) throw Error(ErrorKind::DimensionMismatch, "matrix row length");
    for (std::size_t j = 0; j < rows[i].size(); ++j) op.set(i, j, rows[i][j]);
  }
  return op;
}

Scalar TensorOperator::at(std::size_t r, std::size_t c) const {
  const Row& row = rows_.at(r);
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, std::size_t x) { return e.first < x; });
  if (it != row.end() && it->first == c) return it->second;
  return Scalar(0);
}

Scalar TensorOperator::at(std::span<const int> r, std::span<const int> c) const { return at(flatten(r), flatten(c)); }

void TensorOperator::set(std::size_t r, std::size_t c, Scalar value) {
  if (r >= dim() || c >= dim()) throw Error(ErrorKind::DimensionMismatch, "entry index out of range");
  Row& row = rows_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, std::size_t x) { return e.first < x; });
  const bool present = it != row.end() && it->first == c;
  if (value.is_zero()) {
    if (present) row.erase(it);
  } else if (present) {
    it->second = std::move(value);
  } else {
    row.insert(it, Entry{static_cast<std::uint32_t>(c), std::move(value)});
  }
}

void TensorOperator::add_to(std::size_t r, std::size_t c, const Scalar& value) {
  if (value.is_zero()) return;
  set(r, c, at(r, c) + value);
}

std::size_t TensorOperator::nonzeros() const {
  std::size_t count = 0;
  for (const auto& row : rows_) count += row.size();
  return count;
}

bool TensorOperator::is_zero() const {
  return std::all_of(rows_.begin(), rows_.end(), [](const Row& r) { return r.empty(); });
}

Scalar TensorOperator::scalar_value() const {
  if (legs_ != 0) throw Error(ErrorKind::DimensionMismatch, "scalar_value on an operator with legs");
  return at(0, 0);
}

std::size_t TensorOperator::flatten(std::span<const int> index) const {
  if (index.size() != static_cast<std::size_t>(legs_)) throw Error(ErrorKind::DimensionMismatch, "multi-index length");
  std::size_t flat = 0;
  for (int i : index) {
    if (i < 0 || i >= n_) throw Error(ErrorKind::DimensionMismatch, "multi-index out of bounds");
    flat = flat * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i);
  }
  return flat;
}

std::vector<int> TensorOperator::unflatten(std::size_t flat) const {
  std::vector<int> idx(static_cast<std::size_t>(legs_));
  for (int l = legs_ - 1; l >= 0; --l) {
    idx[static_cast<std::size_t>(l)] = static_cast<int>(flat % static_cast<std::size_t>(n_));
    flat /= static_cast<std::size_t>(n_);
  }
  return idx;
}

namespace {

TensorOperator::Row merge_rows(const TensorOperator::Row& a, const TensorOperator::Row& b, bool subtract) {
  TensorOperator::Row out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      out.push_back(*ia++);
    } else if (ia == a.end() || ib->first < ia->first) {
      out.emplace_back(ib->first, subtract ? -ib->second : ib->second);
      ++ib;
    } else {
      Scalar s = subtract ? ia->second - ib->second : ia->second + ib->second;
      if (!s.is_zero()) out.emplace_back(ia->first, std::move(s));
      ++ia;
      ++ib;
    }
  }
  return out;
}

}  // namespace

TensorOperator& TensorOperator::operator+=(const TensorOperator& o) {
  require_same_shape(*this, o, "add");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (!o.rows_[r].empty()) rows_[r] = merge_rows(rows_[r], o.rows_[r], false);
  }
  return *this;
}

TensorOperator& TensorOperator::operator-=(const TensorOperator& o) {
  require_same_shape(*this, o, "subtract");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (!o.rows_[r].empty()) rows_[r] = merge_rows(rows_[r], o.rows_[r], true);
  }
  return *this;
}

TensorOperator& TensorOperator::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    for (auto& row : rows_) row.clear();
    return *this;
  }
  for (auto& row : rows_) {
    for (auto& e : row) e.second *= s;
  }
  return *this;
}

TensorOperator operator*(const TensorOperator& a, const TensorOperator& b) {
  require_same_shape(a, b, "compose");
  TensorOperator out(a.n(), a.legs());
  const std::size_t dim = a.dim();
  // Rows are independent; each task owns one output row.
  parallel_for(dim, [&](std::size_t r) {
    const auto& arow = a.rows_[r];
    if (arow.empty()) return;
    std::map<std::uint32_t, Scalar> acc;
    for (const auto& [k, av] : arow) {
      for (const auto& [j, bv] : b.rows_[k]) {
        auto [it, inserted] = acc.try_emplace(j);
        it->second += av * bv;
      }
    }
    TensorOperator::Row row;
    row.reserve(acc.size());
    for (auto& [j, v] : acc) {
      if (!v.is_zero()) row.emplace_back(j, std::move(v));
    }
    out.rows_[r] = std::move(row);
  });
  return out;
}

bool operator==(const TensorOperator& a, const TensorOperator& b) {
  if (a.n_ != b.n_ || a.legs_ != b.legs_) return false;
  return a.rows_ == b.rows_;
}

int TensorOperator::max_degree_span() const {
  int m = 0;
  for (const auto& row : rows_) {
    for (const auto& e : row) m = std::max(m, e.second.degree_span());
  }
  return m;
}

TensorOperator compose(const TensorOperator& a, const TensorOperator& b) { return a * b; }

TensorOperator tensor(const TensorOperator& a, const TensorOperator& b) {
  if (a.n() != b.n()) throw Error(ErrorKind::DimensionMismatch, "tensor: different n");
  TensorOperator out(a.n(), a.legs() + b.legs());
  const std::size_t db = b.dim();
  for (std::size_t ra = 0; ra < a.dim(); ++ra) {
    for (std::size_t rb = 0; rb < db; ++rb) {
      for (const auto& [ca, va] : a.row(ra)) {
        for (const auto& [cb, vb] : b.row(rb)) out.set(ra * db + rb, ca * db + cb, va * vb);
      }
    }
  }
  return out;
}

TensorOperator embed(const TensorOperator& op, std::span<const int> positions, int total) {
  const int m = op.legs();
  if (static_cast<int>(positions.size()) != m) {
    throw Error(ErrorKind::DimensionMismatch, "embed: " + std::to_string(positions.size()) + " positions for a " +
                                                  std::to_string(m) + "-leg operator");
  }
  std::vector<char> used(static_cast<std::size_t>(total) + 1, 0);
  for (int p : positions) {
    if (p < 1 || p > total) throw Error(ErrorKind::LegOutOfRange, "leg " + std::to_string(p) + " of " + std::to_string(total));
    if (used[static_cast<std::size_t>(p)]) throw Error(ErrorKind::DuplicateLeg, "leg " + std::to_string(p));
    used[static_cast<std::size_t>(p)] = 1;
  }
  const int n = op.n();
  const auto w = place_values(n, total);
  std::vector<int> others;
  for (int l = 1; l <= total; ++l) {
    if (!used[static_cast<std::size_t>(l)]) others.push_back(l);
  }
  // Offsets contributed by every assignment of the untouched legs.
  std::vector<std::size_t> offsets{0};
  for (int l : others) {
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * static_cast<std::size_t>(n));
    for (std::size_t off : offsets) {
      for (int v = 0; v < n; ++v) next.push_back(off + static_cast<std::size_t>(v) * w[static_cast<std::size_t>(l - 1)]);
    }
    offsets = std::move(next);
  }
  auto place = [&](std::size_t local) {
    const auto digits = op.unflatten(local);
    std::size_t flat = 0;
    for (int d = 0; d < m; ++d) {
      flat += static_cast<std::size_t>(digits[static_cast<std::size_t>(d)]) *
              w[static_cast<std::size_t>(positions[static_cast<std::size_t>(d)] - 1)];
    }
    return flat;
  };
  TensorOperator out(n, total);
  std::vector<TensorOperator::Row> rows(out.dim());
  for (std::size_t r = 0; r < op.dim(); ++r) {
    if (op.row(r).empty()) continue;
    const std::size_t rbase = place(r);
    for (const auto& [c, v] : op.row(r)) {
      const std::size_t cbase = place(c);
      for (std::size_t off : offsets) rows[rbase + off].emplace_back(static_cast<std::uint32_t>(cbase + off), v);
    }
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    sort_row(rows[r]);
    for (auto& [c, v] : rows[r]) out.set(r, c, std::move(v));
  }
  return out;
}

TensorOperator embed(const TensorOperator& op, std::initializer_list<int> positions, int total) {
  return embed(op, std::span<const int>(positions.begin(), positions.size()), total);
}

TensorOperator partial_trace(const TensorOperator& op, std::span<const int> legs, const TensorOperator* weight) {
  const int k = op.legs();
  std::vector<char> traced(static_cast<std::size_t>(k), 0);
  for (int l : legs) {
    if (l < 1 || l > k) throw Error(ErrorKind::LegOutOfRange, "trace leg " + std::to_string(l) + " of " + std::to_string(k));
    if (traced[static_cast<std::size_t>(l - 1)]) throw Error(ErrorKind::DuplicateLeg, "trace leg " + std::to_string(l));
    traced[static_cast<std::size_t>(l - 1)] = 1;
  }
  if (legs.empty()) throw Error(ErrorKind::LegOutOfRange, "partial_trace needs at least one leg");
  if (weight && (weight->legs() != 1 || weight->n() != op.n())) {
    throw Error(ErrorKind::DimensionMismatch, "trace weight must be a one-leg operator on V");
  }
  const int n = op.n();
  const int remaining = k - static_cast<int>(legs.size());
  Builder out(n, remaining);
  std::vector<int> rd;
  std::vector<int> cd;
  for (std::size_t r = 0; r < op.dim(); ++r) {
    if (op.row(r).empty()) continue;
    rd = op.unflatten(r);
    for (const auto& [c, v] : op.row(r)) {
      cd = op.unflatten(c);
      Scalar factor(1);
      bool zero = false;
      for (int l = 0; l < k && !zero; ++l) {
        if (!traced[static_cast<std::size_t>(l)]) continue;
        const auto a = static_cast<std::size_t>(cd[static_cast<std::size_t>(l)]);
        const auto j = static_cast<std::size_t>(rd[static_cast<std::size_t>(l)]);
        if (weight) {
          Scalar wv = weight->at(a, j);
          if (wv.is_zero()) {
            zero = true;
          } else {
            factor *= wv;
          }
        } else if (a != j) {
          zero = true;
        }
      }
      if (zero) continue;
      std::size_t nr = 0;
      std::size_t nc = 0;
      for (int l = 0; l < k; ++l) {
        if (traced[static_cast<std::size_t>(l)]) continue;
        nr = nr * static_cast<std::size_t>(n) + static_cast<std::size_t>(rd[static_cast<std::size_t>(l)]);
        nc = nc * static_cast<std::size_t>(n) + static_cast<std::size_t>(cd[static_cast<std::size_t>(l)]);
      }
      out.add(nr, nc, factor * v);
    }
  }
  return std::move(out).finish();
}

TensorOperator partial_trace(const TensorOperator& op, std::initializer_list<int> legs, const TensorOperator* weight) {
  return partial_trace(op, std::span<const int>(legs.begin(), legs.size()), weight);
}

TensorOperator partial_transpose(const TensorOperator& op, int leg) {
  if (leg < 1 || leg > op.legs()) throw Error(ErrorKind::LegOutOfRange, "transpose leg " + std::to_string(leg));
  Builder out(op.n(), op.legs());
  const auto l = static_cast<std::size_t>(leg - 1);
  for (std::size_t r = 0; r < op.dim(); ++r) {
    if (op.row(r).empty()) continue;
    for (const auto& [c, v] : op.row(r)) {
      auto rd = op.unflatten(r);
      auto cd = op.unflatten(c);
      std::swap(rd[l], cd[l]);
      out.add(op.flatten(rd), op.flatten(cd), v);
    }
  }
  return std::move(out).finish();
}

namespace {

linalg::Dense to_dense(const TensorOperator& op) {
  linalg::Dense d(op.dim(), std::vector<Scalar>(op.dim()));
  for (std::size_t r = 0; r < op.dim(); ++r) {
    for (const auto& [c, v] : op.row(r)) d[r][c] = v;
  }
  return d;
}

}  // namespace

TensorOperator invert(const TensorOperator& op) {
  const std::size_t dim = op.dim();
  linalg::Dense rhs(dim, std::vector<Scalar>(dim));
  for (std::size_t i = 0; i < dim; ++i) rhs[i][i] = Scalar(1);
  linalg::Dense x = linalg::solve(to_dense(op), std::move(rhs));
  TensorOperator out(op.n(), op.legs());
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      if (!x[r][c].is_zero()) out.set(r, c, std::move(x[r][c]));
    }
  }
  return out;
}

std::size_t rank(const TensorOperator& op) { return linalg::rank(to_dense(op)); }

namespace {

template <class F>
TensorOperator map_entries(const TensorOperator& op, F f) {
  TensorOperator out(op.n(), op.legs());
  for (std::size_t r = 0; r < op.dim(); ++r) {
    for (const auto& [c, v] : op.row(r)) out.set(r, c, f(v));
  }
  return out;
}

}  // namespace

TensorOperator evaluate(const TensorOperator& op, const mpq_class& q0) {
  return map_entries(op, [&](const Scalar& s) { return s.is_exact() ? evaluate(s, q0) : s; });
}

TensorOperator specialize(const TensorOperator& op, const mpq_class& q0) {
  return map_entries(op, [&](const Scalar& s) { return s.is_exact() ? specialize(s, q0) : s; });
}

TensorOperator lift(const TensorOperator& op, const QField& field) {
  if (field.is_exact()) return op;
  return map_entries(op, [&](const Scalar& s) { return field.lift(s); });
}

TensorOperator flip(int n) {
  TensorOperator p(n, 2);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) p.set(static_cast<std::size_t>(j * n + i), static_cast<std::size_t>(i * n + j), Scalar(1));
  }
  return p;
}

std::string first_nonzero(const TensorOperator& op) {
  for (std::size_t r = 0; r < op.dim(); ++r) {
    if (op.row(r).empty()) continue;
    const auto& [c, v] = op.row(r).front();
    std::ostringstream os;
    auto put = [&](const std::vector<int>& idx) {
      for (std::size_t i = 0; i < idx.size(); ++i) os << (i ? "," : "") << idx[i] + 1;
    };
    os << "[";
    put(op.unflatten(r));
    os << "; ";
    put(op.unflatten(c));
    os << "] = " << v.to_string();
    return os.str();
  }
  return {};
}

// ---------------------------------------------------------------------------
// Dense exact linear algebra

namespace linalg {

namespace {

// Pivot with the smallest representation among the candidates keeps
// intermediate degrees down.
std::optional<std::size_t> choose_pivot(const Dense& a, std::size_t col, std::size_t from) {
  std::optional<std::size_t> best;
  int best_size = 0;
  for (std::size_t i = from; i < a.size(); ++i) {
    if (a[i][col].is_zero()) continue;
    const int size = a[i][col].degree_span();
    if (!best || size < best_size) {
      best = i;
      best_size = size;
      if (size == 0) break;
    }
  }
  return best;
}

}  // namespace

Dense solve(Dense a, Dense b) {
  const std::size_t n = a.size();
  for (const auto& row : a) {
    if (row.size() != n) throw Error(ErrorKind::DimensionMismatch, "solve: matrix not square");
  }
  if (b.size() != n) throw Error(ErrorKind::DimensionMismatch, "solve: right-hand side height");
  const std::size_t m = n == 0 ? 0 : b.front().size();
  const Dense original = a;
  Scalar prev(1);
  for (std::size_t k = 0; k < n; ++k) {
    auto pivot = choose_pivot(a, k, k);
    if (!pivot) {
      auto v = null_vector(original);
      throw SingularOperatorError("matrix of size " + std::to_string(n) + " is singular", v.value_or(std::vector<Scalar>{}));
    }
    std::swap(a[k], a[*pivot]);
    std::swap(b[k], b[*pivot]);
    const Scalar& akk = a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const Scalar aik = a[i][k];
      const bool has_aik = !aik.is_zero();
      for (std::size_t j = k + 1; j < n; ++j) {
        Scalar v = akk * a[i][j];
        if (has_aik && !a[k][j].is_zero()) v -= aik * a[k][j];
        a[i][j] = v / prev;
      }
      for (std::size_t j = 0; j < m; ++j) {
        Scalar v = akk * b[i][j];
        if (has_aik && !b[k][j].is_zero()) v -= aik * b[k][j];
        b[i][j] = v / prev;
      }
      a[i][k] = Scalar(0);
    }
    prev = akk;
  }
  Dense x(n, std::vector<Scalar>(m));
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t ii = n; ii-- > 0;) {
      Scalar acc = b[ii][j];
      for (std::size_t c = ii + 1; c < n; ++c) {
        if (!a[ii][c].is_zero() && !x[c][j].is_zero()) acc -= a[ii][c] * x[c][j];
      }
      x[ii][j] = acc / a[ii][ii];
    }
  }
  return x;
}

namespace {

// Reduced row echelon form over the field; returns pivot columns.
std::vector<std::size_t> rref(Dense& a) {
  std::vector<std::size_t> pivots;
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    auto pivot = choose_pivot(a, c, r);
    if (!pivot) continue;
    std::swap(a[r], a[*pivot]);
    const Scalar inv = a[r][c].inverse();
    for (std::size_t j = c; j < cols; ++j) {
      if (!a[r][j].is_zero()) a[r][j] *= inv;
    }
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      const Scalar f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) {
        if (!a[r][j].is_zero()) a[i][j] -= f * a[r][j];
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::optional<std::vector<Scalar>> null_vector(Dense a) {
  const std::size_t cols = a.empty() ? 0 : a.front().size();
  const auto pivots = rref(a);
  std::vector<char> is_pivot(cols, 0);
  for (std::size_t p : pivots) is_pivot[p] = 1;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Scalar> v(cols);
    v[f] = Scalar(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][f];
    return v;
  }
  return std::nullopt;
}

std::size_t rank(Dense a) { return rref(a).size(); }

}  // namespace linalg

}  // namespace qmatrix
