#include "toricsm/lattice.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "toricsm/error.hpp"

namespace toricsm {

LatticeMatrix::LatticeMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  entries_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw_precondition("ragged matrix literal");
    for (long v : r) entries_.emplace_back(v);
  }
}

LatticeMatrix LatticeMatrix::identity(std::size_t n) {
  LatticeMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

LatticeMatrix LatticeMatrix::from_columns(std::size_t rows, const std::vector<LatticeVector>& columns) {
  LatticeMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw_precondition("column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

LatticeMatrix LatticeMatrix::from_rows(std::size_t cols, const std::vector<LatticeVector>& rows) {
  LatticeMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw_precondition("row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

LatticeVector LatticeMatrix::row(std::size_t r) const {
  return LatticeVector(entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                       entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

LatticeVector LatticeMatrix::column(std::size_t c) const {
  LatticeVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

LatticeMatrix LatticeMatrix::transposed() const {
  LatticeMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

LatticeMatrix LatticeMatrix::row_block(std::size_t first, std::size_t count) const {
  LatticeMatrix b(count, cols_);
  for (std::size_t r = 0; r < count; ++r)
    for (std::size_t c = 0; c < cols_; ++c) b(r, c) = (*this)(first + r, c);
  return b;
}

LatticeMatrix LatticeMatrix::column_block(std::size_t first, std::size_t count) const {
  LatticeMatrix b(rows_, count);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < count; ++c) b(r, c) = (*this)(r, first + c);
  return b;
}

LatticeMatrix LatticeMatrix::operator*(const LatticeMatrix& other) const {
  if (cols_ != other.rows_) throw_precondition("matrix product dimension mismatch");
  LatticeMatrix p(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) p(r, c) += a * other(k, c);
    }
  return p;
}

LatticeVector LatticeMatrix::operator*(const LatticeVector& v) const {
  if (v.size() != cols_) throw_precondition("matrix-vector dimension mismatch");
  LatticeVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
  return out;
}

std::string LatticeMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ",[" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? "," : "") << (*this)(r, c);
    os << ']';
  }
  os << ']';
  return os.str();
}

std::size_t SmithDecomposition::rank() const {
  return static_cast<std::size_t>(
      std::count_if(diagonal.begin(), diagonal.end(), [](const Integer& d) { return d != 0; }));
}

namespace {

void swap_rows(LatticeMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(a, c), m(b, c));
}

void swap_cols(LatticeMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, a), m(r, b));
}

// row[target] += factor * row[source]
void add_row(LatticeMatrix& m, std::size_t target, std::size_t source, const Integer& factor) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(target, c) += factor * m(source, c);
}

void add_col(LatticeMatrix& m, std::size_t target, std::size_t source, const Integer& factor) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, target) += factor * m(r, source);
}

}  // namespace

SmithDecomposition smith_normal_form(const LatticeMatrix& input) {
  const std::size_t rows = input.rows();
  const std::size_t cols = input.cols();
  LatticeMatrix a = input;
  LatticeMatrix left = LatticeMatrix::identity(rows);
  LatticeMatrix right = LatticeMatrix::identity(cols);
  const std::size_t steps = std::min(rows, cols);

  for (std::size_t t = 0; t < steps; ++t) {
    bool exhausted = false;
    for (;;) {
      // Smallest nonzero magnitude in the trailing block becomes the pivot.
      std::size_t pr = rows, pc = cols;
      for (std::size_t r = t; r < rows; ++r)
        for (std::size_t c = t; c < cols; ++c) {
          if (a(r, c) == 0) continue;
          if (pr == rows || abs(a(r, c)) < abs(a(pr, pc))) {
            pr = r;
            pc = c;
          }
        }
      if (pr == rows) {
        exhausted = true;
        break;
      }
      swap_rows(a, t, pr);
      swap_rows(left, t, pr);
      swap_cols(a, t, pc);
      swap_cols(right, t, pc);

      bool clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (a(r, t) == 0) continue;
        Integer q = a(r, t) / a(t, t);
        add_row(a, r, t, -q);
        add_row(left, r, t, -q);
        if (a(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (a(t, c) == 0) continue;
        Integer q = a(t, c) / a(t, t);
        add_col(a, c, t, -q);
        add_col(right, c, t, -q);
        if (a(t, c) != 0) clean = false;
      }
      if (!clean) continue;

      // Pivot must divide the whole trailing block; otherwise fold the
      // offending row in and reduce again.
      std::size_t bad_row = rows;
      for (std::size_t r = t + 1; r < rows && bad_row == rows; ++r)
        for (std::size_t c = t + 1; c < cols; ++c)
          if (a(r, c) % a(t, t) != 0) {
            bad_row = r;
            break;
          }
      if (bad_row == rows) break;
      add_row(a, t, bad_row, 1);
      add_row(left, t, bad_row, 1);
    }
    if (exhausted) break;
    if (a(t, t) < 0) {
      for (std::size_t c = 0; c < cols; ++c) a(t, c) = -a(t, c);
      for (std::size_t c = 0; c < rows; ++c) left(t, c) = -left(t, c);
    }
  }

  SmithDecomposition out{std::move(left), std::vector<Integer>(steps), std::move(right)};
  for (std::size_t t = 0; t < steps; ++t) out.diagonal[t] = a(t, t);
  return out;
}

namespace {

std::optional<LatticeVector> solve_with(const SmithDecomposition& snf, std::size_t cols, const LatticeVector& b) {
  const LatticeVector lb = snf.left * b;
  LatticeVector y(cols);
  for (std::size_t i = 0; i < lb.size(); ++i) {
    const bool pivot = i < snf.diagonal.size() && snf.diagonal[i] != 0;
    if (!pivot) {
      if (lb[i] != 0) return std::nullopt;
      continue;
    }
    if (lb[i] % snf.diagonal[i] != 0) return std::nullopt;
    y[i] = lb[i] / snf.diagonal[i];
  }
  return snf.right * y;
}

}  // namespace

std::optional<LatticeVector> solve_integer(const LatticeMatrix& m, const LatticeVector& b) {
  if (b.size() != m.rows()) throw_precondition("solve_integer: right-hand side length mismatch");
  return solve_with(smith_normal_form(m), m.cols(), b);
}

LatticeMatrix integer_kernel(const LatticeMatrix& m) {
  const SmithDecomposition snf = smith_normal_form(m);
  const std::size_t r = snf.rank();
  return snf.right.column_block(r, m.cols() - r);
}

LatticeMatrix saturation(const LatticeMatrix& m) {
  // The saturated span is the common kernel of the left kernel: rows of
  // `left` past the rank annihilate every column of m.
  const SmithDecomposition snf = smith_normal_form(m);
  const std::size_t r = snf.rank();
  if (r == 0) return LatticeMatrix(m.rows(), 0);
  if (r == m.rows()) return LatticeMatrix::identity(m.rows());
  return integer_kernel(snf.left.row_block(r, m.rows() - r));
}

std::optional<Integer> cokernel_index(const LatticeMatrix& m) {
  const SmithDecomposition snf = smith_normal_form(m);
  if (snf.rank() < m.rows()) return std::nullopt;
  Integer index = 1;
  for (const Integer& d : snf.diagonal)
    if (d != 0) index *= d;
  return index;
}

Integer determinant(const LatticeMatrix& input) {
  if (input.rows() != input.cols()) throw_precondition("determinant of non-square matrix");
  const std::size_t n = input.rows();
  if (n == 0) return 1;
  LatticeMatrix a = input;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      swap_rows(a, k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Integer dot(const LatticeVector& a, const LatticeVector& b) {
  if (a.size() != b.size()) throw_precondition("dot: length mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer content(const LatticeVector& v) {
  Integer g = 0;
  for (const Integer& x : v) g = gcd(g, x);
  return g;
}

bool is_zero(const LatticeVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

SpanMembership::SpanMembership(const LatticeMatrix& generators)
    : ambient_(generators.rows()), snf_(smith_normal_form(generators)) {}

bool SpanMembership::contains(const LatticeVector& b) const {
  if (b.size() != ambient_) throw_precondition("span membership: length mismatch");
  return solve_with(snf_, snf_.right.rows(), b).has_value();
}

}  // namespace toricsm
