#pragma once

// Exact integer linear algebra: Smith normal form and the solvability,
// kernel and saturation questions that reduce to it.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace toricsm {

using Integer = mpz_class;
using LatticeVector = std::vector<Integer>;

class LatticeMatrix {
 public:
  LatticeMatrix() = default;
  LatticeMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  LatticeMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static LatticeMatrix identity(std::size_t n);
  static LatticeMatrix from_columns(std::size_t rows, const std::vector<LatticeVector>& columns);
  static LatticeMatrix from_rows(std::size_t cols, const std::vector<LatticeVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  LatticeVector row(std::size_t r) const;
  LatticeVector column(std::size_t c) const;
  LatticeMatrix transposed() const;
  LatticeMatrix row_block(std::size_t first, std::size_t count) const;
  LatticeMatrix column_block(std::size_t first, std::size_t count) const;

  LatticeMatrix operator*(const LatticeMatrix& other) const;
  LatticeVector operator*(const LatticeVector& v) const;
  bool operator==(const LatticeMatrix& other) const = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> entries_;
};

/// left * M * right == diag(diagonal) (padded with zeros), with left and right
/// unimodular and diagonal[i] | diagonal[i+1] for the nonzero entries.
struct SmithDecomposition {
  LatticeMatrix left;
  std::vector<Integer> diagonal;  // length min(rows, cols)
  LatticeMatrix right;

  std::size_t rank() const;
};

SmithDecomposition smith_normal_form(const LatticeMatrix& m);

/// Some x with m * x == b, or nullopt when no integer solution exists.
std::optional<LatticeVector> solve_integer(const LatticeMatrix& m, const LatticeVector& b);

/// Basis (as columns) of the saturation of the column span of m.
LatticeMatrix saturation(const LatticeMatrix& m);

/// Basis (as columns) of {x integer : m * x == 0}.
LatticeMatrix integer_kernel(const LatticeMatrix& m);

/// Order of the cokernel Z^rows / image(m); nullopt stands for an infinite cokernel.
std::optional<Integer> cokernel_index(const LatticeMatrix& m);

/// Integer determinant by fraction-free elimination. Square matrices only.
Integer determinant(const LatticeMatrix& m);

Integer dot(const LatticeVector& a, const LatticeVector& b);
Integer content(const LatticeVector& v);  // gcd of entries, 0 for the zero vector
bool is_zero(const LatticeVector& v);

/// Decides b ∈ column span of a fixed matrix repeatedly; the decomposition is
/// computed once.
class SpanMembership {
 public:
  explicit SpanMembership(const LatticeMatrix& generators);
  bool contains(const LatticeVector& b) const;
  std::size_t ambient_dim() const { return ambient_; }

 private:
  std::size_t ambient_;
  SmithDecomposition snf_;
};

}  // namespace toricsm
