#include "doctest.h"
#include "oracles.hpp"
#include "toricsm/lattice.hpp"

using namespace toricsm;

namespace {

LatticeMatrix diagonal_matrix(const SmithDecomposition& d, std::size_t rows, std::size_t cols) {
  LatticeMatrix out(rows, cols);
  for (std::size_t i = 0; i < d.diagonal.size(); ++i) out(i, i) = d.diagonal[i];
  return out;
}

bool unimodular(const LatticeMatrix& m) { return abs(oracle::leibniz_det(m)) == 1; }

}  // namespace

TEST_CASE("smith normal form of small examples") {
  const auto a = smith_normal_form(LatticeMatrix{{2, 4}, {6, 8}});
  CHECK(a.diagonal == std::vector<Integer>{2, 4});
  CHECK(abs(determinant(LatticeMatrix{{2, 4}, {6, 8}})) == 8);

  const auto id = smith_normal_form(LatticeMatrix::identity(3));
  CHECK(id.diagonal == std::vector<Integer>{1, 1, 1});

  const auto zero = smith_normal_form(LatticeMatrix{{0}});
  CHECK(zero.diagonal == std::vector<Integer>{0});
  CHECK(zero.rank() == 0);
}

TEST_CASE("smith normal form matches determinantal divisors") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = 1 + trial % 4;
    const std::size_t cols = 1 + (trial / 4) % 4;
    const LatticeMatrix m = oracle::random_matrix(rng, rows, cols, trial % 3 == 0 ? 9 : 3);
    const SmithDecomposition d = smith_normal_form(m);
    CAPTURE(m.to_string());
    CHECK(d.left * m * d.right == diagonal_matrix(d, rows, cols));
    CHECK(unimodular(d.left));
    CHECK(unimodular(d.right));
    for (std::size_t i = 0; i + 1 < d.diagonal.size(); ++i) {
      CHECK(d.diagonal[i] >= 0);
      if (d.diagonal[i + 1] != 0) CHECK(d.diagonal[i + 1] % d.diagonal[i] == 0);
    }
    CHECK(d.diagonal == oracle::invariant_factors(m));
  }
}

TEST_CASE("integer solutions") {
  auto x = solve_integer(LatticeMatrix{{2}}, {4});
  REQUIRE(x);
  CHECK(*x == LatticeVector{2});
  CHECK_FALSE(solve_integer(LatticeMatrix{{2}}, {3}));
  x = solve_integer(LatticeMatrix{{1, 0}, {1, 2}}, {1, 3});
  REQUIRE(x);
  CHECK(*x == LatticeVector{1, 1});

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> entry(-6, 6);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t rows = 1 + trial % 3;
    const std::size_t cols = 1 + (trial / 3) % 3;
    const LatticeMatrix m = oracle::random_matrix(rng, rows, cols, 4);
    LatticeVector b(rows);
    for (auto& v : b) v = entry(rng);
    const auto sol = solve_integer(m, b);
    CAPTURE(m.to_string());
    CHECK(sol.has_value() == oracle::integer_solvable(m, b));
    if (sol) CHECK(m * *sol == b);
  }
}

TEST_CASE("saturation") {
  const LatticeMatrix s = saturation(LatticeMatrix::from_columns(2, {{2, 0}}));
  REQUIRE(s.cols() == 1);
  CHECK(abs(s(0, 0)) == 1);
  CHECK(s(1, 0) == 0);

  CHECK(oracle::invariant_factors(saturation(LatticeMatrix::identity(2))) == std::vector<Integer>{1, 1});
  CHECK(saturation(LatticeMatrix(3, 0)).cols() == 0);

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 2 + trial % 3;
    const std::size_t cols = 1 + (trial / 3) % 3;
    const LatticeMatrix m = oracle::random_matrix(rng, rows, cols, 5);
    const LatticeMatrix sat = saturation(m);
    CAPTURE(m.to_string());
    CHECK(sat.cols() == oracle::rank(m));
    if (sat.cols() == 0) continue;
    // Torsion-free quotient: all invariant factors of the basis are 1.
    for (const Integer& d : oracle::invariant_factors(sat)) CHECK(d == 1);
    for (std::size_t j = 0; j < m.cols(); ++j) CHECK(solve_integer(sat, m.column(j)));
    const LatticeMatrix again = saturation(sat);
    for (std::size_t j = 0; j < sat.cols(); ++j) CHECK(solve_integer(again, sat.column(j)));
    for (std::size_t j = 0; j < again.cols(); ++j) CHECK(solve_integer(sat, again.column(j)));
  }
}

TEST_CASE("integer kernel") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + trial % 3;
    const std::size_t cols = 1 + (trial / 3) % 4;
    const LatticeMatrix m = oracle::random_matrix(rng, rows, cols, 4);
    const LatticeMatrix k = integer_kernel(m);
    CAPTURE(m.to_string());
    CHECK(k.cols() == cols - oracle::rank(m));
    const LatticeMatrix prod = m * k;
    for (std::size_t i = 0; i < prod.rows(); ++i)
      for (std::size_t j = 0; j < prod.cols(); ++j) CHECK(prod(i, j) == 0);
    if (k.cols() > 0)
      for (const Integer& d : oracle::invariant_factors(k)) CHECK(d == 1);
  }
}

TEST_CASE("cokernel index") {
  CHECK(cokernel_index(LatticeMatrix{{2}}) == Integer(2));
  CHECK(cokernel_index(LatticeMatrix::identity(3)) == Integer(1));
  CHECK_FALSE(cokernel_index(LatticeMatrix{{0}}).has_value());
  CHECK_FALSE(cokernel_index(LatticeMatrix{{1, 0}}.transposed()).has_value());

  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 2;
    const LatticeMatrix m = oracle::random_matrix(rng, n, n, 5);
    const Integer det = oracle::leibniz_det(m);
    CAPTURE(m.to_string());
    CHECK(determinant(m) == det);
    const auto idx = cokernel_index(m);
    if (det == 0) {
      CHECK_FALSE(idx.has_value());
    } else {
      REQUIRE(idx);
      CHECK(*idx == abs(det));
    }
  }
}

TEST_CASE("span membership agrees with solve_integer") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> entry(-5, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const LatticeMatrix m = oracle::random_matrix(rng, 3, 1 + trial % 4, 3);
    const SpanMembership span(m);
    for (int k = 0; k < 5; ++k) {
      LatticeVector b(3);
      for (auto& v : b) v = entry(rng);
      CHECK(span.contains(b) == solve_integer(m, b).has_value());
    }
  }
}

TEST_CASE("arbitrary precision entries") {
  Integer big("123456789012345678901234567890");
  const LatticeMatrix m = LatticeMatrix::from_columns(2, {{big, 1}, {big + 1, 1}});
  CHECK(determinant(m) == -1);
  const auto x = solve_integer(m, {big * 3, 5});
  REQUIRE(x);
  CHECK(m * *x == LatticeVector{big * 3, 5});
}

TEST_CASE("vector helpers") {
  CHECK(dot({1, 2, 3}, {4, 5, 6}) == 32);
  CHECK(content({4, -6, 10}) == 2);
  CHECK(content({0, 0}) == 0);
  CHECK(is_zero({0, 0}));
  CHECK_FALSE(is_zero({0, 1}));
}
