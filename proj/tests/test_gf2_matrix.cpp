#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"
#include "z2rank/errors.hpp"
#include "z2rank/gf2_matrix.hpp"
#include "z2rank/matrix_io.hpp"

using namespace z2rank;
using z2rank::testing::naive_rank;
using z2rank::testing::random_matrix;
using z2rank::testing::random_symmetric;

namespace {

Gf2Matrix i_plus_j(std::size_t n) { return Gf2Matrix::identity(n) + Gf2Matrix::ones(n); }

}  // namespace

TEST(Gf2Matrix, EmptyMatrixHasRankZero) {
  EXPECT_EQ(rank(Gf2Matrix()), 0u);
  EXPECT_EQ(rank(Gf2Matrix(0, 5)), 0u);
  EXPECT_EQ(rank(Gf2Matrix(3, 0)), 0u);
}

TEST(Gf2Matrix, IdentityPlusAllOnes) {
  EXPECT_EQ(rank(i_plus_j(3)), 2u);
  EXPECT_EQ(rank(i_plus_j(4)), 4u);
  EXPECT_TRUE(is_alternate(i_plus_j(3)));
}

TEST(Gf2Matrix, AlternateClassification) {
  EXPECT_TRUE(is_alternate(Gf2Matrix::from_rows({"01", "10"})));
  EXPECT_FALSE(is_alternate(Gf2Matrix::from_rows({"1"})));
  EXPECT_THROW(is_alternate(Gf2Matrix::from_rows({"01", "00"})), StructuralError);
  EXPECT_THROW(is_alternate(Gf2Matrix(2, 3)), StructuralError);
}

TEST(Gf2Matrix, ArithmeticBasics) {
  EXPECT_TRUE((Gf2Matrix::ones(2) + Gf2Matrix::ones(2)).is_zero());
  std::mt19937_64 rng(3);
  const Gf2Matrix m = random_matrix(rng, 3, 5);
  EXPECT_EQ(Gf2Matrix::identity(3) * m, m);
  EXPECT_THROW(m + Gf2Matrix(3, 4), StructuralError);
  EXPECT_THROW(m * m, StructuralError);
}

TEST(Gf2Matrix, BlockAssemble) {
  const Gf2Matrix z = Gf2Matrix::from_rows({"0"}), o = Gf2Matrix::from_rows({"1"});
  EXPECT_EQ(block_assemble({{z, o}, {o, z}}), Gf2Matrix::from_rows({"01", "10"}));
  EXPECT_THROW(block_assemble({{z, Gf2Matrix(2, 1)}, {o, z}}), StructuralError);
}

TEST(Gf2Matrix, PaddingBitsStayZero) {
  Gf2Matrix m = Gf2Matrix::ones(3, 70);
  m.add_row(0, 1);
  m.swap_cols(0, 69);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto row = m.row(i);
    EXPECT_EQ(row[1] >> 6, 0u);
  }
  EXPECT_EQ(transpose(transpose(m)), m);
}

TEST(Gf2Matrix, RankMatchesReferenceOnRandomShapes) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t r = rng() % 90, c = rng() % 90;
    const Gf2Matrix m = random_matrix(rng, r, c);
    ASSERT_EQ(rank(m), naive_rank(m)) << r << "x" << c;
    ASSERT_EQ(rank(m), rank(transpose(m)));
  }
}

TEST(Gf2Matrix, RankIsSubadditive) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng() % 12;
    const Gf2Matrix a = random_symmetric(rng, n), b = random_symmetric(rng, n);
    ASSERT_LE(rank(a + b), rank(a) + rank(b));
  }
}

TEST(Gf2Matrix, AlternateRankIsEven) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 500; ++trial) {
    const Gf2Matrix a = random_symmetric(rng, rng() % 13, true);
    ASSERT_EQ(rank(a) % 2, 0u);
  }
}

TEST(Gf2Matrix, InverseRoundTrip) {
  std::mt19937_64 rng(17);
  int seen = 0;
  while (seen < 100) {
    const Gf2Matrix m = random_matrix(rng, 9, 9);
    if (!is_invertible(m)) {
      EXPECT_THROW(inverse(m), StructuralError);
      continue;
    }
    ++seen;
    EXPECT_EQ(m * inverse(m), Gf2Matrix::identity(9));
  }
}

TEST(Gf2Matrix, RankInvariantUnderCongruence) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const Gf2Matrix a = random_symmetric(rng, 8);
    Gf2Matrix c = random_matrix(rng, 8, 8);
    if (!is_invertible(c)) continue;
    ASSERT_EQ(rank(transpose(c) * a * c), rank(a));
  }
}

TEST(MatrixIo, RoundTrip) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const Gf2Matrix m = random_matrix(rng, rng() % 6, rng() % 6);
    EXPECT_EQ(parse_matrix(to_text(m)), m);
  }
}

TEST(MatrixIo, DiagnosticsCarryPosition) {
  try {
    parse_matrix("2 3\n011\n1x1\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.column(), 2u);
  }
  EXPECT_THROW(parse_matrix("2 2\n01\n"), ParseError);
  EXPECT_THROW(parse_matrix("1 2\n011\n"), ParseError);
  EXPECT_THROW(parse_matrix("1 1\n1\n1\n"), ParseError);
}
