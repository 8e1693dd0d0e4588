#include <gtest/gtest.h>

#include <random>

#include "icsheaf/linalg.hpp"

using namespace icsheaf;

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

int dense_rank(std::vector<std::vector<mpq_class>> m) {
  int rows = static_cast<int>(m.size());
  int cols = rows ? static_cast<int>(m[0].size()) : 0;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i) {
      if (m[at(i)][at(c)] != 0) piv = i;
    }
    if (piv < 0) continue;
    std::swap(m[at(piv)], m[at(r)]);
    for (int i = r + 1; i < rows; ++i) {
      mpq_class f = m[at(i)][at(c)] / m[at(r)][at(c)];
      for (int j = c; j < cols; ++j) m[at(i)][at(j)] -= f * m[at(r)][at(j)];
    }
    ++r;
  }
  return r;
}

SparseMatrix random_matrix(std::mt19937& rng, const Field& f, int rows, int cols, int density) {
  std::vector<std::vector<Rational>> d(at(rows), std::vector<Rational>(at(cols)));
  for (auto& row : d) {
    for (auto& x : row) {
      if (static_cast<int>(rng() % 100) < density) x = Rational(static_cast<std::int64_t>(rng() % 7) - 3);
    }
  }
  return SparseMatrix::from_dense(f, d);
}

}  // namespace

TEST(Rational, ArithmeticAndParse) {
  Rational a = Rational::parse("3/4");
  Rational b = Rational::parse("-5/6");
  EXPECT_EQ((a + b).to_string(), "-1/12");
  EXPECT_EQ((a * b).to_string(), "-5/8");
  EXPECT_EQ((a / b).to_string(), "-9/10");
  EXPECT_EQ(Rational(6, -4).to_string(), "-3/2");
  EXPECT_THROW(Rational::parse("1/0"), std::exception);
}

TEST(Rational, OverflowSpillsToGmp) {
  Rational big(std::int64_t{1} << 62);
  Rational sq = big * big;
  EXPECT_FALSE(sq.is_small());
  EXPECT_EQ(sq / big, big);
  EXPECT_TRUE((sq / big).is_small());
}

TEST(Field, PrimeArithmetic) {
  Field f = Field::parse("fp:7");
  EXPECT_EQ(f.characteristic(), 7u);
  EXPECT_EQ(f.mul(Rational(3), f.inv(Rational(3))), Rational(1));
  EXPECT_EQ(f.from_rational(Rational(1, 2)), Rational(4));
  EXPECT_EQ(f.from_rational(Rational(-1)), Rational(6));
  EXPECT_THROW(f.from_rational(Rational(1, 7)), std::exception);
  EXPECT_THROW(Field::parse("fp:8"), std::exception);
  EXPECT_EQ(Field::parse("q"), Field::rationals());
}

TEST(SparseMatrix, RankMatchesDenseOracle) {
  std::mt19937 rng(11);
  Field q = Field::rationals();
  for (int trial = 0; trial < 60; ++trial) {
    int rows = 1 + static_cast<int>(rng() % 9);
    int cols = 1 + static_cast<int>(rng() % 9);
    SparseMatrix m = random_matrix(rng, q, rows, cols, 40);
    std::vector<std::vector<mpq_class>> d(at(rows), std::vector<mpq_class>(at(cols)));
    for (int c = 0; c < cols; ++c) {
      for (const auto& [r, v] : m.col(c)) d[at(r)][at(c)] = v.to_mpq();
    }
    EXPECT_EQ(rank(q, m), dense_rank(d));
  }
}

TEST(SparseMatrix, KernelVectorsAreKernel) {
  std::mt19937 rng(5);
  for (const Field& f : {Field::rationals(), Field::prime(5)}) {
    for (int trial = 0; trial < 40; ++trial) {
      int rows = 1 + static_cast<int>(rng() % 6);
      int cols = 1 + static_cast<int>(rng() % 8);
      SparseMatrix m = random_matrix(rng, f, rows, cols, 50);
      KernelBasis k = kernel(f, m);
      EXPECT_EQ(static_cast<int>(k.vectors.size()), cols - rank(f, m));
      for (const auto& v : k.vectors) EXPECT_TRUE(apply(f, m, v).empty());
      for (std::size_t i = 0; i < k.vectors.size(); ++i) {
        SparseVec coords = k.coordinates(f, k.vectors[i]);
        ASSERT_EQ(coords.size(), 1u);
        EXPECT_EQ(coords[0].first, static_cast<int>(i));
      }
    }
  }
}

TEST(GradedComplex, ReductionPreservesCohomology) {
  // Cochains of a filled triangle: three vertices, three edges, one face.
  Field q = Field::rationals();
  GradedComplex c;
  c.degree = {0, 0, 0, 1, 1, 1, 2};
  c.label = {0, 1, 2, 3, 4, 5, 6};
  c.d = SparseMatrix(7, 7);
  // edges 01, 02, 12
  c.d.add_entry(q, 3, 0, Rational(-1));
  c.d.add_entry(q, 3, 1, Rational(1));
  c.d.add_entry(q, 4, 0, Rational(-1));
  c.d.add_entry(q, 4, 2, Rational(1));
  c.d.add_entry(q, 5, 1, Rational(-1));
  c.d.add_entry(q, 5, 2, Rational(1));
  c.d.add_entry(q, 6, 3, Rational(1));
  c.d.add_entry(q, 6, 4, Rational(-1));
  c.d.add_entry(q, 6, 5, Rational(1));
  ASSERT_TRUE(squares_to_zero(q, c));
  EXPECT_EQ(cohomology_dims(q, c), (std::map<int, int>{{0, 1}}));
  ReduceOptions opts;
  opts.track_projection = true;
  opts.track_inclusion = true;
  Reduction r = reduce_complex(q, c, opts);
  EXPECT_EQ(r.reduced.size(), 1);
  EXPECT_EQ(cohomology_dims(q, r.reduced), (std::map<int, int>{{0, 1}}));
  SparseMatrix round = multiply(q, r.projection, r.inclusion);
  EXPECT_EQ(round, SparseMatrix::identity(1));
}

TEST(GradedComplex, MappingConeOfIdentityIsAcyclic) {
  Field q = Field::rationals();
  GradedComplex a;
  a.degree = {0, 1};
  a.label = {0, 0};
  a.d = SparseMatrix(2, 2);
  SparseMatrix id = SparseMatrix::identity(2);
  GradedComplex cone = mapping_cone(q, a, a, id);
  EXPECT_TRUE(squares_to_zero(q, cone));
  EXPECT_TRUE(cohomology_dims(q, cone).empty());
}
