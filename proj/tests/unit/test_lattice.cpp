#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "ehm/errors.hpp"
#include "ehm/lattice.hpp"
#include "oracles.hpp"

using namespace ehm;

namespace {

RationalMatrix random_matrix(std::mt19937& rng, std::size_t n, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = d(rng);
  return m;
}

std::vector<std::vector<Rational>> rows_of(const RationalMatrix& m) {
  std::vector<std::vector<Rational>> out;
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(m.row(i));
  return out;
}

LinearSystem random_system(std::mt19937& rng, std::size_t dim, std::size_t count, bool boxed) {
  std::uniform_int_distribution<int> coef(-3, 3), off(-4, 4), rel(0, 5);
  LinearSystem s(dim);
  for (std::size_t c = 0; c < count; ++c) {
    RationalVector a(dim);
    for (auto& x : a) x = coef(rng);
    int r = rel(rng);
    Relation relation = r < 3 ? Relation::GreaterEqual : (r < 5 ? Relation::Greater : Relation::Equal);
    s.add(a, relation, off(rng));
  }
  if (boxed)
    for (std::size_t i = 0; i < dim; ++i) {
      RationalVector e(dim, 0);
      e[i] = 1;
      s.add_ge(e, -3);
      s.add_le(e, 3);
    }
  return s;
}

}  // namespace

TEST(LatticeVector, ArithmeticAndOrdering) {
  LatticeVector a{1, -2, 3}, b{0, 5, -1};
  EXPECT_EQ(a + b, (LatticeVector{1, 3, 2}));
  EXPECT_EQ(a - b, (LatticeVector{1, -7, 4}));
  EXPECT_EQ(Integer(2) * a, (LatticeVector{2, -4, 6}));
  EXPECT_EQ(-a, (LatticeVector{-1, 2, -3}));
  EXPECT_EQ(dot(a, b), Integer(-13));
  EXPECT_LT(b, a);
  EXPECT_LT((LatticeVector{5}), (LatticeVector{0, 0}));
  EXPECT_EQ(a.str(), "(1,-2,3)");
  EXPECT_TRUE(LatticeVector(3).is_zero());
}

TEST(LatticeVector, BigCoordinatesStayExact) {
  LatticeVector a(std::vector<Integer>{Integer("123456789012345678901234567890"), 1});
  LatticeVector b = a + a;
  EXPECT_EQ(b[0].get_str(), "246913578024691357802469135780");
}

TEST(RationalMatrix, DeterminantMatchesLeibniz) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + trial % 4;
    RationalMatrix m = random_matrix(rng, n, -5, 5);
    EXPECT_EQ(determinant(m), oracle::determinant(rows_of(m)));
  }
}

TEST(RationalMatrix, InverseAndSolve) {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 1 + trial % 3;
    RationalMatrix m = random_matrix(rng, n, -4, 4);
    auto inv = inverse(m);
    RationalVector b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = Rational(static_cast<long>(i) * 3 - 2, 7);
    auto x = rational_solve(m, b);
    if (determinant(m) == 0) {
      EXPECT_FALSE(inv.has_value());
      EXPECT_FALSE(x.has_value());
      EXPECT_LT(matrix_rank(m), n);
      continue;
    }
    ASSERT_TRUE(inv && x);
    EXPECT_EQ(m * *inv, RationalMatrix::identity(n));
    EXPECT_EQ(m * *x, b);
    EXPECT_EQ(matrix_rank(m), n);
  }
}

TEST(RationalMatrix, UnimodularInverse) {
  IntegerMatrix m{{-1, -1}, {0, 1}};
  IntegerMatrix inv = unimodular_inverse(m);
  EXPECT_EQ(inv, (IntegerMatrix{{-1, -1}, {0, 1}}));
  EXPECT_THROW(unimodular_inverse(IntegerMatrix{{2, 0}, {0, 1}}), NotUnimodular);
}

TEST(Primitive, DividesByGcd) {
  EXPECT_EQ(primitive(LatticeVector{4, -6, 0}), (LatticeVector{2, -3, 0}));
  EXPECT_EQ(primitive(RationalVector{Rational(1, 2), Rational(-1, 3)}), (LatticeVector{3, -2}));
  EXPECT_THROW(primitive(LatticeVector{0, 0}), InputError);
  EXPECT_THROW(to_lattice(RationalVector{Rational(1, 2)}), NonIntegralWeight);
}

TEST(Feasibility, StrictVersusClosed) {
  LinearSystem s(1);
  s.add_gt({1}, 0);
  s.add_lt({1}, 0);
  EXPECT_FALSE(feasible(s).has_value());
  EXPECT_TRUE(feasible(s.closure()).has_value());
}

TEST(Feasibility, AgreesWithVertexOracleAndGrid) {
  std::mt19937 rng(2024);
  int feasible_count = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t dim = 1 + trial % 3;
    std::size_t count = 1 + (trial / 3) % 8;
    LinearSystem s = random_system(rng, dim, count, true);
    auto w = feasible(s);
    bool exact = oracle::vertex_feasible(s);
    ASSERT_EQ(w.has_value(), exact) << "trial " << trial;
    if (w) {
      ++feasible_count;
      EXPECT_TRUE(s.satisfied_by(*w));
    }
    // A grid point certifies feasibility.
    if (oracle::grid_point(s, 3, dim == 3 ? 2 : 4)) EXPECT_TRUE(w.has_value()) << "trial " << trial;
  }
  EXPECT_GT(feasible_count, 30);
}

TEST(LatticePoints, SimplexCount) {
  LinearSystem s(2);
  s.add_ge({1, 0}, 0);
  s.add_ge({0, 1}, 0);
  s.add_le({1, 1}, 2);
  EXPECT_EQ(lattice_points(s).size(), 6u);
}

TEST(LatticePoints, UnboundedThrows) {
  LinearSystem s(2);
  s.add_ge({1, 0}, 0);
  EXPECT_THROW(lattice_points(s), Unbounded);
  LinearSystem thin(2);
  thin.add_gt({2, 0}, 0);
  thin.add_lt({2, 0}, 1);
  EXPECT_THROW(lattice_points(thin), Unbounded);
}

TEST(LatticePoints, MatchesBoxEnumerationAndPermutationInvariant) {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 150; ++trial) {
    std::size_t dim = 1 + trial % 3;
    LinearSystem s = random_system(rng, dim, 1 + trial % 6, true);
    auto pts = lattice_points(s);
    EXPECT_EQ(pts, oracle::box_points(s, 3)) << "trial " << trial;
    EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end()));
    auto constraints = s.constraints();
    std::shuffle(constraints.begin(), constraints.end(), rng);
    LinearSystem shuffled(dim);
    for (auto& c : constraints) shuffled.add(c);
    EXPECT_EQ(lattice_points(shuffled), pts);
  }
}

TEST(LinearSystem, SubstituteDropsVariable) {
  LinearSystem s(2);
  s.add_ge({1, 1}, 3);
  LinearSystem t = s.substitute(0, 1);
  EXPECT_EQ(t.dimension(), 1u);
  EXPECT_TRUE(t.satisfied_by({2}));
  EXPECT_FALSE(t.satisfied_by({1}));
  EXPECT_THROW(s.add_ge({1}, 0), InputError);
}
