#pragma once

// Exact integer/rational linear algebra on the weight lattice and its dual,
// plus feasibility and lattice-point enumeration for mixed strict/non-strict
// linear systems.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ehm {

using Integer = mpz_class;
using Rational = mpq_class;

// An element of Z^rank. Used both for weights (L*) and for points of L.
class LatticeVector {
 public:
  LatticeVector() = default;
  explicit LatticeVector(std::size_t rank) : coords_(rank, 0) {}
  explicit LatticeVector(std::vector<Integer> coords) : coords_(std::move(coords)) {}
  LatticeVector(std::initializer_list<long> coords);

  static LatticeVector from_longs(const std::vector<long>& coords);

  std::size_t rank() const { return coords_.size(); }
  const Integer& operator[](std::size_t i) const { return coords_[i]; }
  Integer& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<Integer>& coords() const { return coords_; }

  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }

  bool is_zero() const;

  LatticeVector& operator+=(const LatticeVector& other);
  LatticeVector& operator-=(const LatticeVector& other);
  LatticeVector& operator*=(const Integer& scalar);

  friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
  friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
  friend LatticeVector operator*(const Integer& s, LatticeVector v) { return v *= s; }
  friend LatticeVector operator-(LatticeVector v) { return v *= Integer(-1); }

  friend bool operator==(const LatticeVector& a, const LatticeVector& b) {
    return a.coords_ == b.coords_;
  }
  // Lexicographic; vectors of different rank order by rank first.
  friend std::strong_ordering operator<=>(const LatticeVector& a, const LatticeVector& b);

  // "(1,-2,0)"
  std::string str() const;

 private:
  std::vector<Integer> coords_;
};

std::ostream& operator<<(std::ostream& os, const LatticeVector& v);

Integer dot(const LatticeVector& a, const LatticeVector& b);

using RationalVector = std::vector<Rational>;

RationalVector to_rational(const LatticeVector& v);
Rational dot(const RationalVector& a, const RationalVector& b);
Rational dot(const RationalVector& a, const LatticeVector& b);
std::string to_string(const RationalVector& v);

// Dense row-major rational matrix.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static RationalMatrix identity(std::size_t n);
  // Rows of the matrix are the given vectors.
  static RationalMatrix from_rows(const std::vector<LatticeVector>& rows);
  static RationalMatrix from_rows(const std::vector<RationalVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RationalVector row(std::size_t i) const;
  RationalVector column(std::size_t j) const;
  RationalMatrix transpose() const;
  RationalVector operator*(const RationalVector& x) const;
  RationalMatrix operator*(const RationalMatrix& other) const;

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

// Integer square matrices are passed around as lists of rows.
using IntegerMatrix = std::vector<LatticeVector>;

Rational determinant(const RationalMatrix& a);
std::size_t matrix_rank(const RationalMatrix& a);
std::optional<RationalMatrix> inverse(const RationalMatrix& a);

// Solves A x = b for square A. Empty when A is singular; callers that need to
// tell singular from inconsistent use matrix_rank.
std::optional<RationalVector> rational_solve(const RationalMatrix& a, const RationalVector& b);

// Exact inverse of an integer matrix with |det| = 1. Throws NotUnimodular otherwise.
IntegerMatrix unimodular_inverse(const IntegerMatrix& m);

// v / gcd(v). Throws InputError for the zero vector.
LatticeVector primitive(const LatticeVector& v);
// Clears denominators of a nonzero rational vector and returns the primitive
// integral vector pointing in the same direction.
LatticeVector primitive(const RationalVector& v);

// True when every entry is an integer.
bool is_integral(const RationalVector& v);
LatticeVector to_lattice(const RationalVector& v);

enum class Relation { GreaterEqual, Greater, Equal };

// normal . x  (relation)  offset
struct LinearConstraint {
  RationalVector normal;
  Rational offset;
  Relation relation = Relation::GreaterEqual;

  bool satisfied_by(const RationalVector& x) const;
};

class LinearSystem {
 public:
  LinearSystem() = default;
  explicit LinearSystem(std::size_t dimension) : dimension_(dimension) {}

  std::size_t dimension() const { return dimension_; }
  const std::vector<LinearConstraint>& constraints() const { return constraints_; }
  std::vector<LinearConstraint>& constraints() { return constraints_; }
  bool empty() const { return constraints_.empty(); }

  void add(LinearConstraint c);
  void add(RationalVector normal, Relation rel, Rational offset);
  void add_ge(const RationalVector& normal, const Rational& offset) { add(normal, Relation::GreaterEqual, offset); }
  void add_gt(const RationalVector& normal, const Rational& offset) { add(normal, Relation::Greater, offset); }
  void add_eq(const RationalVector& normal, const Rational& offset) { add(normal, Relation::Equal, offset); }
  // normal . x <= offset
  void add_le(const RationalVector& normal, const Rational& offset);
  // normal . x < offset
  void add_lt(const RationalVector& normal, const Rational& offset);

  bool satisfied_by(const RationalVector& x) const;
  bool has_strict() const;

  // Substitutes x[var] = value and drops that coordinate.
  LinearSystem substitute(std::size_t var, const Rational& value) const;
  // The same system with every strict relation relaxed to >=.
  LinearSystem closure() const;

 private:
  std::size_t dimension_ = 0;
  std::vector<LinearConstraint> constraints_;
};

// Exact feasibility by Fourier-Motzkin elimination. Strict relations are kept
// as strict; the returned witness satisfies every constraint exactly.
std::optional<RationalVector> feasible(const LinearSystem& system);

struct Interval {
  bool empty = false;
  std::optional<Rational> lower;
  std::optional<Rational> upper;
};

// Range of x[var] over the closure of the feasible set (exact projection).
Interval project_bounds(const LinearSystem& system, std::size_t var);

// All integer points of a bounded system in lexicographic order.
// Throws Unbounded if the feasible set is nonempty and unbounded.
std::vector<LatticeVector> lattice_points(const LinearSystem& system);

// Floor/ceil of a rational.
Integer floor(const Rational& q);
Integer ceil(const Rational& q);

}  // namespace ehm
