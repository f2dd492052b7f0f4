#include "ehm/lattice.hpp"

#include <algorithm>
#include <sstream>

#include "ehm/errors.hpp"

namespace ehm {

LatticeVector::LatticeVector(std::initializer_list<long> coords) {
  coords_.reserve(coords.size());
  for (long c : coords) coords_.emplace_back(c);
}

LatticeVector LatticeVector::from_longs(const std::vector<long>& coords) {
  std::vector<Integer> v;
  v.reserve(coords.size());
  for (long c : coords) v.emplace_back(c);
  return LatticeVector(std::move(v));
}

bool LatticeVector::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Integer& c) { return c == 0; });
}

LatticeVector& LatticeVector::operator+=(const LatticeVector& other) {
  if (other.rank() != rank()) throw InputError("rank mismatch in lattice vector sum");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += other.coords_[i];
  return *this;
}

LatticeVector& LatticeVector::operator-=(const LatticeVector& other) {
  if (other.rank() != rank()) throw InputError("rank mismatch in lattice vector difference");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= other.coords_[i];
  return *this;
}

LatticeVector& LatticeVector::operator*=(const Integer& scalar) {
  for (auto& c : coords_) c *= scalar;
  return *this;
}

std::strong_ordering operator<=>(const LatticeVector& a, const LatticeVector& b) {
  if (a.rank() != b.rank()) return a.rank() <=> b.rank();
  for (std::size_t i = 0; i < a.rank(); ++i) {
    int c = cmp(a[i], b[i]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::string LatticeVector::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) s += ",";
    s += coords_[i].get_str();
  }
  return s + ")";
}

std::ostream& operator<<(std::ostream& os, const LatticeVector& v) { return os << v.str(); }

Integer dot(const LatticeVector& a, const LatticeVector& b) {
  if (a.rank() != b.rank()) throw InputError("rank mismatch in pairing");
  Integer s = 0;
  for (std::size_t i = 0; i < a.rank(); ++i) s += a[i] * b[i];
  return s;
}

RationalVector to_rational(const LatticeVector& v) {
  RationalVector r;
  r.reserve(v.rank());
  for (const auto& c : v) r.emplace_back(c);
  return r;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw InputError("dimension mismatch in rational dot product");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const RationalVector& a, const LatticeVector& b) {
  if (a.size() != b.rank()) throw InputError("dimension mismatch in rational dot product");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::string to_string(const RationalVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  return s + ")";
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<LatticeVector>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().rank();
  RationalMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].rank() != cols) throw InputError("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<RationalVector>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  RationalMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InputError("ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RationalVector RationalMatrix::row(std::size_t i) const {
  return RationalVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                        data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

RationalVector RationalMatrix::column(std::size_t j) const {
  RationalVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RationalVector RationalMatrix::operator*(const RationalVector& x) const {
  if (x.size() != cols_) throw InputError("dimension mismatch in matrix-vector product");
  RationalVector y(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
  return y;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& other) const {
  if (other.rows_ != cols_) throw InputError("dimension mismatch in matrix product");
  RationalMatrix p(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      if ((*this)(i, k) == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) p(i, j) += (*this)(i, k) * other(k, j);
    }
  return p;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(RationalMatrix& m, std::size_t limit_cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < limit_cols && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Rational determinant(const RationalMatrix& a) {
  if (a.rows() != a.cols()) throw InputError("determinant of a non-square matrix");
  RationalMatrix m = a;
  std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

std::size_t matrix_rank(const RationalMatrix& a) {
  RationalMatrix m = a;
  return rref(m, m.cols()).size();
}

std::optional<RationalMatrix> inverse(const RationalMatrix& a) {
  if (a.rows() != a.cols()) throw InputError("inverse of a non-square matrix");
  std::size_t n = a.rows();
  RationalMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  if (rref(aug, n).size() != n) return std::nullopt;
  RationalMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

std::optional<RationalVector> rational_solve(const RationalMatrix& a, const RationalVector& b) {
  if (a.rows() != a.cols()) throw InputError("rational_solve needs a square matrix");
  if (b.size() != a.rows()) throw InputError("rational_solve: right-hand side has wrong length");
  std::size_t n = a.rows();
  RationalMatrix aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n) = b[i];
  }
  if (rref(aug, n).size() != n) return std::nullopt;
  RationalVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = aug(i, n);
  return x;
}

IntegerMatrix unimodular_inverse(const IntegerMatrix& m) {
  RationalMatrix a = RationalMatrix::from_rows(m);
  if (a.rows() != a.cols()) throw InputError("unimodular_inverse needs a square matrix");
  Rational det = determinant(a);
  if (det != 1 && det != -1)
    throw NotUnimodular("matrix has determinant " + det.get_str() + ", expected +-1");
  RationalMatrix inv = *inverse(a);
  IntegerMatrix out;
  out.reserve(inv.rows());
  for (std::size_t i = 0; i < inv.rows(); ++i) out.push_back(to_lattice(inv.row(i)));
  return out;
}

LatticeVector primitive(const LatticeVector& v) {
  Integer g = 0;
  for (const auto& c : v) g = gcd(g, c);
  if (g == 0) throw InputError("primitive vector of zero is undefined");
  std::vector<Integer> out;
  out.reserve(v.rank());
  for (const auto& c : v) out.push_back(c / g);
  return LatticeVector(std::move(out));
}

LatticeVector primitive(const RationalVector& v) {
  Integer l = 1;
  for (const auto& q : v) l = lcm(l, q.get_den());
  std::vector<Integer> out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(Integer(q * l));
  return primitive(LatticeVector(std::move(out)));
}

bool is_integral(const RationalVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q.get_den() == 1; });
}

LatticeVector to_lattice(const RationalVector& v) {
  if (!is_integral(v)) throw NonIntegralWeight("vector " + to_string(v) + " is not integral");
  std::vector<Integer> out;
  out.reserve(v.size());
  for (const auto& q : v) out.push_back(q.get_num());
  return LatticeVector(std::move(out));
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

bool LinearConstraint::satisfied_by(const RationalVector& x) const {
  Rational v = dot(normal, x);
  switch (relation) {
    case Relation::GreaterEqual: return v >= offset;
    case Relation::Greater: return v > offset;
    case Relation::Equal: return v == offset;
  }
  return false;
}

void LinearSystem::add(LinearConstraint c) {
  if (c.normal.size() != dimension_)
    throw InputError("constraint has " + std::to_string(c.normal.size()) + " coefficients, system has dimension " +
                     std::to_string(dimension_));
  constraints_.push_back(std::move(c));
}

void LinearSystem::add(RationalVector normal, Relation rel, Rational offset) {
  add(LinearConstraint{std::move(normal), std::move(offset), rel});
}

void LinearSystem::add_le(const RationalVector& normal, const Rational& offset) {
  RationalVector n = normal;
  for (auto& q : n) q = -q;
  add(std::move(n), Relation::GreaterEqual, -offset);
}

void LinearSystem::add_lt(const RationalVector& normal, const Rational& offset) {
  RationalVector n = normal;
  for (auto& q : n) q = -q;
  add(std::move(n), Relation::Greater, -offset);
}

bool LinearSystem::satisfied_by(const RationalVector& x) const {
  return std::all_of(constraints_.begin(), constraints_.end(),
                     [&](const LinearConstraint& c) { return c.satisfied_by(x); });
}

bool LinearSystem::has_strict() const {
  return std::any_of(constraints_.begin(), constraints_.end(),
                     [](const LinearConstraint& c) { return c.relation == Relation::Greater; });
}

LinearSystem LinearSystem::substitute(std::size_t var, const Rational& value) const {
  if (var >= dimension_) throw InputError("substitute: variable out of range");
  LinearSystem out(dimension_ - 1);
  for (const auto& c : constraints_) {
    RationalVector n;
    n.reserve(dimension_ - 1);
    for (std::size_t j = 0; j < dimension_; ++j)
      if (j != var) n.push_back(c.normal[j]);
    out.add(std::move(n), c.relation, c.offset - c.normal[var] * value);
  }
  return out;
}

LinearSystem LinearSystem::closure() const {
  LinearSystem out = *this;
  for (auto& c : out.constraints_)
    if (c.relation == Relation::Greater) c.relation = Relation::GreaterEqual;
  return out;
}

}  // namespace ehm
