#pragma once

// The formal character ring Z[L*], polynomials in t over it, and the
// polarized geometric-series terms that make up a fixed-point Morse sum.

#include <complex>
#include <map>
#include <span>
#include <vector>

#include "ehm/lattice.hpp"

namespace ehm {

// Finitely supported integer-valued function on the weight lattice.
class FormalCharacter {
 public:
  FormalCharacter() = default;
  explicit FormalCharacter(std::size_t rank) : rank_(rank) {}

  static FormalCharacter monomial(const LatticeVector& weight, const Integer& mult = 1);

  std::size_t rank() const { return rank_; }
  const std::map<LatticeVector, Integer>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Integer coefficient(const LatticeVector& weight) const;
  void add(const LatticeVector& weight, const Integer& mult);
  std::vector<LatticeVector> support() const;
  bool nonnegative() const;
  // Sum of all multiplicities (the dimension, for a genuine representation).
  Integer total() const;

  // Multiplication by e^shift.
  FormalCharacter shifted(const LatticeVector& shift) const;

  FormalCharacter& operator+=(const FormalCharacter& other);
  FormalCharacter& operator-=(const FormalCharacter& other);
  friend FormalCharacter operator+(FormalCharacter a, const FormalCharacter& b) { return a += b; }
  friend FormalCharacter operator-(FormalCharacter a, const FormalCharacter& b) { return a -= b; }
  friend FormalCharacter operator*(const FormalCharacter& a, const FormalCharacter& b);
  friend FormalCharacter operator*(const Integer& s, const FormalCharacter& a);
  friend bool operator==(const FormalCharacter&, const FormalCharacter&) = default;

 private:
  std::size_t rank_ = 0;
  std::map<LatticeVector, Integer> terms_;
};

FormalCharacter char_add(const FormalCharacter& a, const FormalCharacter& b);
FormalCharacter char_mul(const FormalCharacter& a, const FormalCharacter& b);

// sum_k t^k coeffs[k], k = 0..degree.
class MorsePolynomial {
 public:
  MorsePolynomial() = default;
  MorsePolynomial(std::size_t rank, std::size_t degree) : rank_(rank), coeffs_(degree + 1, FormalCharacter(rank)) {}

  std::size_t rank() const { return rank_; }
  std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  FormalCharacter& operator[](std::size_t k) { return coeffs_.at(k); }
  const FormalCharacter& operator[](std::size_t k) const { return coeffs_.at(k); }

  // Degree-indexed multiplicities of e^weight.
  std::vector<Integer> profile(const LatticeVector& weight) const;

 private:
  std::size_t rank_ = 0;
  std::vector<FormalCharacter> coeffs_;
};

// t^degree * numerator * prod_k 1/(1 - e^{-lambda_k}), each factor read as the
// series sum_{m>=0} e^{-m lambda_k}. The flip shifts of a polarized fixed-point
// term are already folded into the numerator.
class PolarizedTerm {
 public:
  PolarizedTerm(std::size_t t_degree, FormalCharacter numerator, std::vector<LatticeVector> denominators,
                LatticeVector theta1);

  std::size_t t_degree() const { return t_degree_; }
  const FormalCharacter& numerator() const { return numerator_; }
  const std::vector<LatticeVector>& denominators() const { return denominators_; }
  const LatticeVector& theta1() const { return theta1_; }

  Integer coefficient(const LatticeVector& target) const;

 private:
  // Number of m in N^d with sum_k m_k lambda_k = diff.
  Integer count_representations(const LatticeVector& diff) const;
  void count_free(std::size_t idx, const Integer& budget, LatticeVector& residual, Integer& count) const;

  std::size_t t_degree_;
  FormalCharacter numerator_;
  std::vector<LatticeVector> denominators_;
  LatticeVector theta1_;
  std::vector<Integer> pairings_;

  // A maximal independent subset of the denominators is solved for directly;
  // the remaining ones are enumerated under the pairing budget.
  std::vector<std::size_t> basis_;
  std::vector<std::size_t> free_;
  std::vector<std::size_t> basis_rows_;  // coordinates giving an invertible square block
  RationalMatrix basis_solver_;          // inverse of that block
};

// Coefficient of e^target, with theta1 re-checked against every denominator.
Integer term_coefficient(const PolarizedTerm& term, const LatticeVector& target, const LatticeVector& theta1);

struct SignedTerm {
  int sign = 1;
  const PolarizedTerm* term = nullptr;
};

// c[k] = coefficient of t^k e^target in sum sign * term, k = 0..degree.
std::vector<Integer> sum_coefficients(std::span<const SignedTerm> terms, const LatticeVector& target,
                                      std::size_t degree);

struct Division {
  std::vector<Integer> quotient;
  Integer remainder;
  bool exact = false;
};

// Solves (1 + t) q = p. The remainder is the alternating sum of p.
Division divide_one_plus_t(std::span<const Integer> p);

using EvaluationPoint = std::vector<std::complex<double>>;

constexpr double kSingularTolerance = 1e-12;

// e^xi -> exp(i <xi, theta>).
std::complex<double> evaluate(const FormalCharacter& ch, const EvaluationPoint& theta);
std::complex<double> evaluate(const LatticeVector& weight, const EvaluationPoint& theta);
// Closed rational-function value (with t set to the given number).
std::complex<double> evaluate(const PolarizedTerm& term, const EvaluationPoint& theta,
                              std::complex<double> t = -1.0);

}  // namespace ehm
