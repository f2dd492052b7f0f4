#include "ehm/charring.hpp"

#include <algorithm>

#include "ehm/errors.hpp"

namespace ehm {

FormalCharacter FormalCharacter::monomial(const LatticeVector& weight, const Integer& mult) {
  FormalCharacter c(weight.rank());
  c.add(weight, mult);
  return c;
}

Integer FormalCharacter::coefficient(const LatticeVector& weight) const {
  auto it = terms_.find(weight);
  return it == terms_.end() ? Integer(0) : it->second;
}

void FormalCharacter::add(const LatticeVector& weight, const Integer& mult) {
  if (weight.rank() != rank_) throw InputError("weight " + weight.str() + " has the wrong rank for this character");
  if (mult == 0) return;
  auto [it, inserted] = terms_.emplace(weight, mult);
  if (!inserted) {
    it->second += mult;
    if (it->second == 0) terms_.erase(it);
  }
}

std::vector<LatticeVector> FormalCharacter::support() const {
  std::vector<LatticeVector> s;
  s.reserve(terms_.size());
  for (const auto& [w, m] : terms_) s.push_back(w);
  return s;
}

bool FormalCharacter::nonnegative() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.second > 0; });
}

Integer FormalCharacter::total() const {
  Integer s = 0;
  for (const auto& [w, m] : terms_) s += m;
  return s;
}

FormalCharacter FormalCharacter::shifted(const LatticeVector& shift) const {
  FormalCharacter out(rank_);
  for (const auto& [w, m] : terms_) out.terms_.emplace(w + shift, m);
  return out;
}

FormalCharacter& FormalCharacter::operator+=(const FormalCharacter& other) {
  if (other.rank_ != rank_) throw InputError("rank mismatch in character sum");
  for (const auto& [w, m] : other.terms_) add(w, m);
  return *this;
}

FormalCharacter& FormalCharacter::operator-=(const FormalCharacter& other) {
  if (other.rank_ != rank_) throw InputError("rank mismatch in character difference");
  for (const auto& [w, m] : other.terms_) add(w, -m);
  return *this;
}

FormalCharacter operator*(const FormalCharacter& a, const FormalCharacter& b) {
  if (a.rank_ != b.rank_) throw InputError("rank mismatch in character product");
  FormalCharacter out(a.rank_);
  for (const auto& [wa, ma] : a.terms_)
    for (const auto& [wb, mb] : b.terms_) out.add(wa + wb, ma * mb);
  return out;
}

FormalCharacter operator*(const Integer& s, const FormalCharacter& a) {
  FormalCharacter out(a.rank_);
  if (s == 0) return out;
  for (const auto& [w, m] : a.terms_) out.terms_.emplace(w, s * m);
  return out;
}

FormalCharacter char_add(const FormalCharacter& a, const FormalCharacter& b) { return a + b; }
FormalCharacter char_mul(const FormalCharacter& a, const FormalCharacter& b) { return a * b; }

std::vector<Integer> MorsePolynomial::profile(const LatticeVector& weight) const {
  std::vector<Integer> p;
  p.reserve(coeffs_.size());
  for (const auto& c : coeffs_) p.push_back(c.coefficient(weight));
  return p;
}

PolarizedTerm::PolarizedTerm(std::size_t t_degree, FormalCharacter numerator, std::vector<LatticeVector> denominators,
                             LatticeVector theta1)
    : t_degree_(t_degree),
      numerator_(std::move(numerator)),
      denominators_(std::move(denominators)),
      theta1_(std::move(theta1)) {
  const std::size_t r = theta1_.rank();
  if (numerator_.rank() != r) throw InputError("polarized term: numerator rank differs from theta1");
  for (const auto& lam : denominators_) {
    if (lam.rank() != r) throw InputError("polarized term: denominator rank differs from theta1");
    Integer g = dot(lam, theta1_);
    if (g <= 0)
      throw PolarizationError("weight " + lam.str() + " pairs to " + g.get_str() + " with " + theta1_.str());
    pairings_.push_back(g);
  }

  // Greedy independent subset.
  std::vector<RationalVector> chosen;
  for (std::size_t k = 0; k < denominators_.size(); ++k) {
    auto trial = chosen;
    trial.push_back(to_rational(denominators_[k]));
    if (matrix_rank(RationalMatrix::from_rows(trial)) == trial.size()) {
      chosen = std::move(trial);
      basis_.push_back(k);
    } else {
      free_.push_back(k);
    }
  }
  if (basis_.empty()) return;
  // Columns = basis weights; pick coordinate rows forming an invertible block.
  RationalMatrix cols = RationalMatrix::from_rows(chosen).transpose();
  std::vector<RationalVector> picked;
  for (std::size_t i = 0; i < r && picked.size() < basis_.size(); ++i) {
    auto trial = picked;
    trial.push_back(cols.row(i));
    if (matrix_rank(RationalMatrix::from_rows(trial)) == trial.size()) {
      picked = std::move(trial);
      basis_rows_.push_back(i);
    }
  }
  basis_solver_ = *inverse(RationalMatrix::from_rows(picked));
}

Integer PolarizedTerm::coefficient(const LatticeVector& target) const {
  if (target.rank() != theta1_.rank()) throw InputError("target weight has the wrong rank");
  Integer total = 0;
  for (const auto& [shift, mult] : numerator_.terms()) {
    Integer n = count_representations(shift - target);
    if (n != 0) total += mult * n;
  }
  return total;
}

Integer PolarizedTerm::count_representations(const LatticeVector& diff) const {
  Integer budget = dot(diff, theta1_);
  if (budget < 0) return 0;
  if (denominators_.empty()) return diff.is_zero() ? 1 : 0;
  LatticeVector residual = diff;
  Integer count = 0;
  count_free(0, budget, residual, count);
  return count;
}

void PolarizedTerm::count_free(std::size_t idx, const Integer& budget, LatticeVector& residual, Integer& count) const {
  if (idx == free_.size()) {
    if (basis_.empty()) {
      if (residual.is_zero()) ++count;
      return;
    }
    RationalVector rhs;
    rhs.reserve(basis_rows_.size());
    for (auto i : basis_rows_) rhs.emplace_back(residual[i]);
    RationalVector m = basis_solver_ * rhs;
    LatticeVector check(residual.rank());
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      if (m[j] < 0 || m[j].get_den() != 1) return;
      check += m[j].get_num() * denominators_[basis_[j]];
    }
    if (check == residual) ++count;
    return;
  }
  const LatticeVector& lam = denominators_[free_[idx]];
  const Integer& g = pairings_[free_[idx]];
  Integer left = budget;
  Integer steps = 0;
  while (true) {
    count_free(idx + 1, left, residual, count);
    left -= g;
    if (left < 0) break;
    residual -= lam;
    ++steps;
  }
  residual += steps * lam;
}

Integer term_coefficient(const PolarizedTerm& term, const LatticeVector& target, const LatticeVector& theta1) {
  for (const auto& lam : term.denominators())
    if (dot(lam, theta1) <= 0)
      throw PolarizationError("weight " + lam.str() + " is not positive on " + theta1.str());
  return term.coefficient(target);
}

std::vector<Integer> sum_coefficients(std::span<const SignedTerm> terms, const LatticeVector& target,
                                      std::size_t degree) {
  std::vector<Integer> c(degree + 1, 0);
  for (const auto& st : terms) {
    if (st.term->t_degree() > degree) throw InputError("term degree exceeds the requested profile length");
    Integer v = st.term->coefficient(target);
    if (v == 0) continue;
    if (st.sign < 0)
      c[st.term->t_degree()] -= v;
    else
      c[st.term->t_degree()] += v;
  }
  return c;
}

Division divide_one_plus_t(std::span<const Integer> p) {
  Division d;
  if (p.empty()) {
    d.exact = true;
    return d;
  }
  Integer running = 0;
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    running = p[k] - running;
    d.quotient.push_back(running);
  }
  d.remainder = p.back() - running;
  d.exact = d.remainder == 0;
  return d;
}

std::complex<double> evaluate(const LatticeVector& weight, const EvaluationPoint& theta) {
  if (weight.rank() != theta.size()) throw InputError("evaluation point has the wrong dimension");
  std::complex<double> phase = 0;
  for (std::size_t i = 0; i < theta.size(); ++i) phase += weight[i].get_d() * theta[i];
  return std::exp(std::complex<double>(0, 1) * phase);
}

std::complex<double> evaluate(const FormalCharacter& ch, const EvaluationPoint& theta) {
  std::complex<double> s = 0;
  for (const auto& [w, m] : ch.terms()) s += m.get_d() * evaluate(w, theta);
  return s;
}

std::complex<double> evaluate(const PolarizedTerm& term, const EvaluationPoint& theta, std::complex<double> t) {
  std::complex<double> v = evaluate(term.numerator(), theta);
  for (const auto& lam : term.denominators()) {
    std::complex<double> den = 1.0 - evaluate(-lam, theta);
    if (std::abs(den) <= kSingularTolerance)
      throw SingularEvaluation("denominator for weight " + lam.str() + " vanishes at the evaluation point");
    v /= den;
  }
  return v * std::pow(t, static_cast<int>(term.t_degree()));
}

}  // namespace ehm
