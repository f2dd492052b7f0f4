#pragma once

// Root systems and Weyl groups in fundamental-weight coordinates, full flag
// manifold fixed-point data, Weyl characters, and the Weyl-group regrouping
// of the Morse sum.
//
// Coordinates: a weight is (lambda_1, ..., lambda_r) with lambda_i =
// <lambda, alpha_i^vee>. Simple root i is row i of the matrix
// A_ij = <alpha_i, alpha_j^vee>. A vector of t is written in the basis dual to
// the fundamental weights, so the pairing is the plain dot product.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ehm/charring.hpp"
#include "ehm/fan.hpp"
#include "ehm/morse.hpp"

namespace ehm {

enum class RootType { A1, A2, A1xA1, B2, G2, A3 };

std::string to_string(RootType t);
// Accepts "A1", "A2", "A1xA1", "B2", "G2", "A3" (case-insensitive).
RootType parse_root_type(const std::string& name);

class RootSystem {
 public:
  static RootSystem of_type(RootType type);

  RootType type() const { return type_; }
  std::string name() const { return to_string(type_); }
  std::size_t rank() const { return rank_; }
  const std::vector<std::vector<long>>& cartan() const { return cartan_; }
  const std::vector<LatticeVector>& simple_roots() const { return simple_; }
  const std::vector<LatticeVector>& positive_roots() const { return positive_; }
  std::vector<LatticeVector> roots() const;
  LatticeVector rho() const;

  bool is_root(const LatticeVector& v) const;
  bool is_positive(const LatticeVector& v) const;
  // c with v = sum_i c_i alpha_i.
  RationalVector root_coordinates(const LatticeVector& v) const;
  // Invariant inner product, normalized so short roots have (alpha, alpha) = 2.
  Rational inner(const LatticeVector& a, const LatticeVector& b) const;
  // <lambda, alpha^vee> = 2 (lambda, alpha) / (alpha, alpha).
  Rational coroot_pairing(const LatticeVector& lambda, const LatticeVector& alpha) const;

  LatticeVector reflect(std::size_t i, const LatticeVector& v) const;
  bool is_dominant(const LatticeVector& v) const;
  LatticeVector dominant_conjugate(const LatticeVector& v) const;
  // Integral theta with <alpha_i, theta> > 0 for every simple root.
  LatticeVector dominant_chamber_vector() const;

 private:
  RootType type_ = RootType::A1;
  std::size_t rank_ = 0;
  std::vector<std::vector<long>> cartan_;
  std::vector<long> half_lengths_;  // (alpha_i, alpha_i) / 2
  std::vector<LatticeVector> simple_;
  std::vector<LatticeVector> positive_;
  RationalMatrix to_root_coords_;
};

struct WeylElement {
  IntegerMatrix matrix;    // acts on weight coordinates: w(v) = matrix * v
  std::vector<int> word;   // reduced word, w = s_{word[0]} s_{word[1]} ... (1-based)
  int det = 1;

  std::size_t length() const { return word.size(); }
  LatticeVector apply(const LatticeVector& v) const;
  std::string label() const;
};

// Breadth-first closure over simple reflections; sorted by length.
std::vector<WeylElement> generate_weyl(const RootSystem& rs);

// |w Delta+ cap Delta-|, computed from the action on roots.
std::size_t root_length(const RootSystem& rs, const WeylElement& w);

// Checks that delta_s is a subset of the roots closed under negation and addition.
void check_root_subset(const RootSystem& rs, std::span<const LatticeVector> delta_s);
std::size_t relative_length(const RootSystem& rs, const WeylElement& w, std::span<const LatticeVector> delta_s);
int det_s(const RootSystem& rs, const WeylElement& w, std::span<const LatticeVector> delta_s);
// The reflection group generated by s_alpha for alpha in delta_s, as matrices.
std::vector<IntegerMatrix> subsystem_group(const RootSystem& rs, std::span<const LatticeVector> delta_s);
// sum over u in W_S of u(e^lambda / prod_{alpha in Delta+_S} (1 - e^{-alpha})).
FormalCharacter levi_character(const RootSystem& rs, std::span<const LatticeVector> delta_s,
                               const LatticeVector& lambda);

// One fixed point per Weyl element with isotropy weights w(Delta+) and fiber e^{w Lambda}.
Scenario flag_fixed_data(const RootSystem& rs, const LatticeVector& lambda);
// action[g][p]: the fixed point that group element g sends point p to.
std::vector<std::vector<std::size_t>> flag_weyl_action(const RootSystem& rs);

// Character of the irreducible representation with highest weight lambda,
// extracted from the flag fixed-point data and checked against Freudenthal's
// recursion. The window defaults to the bounding box of the Weyl orbit.
FormalCharacter weyl_character(const RootSystem& rs, const LatticeVector& lambda);
FormalCharacter weyl_character(const RootSystem& rs, const LatticeVector& lambda,
                               std::span<const LatticeVector> window);
FormalCharacter freudenthal_character(const RootSystem& rs, const LatticeVector& lambda);
// prod over positive roots of (Lambda + rho, alpha) / (rho, alpha).
Integer weyl_dimension(const RootSystem& rs, const LatticeVector& lambda);

// Partition of the fixed points into orbits of the given action table.
std::vector<std::vector<std::size_t>> orbit_partition(const Scenario& scenario,
                                                      const std::vector<std::vector<std::size_t>>& action);

// Data of one Weyl orbit of fixed points, at its representative p_S.
struct OrbitDatum {
  std::string label;
  std::vector<LatticeVector> isotropy_roots;           // Delta_S, closed under negation
  std::map<LatticeVector, Rational> multiplicities;    // m^S_Lambda
  std::vector<LatticeVector> extra_weights;            // the weights besides Delta+ minus Delta+_S
};

// H^k = sum_Lambda m^k_Lambda R_Lambda, indexed by k.
using RepresentationCohomology = std::vector<std::map<LatticeVector, Integer>>;

struct NonabelianReport {
  std::size_t dim = 0;
  std::vector<LatticeVector> window;
  // Per weight, per degree: both sides of the regrouped inequality (nonzero entries only).
  std::map<LatticeVector, std::vector<Rational>> lhs;
  std::map<LatticeVector, std::vector<Rational>> rhs;
  // Weights where the t = -1 specialization does not balance.
  std::vector<LatticeVector> fixed_point_failures;
  // Weights where LHS - RHS differs from (Weyl denominator) x (torus-level difference).
  std::vector<LatticeVector> torus_mismatches;
  Scenario expanded;       // the torus fixed-point data of all orbits
  std::size_t chamber = 0; // chamber of the expanded scenario
  StrongReport torus;      // Q >= 0 certificate on the window, at torus level

  bool holds() const { return fixed_point_failures.empty() && torus_mismatches.empty() && torus.holds; }
};

// Torus fixed-point data of all orbits: one point per coset w W_S.
Scenario expand_orbits(const RootSystem& rs, std::span<const OrbitDatum> orbits);

NonabelianReport assemble_nonabelian(const RootSystem& rs, std::span<const OrbitDatum> orbits,
                                     const LatticeVector& chamber_vector, const RepresentationCohomology& cohomology,
                                     std::span<const LatticeVector> window);

}  // namespace ehm
