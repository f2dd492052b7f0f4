#pragma once

// Gamma regions, support verdicts, the equivariant index, strong and weak
// inequality checks, toric cohomology reconstruction and obstruction search.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ehm/chambers.hpp"
#include "ehm/charring.hpp"
#include "ehm/fan.hpp"

namespace ehm {

struct GammaGenerator {
  LatticeVector direction;  // the negated polarized weight
  bool strict = false;      // set when the original weight was flipped
};

// { apex + sum_k r_k direction_k : r_k >= 0, r_k > 0 for strict generators }
struct GammaRegion {
  std::vector<LatticeVector> apexes;
  std::vector<GammaGenerator> generators;
  std::string point_label;
  std::size_t point = 0;
  std::size_t chamber = 0;
  std::size_t degree = 0;
};

GammaRegion gamma_region(const FixedPointDatum& datum, const Chamber& chamber, std::size_t point_index = 0);

struct MembershipCertificate {
  LatticeVector apex;
  RationalVector coefficients;  // r_k
};

std::optional<MembershipCertificate> gamma_membership(const GammaRegion& region, const LatticeVector& xi);
bool gamma_contains(const GammaRegion& region, const LatticeVector& xi);
// Checks the certificate directly against the region's definition.
bool certificate_valid(const GammaRegion& region, const LatticeVector& xi, const MembershipCertificate& cert);

// Scenario plus its arrangement, chambers and per-chamber polarization data.
class MorseContext {
 public:
  explicit MorseContext(Scenario scenario);

  const Scenario& scenario() const { return scenario_; }
  const Arrangement& arrangement() const { return arrangement_; }
  const std::vector<Chamber>& chambers() const { return chambers_; }
  std::size_t rank() const { return scenario_.rank; }
  std::size_t dim() const { return scenario_.dim; }

  std::size_t polarizing_index(std::size_t chamber, std::size_t point) const;
  GammaRegion region(std::size_t chamber, std::size_t point) const;
  PolarizedTerm term(std::size_t chamber, std::size_t point) const;
  std::size_t opposite(std::size_t chamber) const { return opposite_.at(chamber); }
  std::size_t locate(const LatticeVector& theta) const { return locate_chamber(chambers_, arrangement_, theta); }

  bool contains(std::size_t chamber, std::size_t point, const LatticeVector& xi) const;
  // in[k] = xi lies in the union of the regions of degree-k points.
  std::vector<bool> degree_membership(std::size_t chamber, const LatticeVector& xi) const;
  // Coefficient of t^k e^xi in the fixed-point Morse sum for this chamber.
  std::vector<Integer> lhs_profile(std::size_t chamber, const LatticeVector& xi) const;
  // Alternating sum of lhs_profile.
  Integer index_in(std::size_t chamber, const LatticeVector& xi) const;

  // The same two queries for every chamber at once, indexed [chamber][k].
  std::vector<std::vector<bool>> membership_table(const LatticeVector& xi) const;
  std::vector<std::vector<Integer>> profile_table(const LatticeVector& xi) const;

  // Lattice points of the bounding box of all fiber weights, grown by margin.
  std::vector<LatticeVector> default_window(long margin = 3) const;

 private:
  // For a basis point and one apex: writing apex - xi = sum_k c_k lambda_k,
  // xi lies in the region exactly when the chamber flips precisely the
  // weights with c_k < 0. `flip_mask` records that set as bits.
  struct ApexCoords {
    std::uint64_t flip_mask = 0;
    bool integral = false;
  };
  struct Coords {
    std::vector<std::vector<ApexCoords>> per_point;
  };
  Coords coords_for(const LatticeVector& xi) const;
  bool contains_with(const Coords& c, std::size_t chamber, std::size_t point, const LatticeVector& xi) const;
  std::vector<bool> membership_with(const Coords& c, std::size_t chamber, const LatticeVector& xi) const;
  std::vector<Integer> profile_with(const Coords& c, std::size_t chamber, const LatticeVector& xi) const;

  Scenario scenario_;
  Arrangement arrangement_;
  std::vector<Chamber> chambers_;
  std::vector<std::size_t> opposite_;
  // signs_[chamber][point][k] = +1 if weight k is positive on the chamber, else -1.
  std::vector<std::vector<std::vector<int>>> signs_;
  std::vector<std::vector<std::size_t>> degree_;
  std::vector<std::vector<std::uint64_t>> flip_mask_;  // [chamber][point]
  // Points whose weights form a basis of t* use exact coordinates instead of
  // term enumeration; inverse of the transposed weight matrix.
  std::vector<std::optional<RationalMatrix>> basis_inverse_;
  // Enumeration terms for the remaining points, [chamber][point].
  std::vector<std::vector<std::optional<PolarizedTerm>>> terms_;
};

enum class Verdict { Unknown, Excluded, Forced, Obstructed };
std::string to_string(Verdict v);

struct DegreeVerdict {
  Verdict status = Verdict::Unknown;
  std::optional<Integer> multiplicity;           // when forced
  std::vector<std::size_t> excluding_chambers;   // xi not in Gamma^{k,C}
  std::vector<std::size_t> forcing_chambers;     // forced with positive multiplicity
  std::vector<std::size_t> zero_forced_chambers; // forced with multiplicity 0
};

// Per-chamber evidence about membership of xi in Gamma^{k,C}.
struct RegionCertificate {
  std::size_t chamber = 0;
  std::size_t degree = 0;
  bool member = false;
  // member: the points whose regions contain xi, with certificates.
  std::vector<std::pair<std::size_t, MembershipCertificate>> witnesses;
  // non-member: every point of this degree (none contains xi).
  std::vector<std::size_t> checked_points;
};

struct ObstructionWitness {
  LatticeVector weight;
  std::size_t degree = 0;
  std::vector<std::size_t> conflicting_degrees;
  std::size_t forcing_chamber = 0;
  std::size_t excluding_chamber = 0;
  Integer forced_multiplicity;
  // True when the excluding chamber also forces the degree, but with multiplicity 0.
  bool excluded_by_zero_multiplicity = false;
  std::string reason;
  RegionCertificate forcing_member;                   // xi in Gamma^{k,C_f}
  std::vector<RegionCertificate> forcing_neighbours;  // xi not in Gamma^{k+-1,C_f}
  RegionCertificate excluding;                        // xi not in Gamma^{k,C_e} (or member, if zero-forced)
};

struct SupportVerdict {
  LatticeVector weight;
  std::vector<DegreeVerdict> degrees;
  std::optional<ObstructionWitness> obstruction;
};

RegionCertificate region_certificate(const MorseContext& ctx, std::size_t chamber, std::size_t degree,
                                     const LatticeVector& xi);
// Re-derives every membership claim of a certificate with gamma_contains.
bool certificate_valid(const MorseContext& ctx, const RegionCertificate& cert, const LatticeVector& xi);
bool witness_valid(const MorseContext& ctx, const ObstructionWitness& w);

SupportVerdict support_verdict(const MorseContext& ctx, const LatticeVector& xi);

// Chamber-free index coefficient; throws ChamberInconsistency if chambers disagree.
Integer index_coefficient(const MorseContext& ctx, const LatticeVector& xi);
FormalCharacter index_character(const MorseContext& ctx, std::span<const LatticeVector> window);

enum class ViolationKind { NegativeQuotient, Remainder, WeakExceeded, DegreeOutOfRange };
std::string to_string(ViolationKind k);

struct Violation {
  LatticeVector weight;
  std::size_t degree = 0;
  Integer value;
  ViolationKind kind = ViolationKind::NegativeQuotient;
};

struct StrongReport {
  bool holds = true;
  std::size_t chamber = 0;
  std::vector<LatticeVector> window;
  std::map<LatticeVector, std::vector<Integer>> quotient;  // Q coefficients per weight
  std::vector<Violation> violations;
};

struct WeakReport {
  bool holds = true;
  std::size_t chamber = 0;
  std::vector<LatticeVector> window;
  std::vector<Violation> violations;
};

StrongReport verify_strong(const MorseContext& ctx, std::size_t chamber, const MorsePolynomial& cohomology,
                           std::span<const LatticeVector> window);
WeakReport weak_check(const MorseContext& ctx, std::size_t chamber, const MorsePolynomial& cohomology,
                      std::span<const LatticeVector> window);

// Cohomology with |index| placed in degree 0 (positive index) or 1 (negative).
MorsePolynomial index_minimal_cohomology(const MorseContext& ctx, std::span<const LatticeVector> window);

// Scans candidates ordered by (L1 norm, lexicographic) and returns the first
// Forced/Excluded collision.
std::optional<ObstructionWitness> detect_obstruction(const MorseContext& ctx, std::span<const LatticeVector> candidates);
std::optional<ObstructionWitness> detect_obstruction(const MorseContext& ctx, long margin = 3);

struct ToricSupports {
  std::vector<LatticeVector> h0;
  std::vector<LatticeVector> top;
};

ToricSupports toric_h0_hn(const Fan& fan, const PLFunction& phi);

// Rank-2 cohomology from index coefficients and support verdicts.
MorsePolynomial toric_cohomology_2d(const Fan& fan, const PLFunction& phi, long margin = 3);
MorsePolynomial toric_cohomology_2d(const MorseContext& ctx, long margin = 3);

}  // namespace ehm
