#pragma once

// Toric manifolds as fans with piecewise linear functions, and the fixed-point
// data (isotropy weights plus fiber characters) that every Morse computation
// consumes.

#include <optional>
#include <string>
#include <vector>

#include "ehm/charring.hpp"
#include "ehm/lattice.hpp"

namespace ehm {

// Rays are primitive and distinct; every maximal cone lists `rank` ray indices.
class Fan {
 public:
  Fan() = default;
  Fan(std::size_t rank, std::vector<LatticeVector> rays, std::vector<std::vector<std::size_t>> max_cones,
      std::vector<std::string> cone_labels = {}, std::vector<std::string> ray_labels = {});

  std::size_t rank() const { return rank_; }
  const std::vector<LatticeVector>& rays() const { return rays_; }
  const std::vector<std::vector<std::size_t>>& max_cones() const { return max_cones_; }
  const std::vector<std::string>& cone_labels() const { return cone_labels_; }
  const std::vector<std::string>& ray_labels() const { return ray_labels_; }
  std::string ray_label(std::size_t i) const;
  std::string cone_label(std::size_t cone) const;

  // Rows are the cone's ray generators.
  IntegerMatrix generator_matrix(std::size_t cone) const;
  bool cone_contains_ray(std::size_t cone, std::size_t ray) const;

 private:
  std::size_t rank_ = 0;
  std::vector<LatticeVector> rays_;
  std::vector<std::vector<std::size_t>> max_cones_;
  std::vector<std::string> cone_labels_;
  std::vector<std::string> ray_labels_;
};

class PLFunction {
 public:
  PLFunction() = default;
  explicit PLFunction(std::vector<Integer> ray_values) : values_(std::move(ray_values)) {}
  static PLFunction from_longs(const std::vector<long>& values);
  static PLFunction zero(const Fan& fan);

  const std::vector<Integer>& values() const { return values_; }
  const Integer& operator[](std::size_t i) const { return values_.at(i); }
  std::size_t size() const { return values_.size(); }

  // phi + xi (a global linear functional), as ray values.
  PLFunction plus_linear(const Fan& fan, const LatticeVector& xi) const;

 private:
  std::vector<Integer> values_;
};

struct ValidationReport {
  bool simplicial = true;
  bool smooth = true;
  bool complete = true;
  std::size_t cone_count = 0;
  std::vector<std::size_t> failing_cones;  // cones that are singular or non-unimodular
  std::vector<std::string> problems;

  bool ok() const { return simplicial && smooth && complete; }
};

ValidationReport validate(const Fan& fan);

// The linear functional m with <m, v> = phi(v) on the rays of the cone.
LatticeVector cone_weight(const Fan& fan, const PLFunction& phi, std::size_t cone);

// Coefficients c over the ray values such that sum_v c_v phi(v) > 0 is the
// strict convexity condition of phi on ray `ray` relative to `cone`
// (that is, <m_cone, ray> - phi(ray) > 0).
RationalVector wall_inequality(const Fan& fan, std::size_t cone, std::size_t ray);

// phi(v) < <m_sigma, v> for every max cone sigma and ray v outside it.
// This orientation makes the standard CP^n function convex exactly for r >= 0.
bool strictly_convex(const Fan& fan, const PLFunction& phi);
bool convex(const Fan& fan, const PLFunction& phi);

// Strict convexity conditions across every wall (pair of max cones sharing a
// facet), as a system over the ray values.
LinearSystem strict_convexity_system(const Fan& fan);
bool admits_strictly_convex(const Fan& fan);

struct FixedPointDatum {
  std::string label;
  std::vector<LatticeVector> isotropy_weights;
  FormalCharacter fiber;
};

struct Scenario {
  std::size_t rank = 0;
  std::size_t dim = 0;
  std::vector<FixedPointDatum> points;

  // Throws InputError on rank/dimension mismatch, zero weights, or a fiber
  // that is not a genuine (nonnegative, nonempty) character.
  void check() const;
};

Scenario fixed_point_data(const Fan& fan, const PLFunction& phi);

// The polytope intersection over sigma of (m_sigma + sigma^dual).
// Requires phi convex (non-strictly); throws NotConvex otherwise.
LinearSystem moment_polytope(const Fan& fan, const PLFunction& phi);

// Intersection over sigma of (m_sigma + dual(sigma)): <x, v> >= phi(v) for all rays.
LinearSystem gamma_zero_system(const Fan& fan, const PLFunction& phi);
// Intersection over sigma of (m_sigma - interior(dual(sigma))): <x, v> < phi(v) for all rays.
LinearSystem gamma_top_system(const Fan& fan, const PLFunction& phi);

}  // namespace ehm
