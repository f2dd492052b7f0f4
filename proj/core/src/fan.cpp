#include "ehm/fan.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "ehm/errors.hpp"

namespace ehm {

Fan::Fan(std::size_t rank, std::vector<LatticeVector> rays, std::vector<std::vector<std::size_t>> max_cones,
         std::vector<std::string> cone_labels, std::vector<std::string> ray_labels)
    : rank_(rank),
      rays_(std::move(rays)),
      max_cones_(std::move(max_cones)),
      cone_labels_(std::move(cone_labels)),
      ray_labels_(std::move(ray_labels)) {
  if (rank_ == 0) throw InputError("fan rank must be positive");
  if (!cone_labels_.empty() && cone_labels_.size() != max_cones_.size())
    throw InputError("fan has " + std::to_string(max_cones_.size()) + " cones but " +
                     std::to_string(cone_labels_.size()) + " cone labels");
  if (!ray_labels_.empty() && ray_labels_.size() != rays_.size())
    throw InputError("fan has " + std::to_string(rays_.size()) + " rays but " + std::to_string(ray_labels_.size()) +
                     " ray labels");
  std::set<LatticeVector> seen;
  for (const auto& v : rays_) {
    if (v.rank() != rank_) throw InputError("ray " + v.str() + " does not have rank " + std::to_string(rank_));
    if (v.is_zero()) throw InputError("fan contains the zero ray");
    if (primitive(v) != v) throw InputError("ray " + v.str() + " is not primitive");
    if (!seen.insert(v).second) throw InputError("ray " + v.str() + " is listed twice");
  }
  for (const auto& cone : max_cones_) {
    if (cone.empty()) throw InputError("fan contains an empty cone");
    std::set<std::size_t> idx;
    for (auto i : cone) {
      if (i >= rays_.size()) throw InputError("cone refers to ray index " + std::to_string(i) + " out of range");
      if (!idx.insert(i).second) throw InputError("cone lists ray " + std::to_string(i) + " twice");
    }
  }
}

std::string Fan::ray_label(std::size_t i) const {
  if (i < ray_labels_.size()) return ray_labels_[i];
  return "v" + std::to_string(i + 1);
}

std::string Fan::cone_label(std::size_t cone) const {
  if (cone < cone_labels_.size()) return cone_labels_[cone];
  if (ray_labels_.empty()) return "p" + std::to_string(cone + 1);
  std::string s;
  for (auto i : max_cones_.at(cone)) s += ray_labels_[i];
  return s;
}

IntegerMatrix Fan::generator_matrix(std::size_t cone) const {
  IntegerMatrix m;
  for (auto i : max_cones_.at(cone)) m.push_back(rays_[i]);
  return m;
}

bool Fan::cone_contains_ray(std::size_t cone, std::size_t ray) const {
  const auto& c = max_cones_.at(cone);
  return std::find(c.begin(), c.end(), ray) != c.end();
}

PLFunction PLFunction::from_longs(const std::vector<long>& values) {
  std::vector<Integer> v(values.begin(), values.end());
  return PLFunction(std::move(v));
}

PLFunction PLFunction::zero(const Fan& fan) { return PLFunction(std::vector<Integer>(fan.rays().size(), 0)); }

PLFunction PLFunction::plus_linear(const Fan& fan, const LatticeVector& xi) const {
  std::vector<Integer> v = values_;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += dot(xi, fan.rays()[i]);
  return PLFunction(std::move(v));
}

namespace {

void check_pl(const Fan& fan, const PLFunction& phi) {
  if (phi.size() != fan.rays().size())
    throw InputError("PL function has " + std::to_string(phi.size()) + " values for " +
                     std::to_string(fan.rays().size()) + " rays");
}

// Rational m with <m, v> = phi(v) on the cone's rays.
RationalVector cone_functional(const Fan& fan, const PLFunction& phi, std::size_t cone) {
  const auto& c = fan.max_cones().at(cone);
  if (c.size() != fan.rank()) throw InputError("cone " + fan.cone_label(cone) + " is not simplicial");
  RationalMatrix v = RationalMatrix::from_rows(fan.generator_matrix(cone));
  RationalVector rhs;
  for (auto i : c) rhs.emplace_back(phi[i]);
  auto m = rational_solve(v, rhs);
  if (!m) throw InputError("cone " + fan.cone_label(cone) + " is not full-dimensional");
  return *m;
}

// Coordinates of `ray` in the cone's generator basis.
RationalVector ray_coordinates(const Fan& fan, std::size_t cone, const LatticeVector& ray) {
  RationalMatrix vt = RationalMatrix::from_rows(fan.generator_matrix(cone)).transpose();
  auto c = rational_solve(vt, to_rational(ray));
  if (!c) throw InputError("cone " + fan.cone_label(cone) + " is not full-dimensional");
  return *c;
}

}  // namespace

ValidationReport validate(const Fan& fan) {
  ValidationReport rep;
  rep.cone_count = fan.max_cones().size();
  const std::size_t r = fan.rank();
  std::vector<bool> usable(fan.max_cones().size(), true);
  for (std::size_t s = 0; s < fan.max_cones().size(); ++s) {
    const auto& cone = fan.max_cones()[s];
    if (cone.size() != r) {
      rep.simplicial = false;
      rep.smooth = false;
      usable[s] = false;
      rep.failing_cones.push_back(s);
      rep.problems.push_back("cone " + fan.cone_label(s) + " has " + std::to_string(cone.size()) + " rays");
      continue;
    }
    Rational det = determinant(RationalMatrix::from_rows(fan.generator_matrix(s)));
    if (det == 0) {
      rep.simplicial = false;
      rep.smooth = false;
      usable[s] = false;
      rep.failing_cones.push_back(s);
      rep.problems.push_back("cone " + fan.cone_label(s) + " is not full-dimensional");
    } else if (det != 1 && det != -1) {
      rep.smooth = false;
      rep.failing_cones.push_back(s);
      rep.problems.push_back("cone " + fan.cone_label(s) + " has determinant " + det.get_str());
    }
  }
  if (!rep.simplicial) {
    rep.complete = false;
    rep.problems.push_back("completeness not checked for a non-simplicial fan");
    return rep;
  }

  // Facet pairing: every facet shared by exactly two cones lying on opposite sides.
  std::map<std::vector<std::size_t>, std::vector<std::pair<std::size_t, std::size_t>>> facets;
  for (std::size_t s = 0; s < fan.max_cones().size(); ++s) {
    const auto& cone = fan.max_cones()[s];
    for (std::size_t drop = 0; drop < cone.size(); ++drop) {
      std::vector<std::size_t> f;
      for (std::size_t j = 0; j < cone.size(); ++j)
        if (j != drop) f.push_back(cone[j]);
      std::sort(f.begin(), f.end());
      facets[f].emplace_back(s, cone[drop]);
    }
  }
  for (const auto& [f, owners] : facets) {
    std::string name = "{";
    for (std::size_t j = 0; j < f.size(); ++j) name += (j ? "," : "") + fan.ray_label(f[j]);
    name += "}";
    if (owners.size() != 2) {
      rep.complete = false;
      rep.problems.push_back("facet " + name + " lies in " + std::to_string(owners.size()) + " max cones");
      continue;
    }
    // Opposite rays must be separated by the facet hyperplane.
    const auto& [s0, v0] = owners[0];
    RationalVector c = ray_coordinates(fan, s0, fan.rays()[owners[1].second]);
    std::size_t pos = static_cast<std::size_t>(
        std::find(fan.max_cones()[s0].begin(), fan.max_cones()[s0].end(), v0) - fan.max_cones()[s0].begin());
    if (c[pos] >= 0) {
      rep.complete = false;
      rep.problems.push_back("cones across facet " + name + " overlap");
    }
  }

  // Random directions must each lie in some cone.
  std::mt19937 rng(20240917u);
  std::uniform_int_distribution<long> coord(-97, 97);
  for (int trial = 0; trial < 20; ++trial) {
    LatticeVector x(r);
    for (std::size_t i = 0; i < r; ++i) x[i] = coord(rng);
    if (x.is_zero()) continue;
    bool covered = false;
    for (std::size_t s = 0; s < fan.max_cones().size() && !covered; ++s) {
      RationalVector c = ray_coordinates(fan, s, x);
      covered = std::all_of(c.begin(), c.end(), [](const Rational& q) { return q >= 0; });
    }
    if (!covered) {
      rep.complete = false;
      rep.problems.push_back("direction " + x.str() + " is not covered by any cone");
    }
  }
  return rep;
}

LatticeVector cone_weight(const Fan& fan, const PLFunction& phi, std::size_t cone) {
  check_pl(fan, phi);
  RationalVector m = cone_functional(fan, phi, cone);
  if (!is_integral(m))
    throw NonIntegralWeight("PL function restricted to cone " + fan.cone_label(cone) + " is " + to_string(m) +
                            ", which is not integral");
  return to_lattice(m);
}

RationalVector wall_inequality(const Fan& fan, std::size_t cone, std::size_t ray) {
  if (ray >= fan.rays().size()) throw InputError("ray index out of range");
  if (fan.cone_contains_ray(cone, ray)) throw InputError("wall inequality needs a ray outside the cone");
  RationalVector coeff(fan.rays().size(), 0);
  RationalVector c = ray_coordinates(fan, cone, fan.rays()[ray]);
  const auto& idx = fan.max_cones()[cone];
  for (std::size_t j = 0; j < idx.size(); ++j) coeff[idx[j]] += c[j];
  coeff[ray] -= 1;
  return coeff;
}

namespace {

bool convex_impl(const Fan& fan, const PLFunction& phi, bool strict) {
  check_pl(fan, phi);
  for (std::size_t s = 0; s < fan.max_cones().size(); ++s) {
    RationalVector m = cone_functional(fan, phi, s);
    for (std::size_t v = 0; v < fan.rays().size(); ++v) {
      if (fan.cone_contains_ray(s, v)) continue;
      Rational gap = dot(m, fan.rays()[v]) - phi[v];
      if (strict ? gap <= 0 : gap < 0) return false;
    }
  }
  return true;
}

}  // namespace

bool strictly_convex(const Fan& fan, const PLFunction& phi) { return convex_impl(fan, phi, true); }
bool convex(const Fan& fan, const PLFunction& phi) { return convex_impl(fan, phi, false); }

LinearSystem strict_convexity_system(const Fan& fan) {
  LinearSystem sys(fan.rays().size());
  std::map<std::vector<std::size_t>, std::vector<std::pair<std::size_t, std::size_t>>> facets;
  for (std::size_t s = 0; s < fan.max_cones().size(); ++s) {
    const auto& cone = fan.max_cones()[s];
    for (std::size_t drop = 0; drop < cone.size(); ++drop) {
      std::vector<std::size_t> f;
      for (std::size_t j = 0; j < cone.size(); ++j)
        if (j != drop) f.push_back(cone[j]);
      std::sort(f.begin(), f.end());
      facets[f].emplace_back(s, cone[drop]);
    }
  }
  for (const auto& [f, owners] : facets) {
    if (owners.size() != 2) continue;
    sys.add_gt(wall_inequality(fan, owners[0].first, owners[1].second), 0);
    sys.add_gt(wall_inequality(fan, owners[1].first, owners[0].second), 0);
  }
  return sys;
}

bool admits_strictly_convex(const Fan& fan) {
  if (fan.max_cones().empty()) return false;
  LinearSystem sys = strict_convexity_system(fan);
  // Convexity is invariant under adding linear functionals, so normalize phi
  // to vanish on the first cone.
  for (auto i : fan.max_cones().front()) {
    RationalVector e(fan.rays().size(), 0);
    e[i] = 1;
    sys.add_eq(e, 0);
  }
  return feasible(sys).has_value();
}

void Scenario::check() const {
  for (const auto& p : points) {
    if (p.isotropy_weights.size() != dim)
      throw InputError("fixed point " + p.label + " has " + std::to_string(p.isotropy_weights.size()) +
                       " isotropy weights, expected " + std::to_string(dim));
    for (const auto& w : p.isotropy_weights) {
      if (w.rank() != rank) throw InputError("fixed point " + p.label + " has a weight of the wrong rank");
      if (w.is_zero()) throw InputError("fixed point " + p.label + " has a zero isotropy weight");
    }
    if (p.fiber.rank() != rank) throw InputError("fixed point " + p.label + " has a fiber of the wrong rank");
    if (p.fiber.empty() || !p.fiber.nonnegative())
      throw InputError("fixed point " + p.label + " needs a nonempty nonnegative fiber character");
  }
}

Scenario fixed_point_data(const Fan& fan, const PLFunction& phi) {
  check_pl(fan, phi);
  Scenario sc;
  sc.rank = fan.rank();
  sc.dim = fan.rank();
  for (std::size_t s = 0; s < fan.max_cones().size(); ++s) {
    if (fan.max_cones()[s].size() != fan.rank()) throw InputError("cone " + fan.cone_label(s) + " is not simplicial");
    IntegerMatrix inv = unimodular_inverse(fan.generator_matrix(s));
    FixedPointDatum p;
    p.label = fan.cone_label(s);
    for (std::size_t j = 0; j < fan.rank(); ++j) {
      LatticeVector u(fan.rank());
      for (std::size_t i = 0; i < fan.rank(); ++i) u[i] = -inv[i][j];
      p.isotropy_weights.push_back(std::move(u));
    }
    p.fiber = FormalCharacter::monomial(cone_weight(fan, phi, s));
    sc.points.push_back(std::move(p));
  }
  return sc;
}

LinearSystem gamma_zero_system(const Fan& fan, const PLFunction& phi) {
  check_pl(fan, phi);
  LinearSystem sys(fan.rank());
  for (std::size_t v = 0; v < fan.rays().size(); ++v) sys.add_ge(to_rational(fan.rays()[v]), phi[v]);
  return sys;
}

LinearSystem gamma_top_system(const Fan& fan, const PLFunction& phi) {
  check_pl(fan, phi);
  LinearSystem sys(fan.rank());
  for (std::size_t v = 0; v < fan.rays().size(); ++v) sys.add_lt(to_rational(fan.rays()[v]), phi[v]);
  return sys;
}

LinearSystem moment_polytope(const Fan& fan, const PLFunction& phi) {
  if (!convex(fan, phi)) throw NotConvex("PL function is not convex on this fan");
  return gamma_zero_system(fan, phi);
}

}  // namespace ehm
