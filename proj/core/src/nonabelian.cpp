#include <algorithm>
#include <set>

#include "ehm/errors.hpp"
#include "ehm/weyl.hpp"

namespace ehm {
namespace {

std::vector<LatticeVector> orbit_weights(const RootSystem& rs, const OrbitDatum& o) {
  std::set<LatticeVector> s(o.isotropy_roots.begin(), o.isotropy_roots.end());
  std::vector<LatticeVector> out;
  for (const auto& a : rs.positive_roots())
    if (!s.count(a)) out.push_back(a);
  out.insert(out.end(), o.extra_weights.begin(), o.extra_weights.end());
  return out;
}

void check_orbit(const RootSystem& rs, const OrbitDatum& o) {
  check_root_subset(rs, o.isotropy_roots);
  if (o.multiplicities.empty()) throw InputError("orbit " + o.label + " has no fiber multiplicities");
  for (const auto& [lam, m] : o.multiplicities) {
    if (lam.rank() != rs.rank()) throw InputError("orbit " + o.label + " has a weight of the wrong rank");
    if (m <= 0) throw InputError("orbit " + o.label + " has a non-positive multiplicity at " + lam.str());
  }
  for (const auto& w : o.extra_weights)
    if (w.rank() != rs.rank() || w.is_zero()) throw InputError("orbit " + o.label + " has an invalid extra weight");
}

std::vector<LatticeVector> sorted(std::vector<LatticeVector> v) {
  std::sort(v.begin(), v.end());
  return v;
}

Integer common_denominator(const std::map<LatticeVector, Rational>& m) {
  Integer d = 1;
  for (const auto& [lam, q] : m) d = lcm(d, Integer(q.get_den()));
  return d;
}

}  // namespace

Scenario expand_orbits(const RootSystem& rs, std::span<const OrbitDatum> orbits) {
  Scenario sc;
  sc.rank = rs.rank();
  const auto group = generate_weyl(rs);
  bool first = true;
  for (const auto& o : orbits) {
    check_orbit(rs, o);
    auto weights = orbit_weights(rs, o);
    if (first) {
      sc.dim = weights.size();
      first = false;
    } else if (weights.size() != sc.dim) {
      throw InputError("orbit " + o.label + " has " + std::to_string(weights.size()) + " weights, expected " +
                       std::to_string(sc.dim));
    }
    auto stab = subsystem_group(rs, o.isotropy_roots);
    const auto key = sorted(weights);
    for (const auto& u : stab) {
      std::vector<LatticeVector> moved;
      for (const auto& w : weights) {
        LatticeVector x(rs.rank());
        for (std::size_t i = 0; i < rs.rank(); ++i) x[i] = dot(u[i], w);
        moved.push_back(std::move(x));
      }
      if (sorted(moved) != key)
        throw InputError("weights of orbit " + o.label + " are not invariant under its isotropy Weyl group");
    }

    // Fiber at the representative: sum of Levi characters with rational weights.
    std::map<LatticeVector, Rational> fiber_q;
    for (const auto& [lam, m] : o.multiplicities) {
      FormalCharacter levi = levi_character(rs, o.isotropy_roots, lam);
      for (const auto& [mu, c] : levi.terms()) fiber_q[mu] += m * Rational(c);
    }
    FormalCharacter fiber(rs.rank());
    for (const auto& [mu, q] : fiber_q) {
      if (q.get_den() != 1) throw InputError("orbit " + o.label + " has a non-integral fiber at " + mu.str());
      fiber.add(mu, q.get_num());
    }

    // One point per coset w W_S, represented by the first element in length order.
    std::set<IntegerMatrix> covered;
    for (const auto& w : group) {
      if (covered.count(w.matrix)) continue;
      for (const auto& u : stab) {
        IntegerMatrix wu(rs.rank(), LatticeVector(rs.rank()));
        for (std::size_t i = 0; i < rs.rank(); ++i)
          for (std::size_t j = 0; j < rs.rank(); ++j) {
            Integer s = 0;
            for (std::size_t k = 0; k < rs.rank(); ++k) s += w.matrix[i][k] * u[k][j];
            wu[i][j] = s;
          }
        covered.insert(std::move(wu));
      }
      FixedPointDatum p;
      p.label = o.label + ":" + w.label();
      for (const auto& x : weights) p.isotropy_weights.push_back(w.apply(x));
      p.fiber = FormalCharacter(rs.rank());
      for (const auto& [mu, c] : fiber.terms()) p.fiber.add(w.apply(mu), c);
      sc.points.push_back(std::move(p));
    }
  }
  return sc;
}

NonabelianReport assemble_nonabelian(const RootSystem& rs, std::span<const OrbitDatum> orbits,
                                     const LatticeVector& chamber_vector, const RepresentationCohomology& cohomology,
                                     std::span<const LatticeVector> window) {
  if (chamber_vector.rank() != rs.rank()) throw InputError("chamber vector has the wrong rank");
  for (const auto& a : rs.simple_roots())
    if (dot(a, chamber_vector) <= 0)
      throw InputError("chamber vector " + chamber_vector.str() + " must pair positively with every simple root");

  NonabelianReport rep;
  rep.window.assign(window.begin(), window.end());
  rep.expanded = expand_orbits(rs, orbits);
  const std::size_t n = rep.expanded.dim;
  rep.dim = n;
  if (cohomology.size() > n + 1) {
    for (std::size_t k = n + 1; k < cohomology.size(); ++k)
      if (!cohomology[k].empty()) throw InputError("cohomology in degree " + std::to_string(k) + " exceeds dimension");
  }

  const auto group = generate_weyl(rs);
  const LatticeVector rho = rs.rho();

  // Left side: one polarized term per orbit and Weyl element, with the
  // multiplicities scaled to integers by the orbit's common denominator.
  struct Piece {
    int sign;
    Integer scale;
    PolarizedTerm term;
  };
  std::vector<Piece> pieces;
  for (const auto& o : orbits) {
    Integer denom = common_denominator(o.multiplicities);
    for (const auto& w : group) {
      std::size_t deg = relative_length(rs, w, o.isotropy_roots);
      LatticeVector shift(rs.rank());
      std::vector<LatticeVector> dens;
      for (const auto& x : o.extra_weights) {
        LatticeVector wx = w.apply(x);
        Integer pairing = dot(wx, chamber_vector);
        if (pairing == 0) throw PolarizationError("chamber vector is orthogonal to the weight " + wx.str());
        if (pairing < 0) {
          wx = -wx;
          shift -= wx;
          ++deg;
        }
        dens.push_back(std::move(wx));
      }
      FormalCharacter num(rs.rank());
      for (const auto& [lam, m] : o.multiplicities) {
        Rational scaled = m * Rational(denom);
        num.add(w.apply(lam + rho) - rho + shift, scaled.get_num());
      }
      pieces.push_back({det_s(rs, w, o.isotropy_roots), denom, PolarizedTerm(deg, num, std::move(dens), chamber_vector)});
    }
  }

  // Right side: sum_k t^k sum_w det(w) sum_Lambda m^k_Lambda e^{w(Lambda + rho) - rho}.
  std::map<LatticeVector, std::vector<Integer>> rhs_terms;
  for (std::size_t k = 0; k < cohomology.size() && k <= n; ++k)
    for (const auto& [lam, m] : cohomology[k]) {
      if (!rs.is_dominant(lam)) throw InputError("cohomology weight " + lam.str() + " is not dominant");
      for (const auto& w : group) {
        auto& slot = rhs_terms[w.apply(lam + rho) - rho];
        slot.resize(n + 1, 0);
        slot[k] += w.det * m;
      }
    }

  // Torus level: the expanded scenario with Weyl characters as cohomology.
  MorseContext ctx(rep.expanded);
  rep.chamber = ctx.locate(chamber_vector);
  MorsePolynomial torus_h(rs.rank(), n);
  for (std::size_t k = 0; k < cohomology.size() && k <= n; ++k)
    for (const auto& [lam, m] : cohomology[k]) torus_h[k] += m * weyl_character(rs, lam);
  rep.torus = verify_strong(ctx, rep.chamber, torus_h, window);

  FormalCharacter denominator = FormalCharacter::monomial(LatticeVector(rs.rank()));
  for (const auto& a : rs.positive_roots())
    denominator = denominator * (FormalCharacter::monomial(LatticeVector(rs.rank())) - FormalCharacter::monomial(-a));

  std::map<LatticeVector, std::vector<Integer>> torus_diff;
  auto torus_difference = [&](const LatticeVector& eta) -> const std::vector<Integer>& {
    auto it = torus_diff.find(eta);
    if (it != torus_diff.end()) return it->second;
    std::vector<Integer> d = ctx.lhs_profile(rep.chamber, eta);
    for (std::size_t k = 0; k <= n; ++k) d[k] -= torus_h[k].coefficient(eta);
    return torus_diff.emplace(eta, std::move(d)).first->second;
  };

  for (const auto& xi : window) {
    std::vector<Rational> lhs(n + 1, 0), rhs(n + 1, 0);
    for (const auto& p : pieces) {
      Integer c = p.term.coefficient(xi);
      if (c != 0) lhs[p.term.t_degree()] += Rational(p.sign * c) / Rational(p.scale);
    }
    if (auto it = rhs_terms.find(xi); it != rhs_terms.end())
      for (std::size_t k = 0; k <= n; ++k) rhs[k] = it->second[k];

    Rational alternating = 0;
    for (std::size_t k = 0; k <= n; ++k) alternating += (k % 2 ? -1 : 1) * (lhs[k] - rhs[k]);
    if (alternating != 0) rep.fixed_point_failures.push_back(xi);

    std::vector<Rational> expected(n + 1, 0);
    for (const auto& [gamma, c] : denominator.terms()) {
      const auto& d = torus_difference(xi - gamma);
      for (std::size_t k = 0; k <= n; ++k) expected[k] += Rational(c * d[k]);
    }
    for (std::size_t k = 0; k <= n; ++k)
      if (lhs[k] - rhs[k] != expected[k]) {
        rep.torus_mismatches.push_back(xi);
        break;
      }

    auto nonzero = [](const std::vector<Rational>& v) {
      return std::any_of(v.begin(), v.end(), [](const Rational& q) { return q != 0; });
    };
    if (nonzero(lhs)) rep.lhs.emplace(xi, std::move(lhs));
    if (nonzero(rhs)) rep.rhs.emplace(xi, std::move(rhs));
  }
  return rep;
}

}  // namespace ehm
