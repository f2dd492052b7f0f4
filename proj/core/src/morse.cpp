#include "ehm/morse.hpp"

#include <algorithm>

#include "ehm/errors.hpp"

namespace ehm {

GammaRegion gamma_region(const FixedPointDatum& datum, const Chamber& chamber, std::size_t point_index) {
  GammaRegion g;
  g.apexes = datum.fiber.support();
  g.point_label = datum.label;
  g.point = point_index;
  g.chamber = chamber.id;
  for (const auto& w : datum.isotropy_weights) {
    Polarized p = polarize(w, chamber);
    g.generators.push_back({-p.weight, p.flipped});
    g.degree += p.flipped;
  }
  return g;
}

std::optional<MembershipCertificate> gamma_membership(const GammaRegion& region, const LatticeVector& xi) {
  const std::size_t n = region.generators.size();
  for (const auto& apex : region.apexes) {
    if (apex.rank() != xi.rank()) throw InputError("weight " + xi.str() + " has the wrong rank for this region");
    if (n == 0) {
      if (apex == xi) return MembershipCertificate{apex, {}};
      continue;
    }
    LinearSystem sys(n);
    for (std::size_t i = 0; i < xi.rank(); ++i) {
      RationalVector row(n);
      for (std::size_t k = 0; k < n; ++k) row[k] = region.generators[k].direction[i];
      sys.add_eq(row, Rational(xi[i] - apex[i]));
    }
    for (std::size_t k = 0; k < n; ++k) {
      RationalVector e(n, 0);
      e[k] = 1;
      if (region.generators[k].strict)
        sys.add_gt(e, 0);
      else
        sys.add_ge(e, 0);
    }
    if (auto r = feasible(sys)) return MembershipCertificate{apex, std::move(*r)};
  }
  return std::nullopt;
}

bool gamma_contains(const GammaRegion& region, const LatticeVector& xi) {
  return gamma_membership(region, xi).has_value();
}

bool certificate_valid(const GammaRegion& region, const LatticeVector& xi, const MembershipCertificate& cert) {
  if (std::find(region.apexes.begin(), region.apexes.end(), cert.apex) == region.apexes.end()) return false;
  if (cert.coefficients.size() != region.generators.size()) return false;
  RationalVector sum = to_rational(cert.apex);
  for (std::size_t k = 0; k < region.generators.size(); ++k) {
    const Rational& r = cert.coefficients[k];
    if (r < 0 || (region.generators[k].strict && r == 0)) return false;
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += r * region.generators[k].direction[i];
  }
  return sum == to_rational(xi);
}

MorseContext::MorseContext(Scenario scenario) : scenario_(std::move(scenario)) {
  scenario_.check();
  if (scenario_.dim > 64) throw InputError("complex dimension above 64 is not supported");
  arrangement_ = Arrangement(scenario_);
  chambers_ = enumerate_chambers(arrangement_);
  for (std::size_t c = 0; c < chambers_.size(); ++c) opposite_.push_back(opposite_chamber(chambers_, c));

  const std::size_t np = scenario_.points.size();
  for (const auto& p : scenario_.points) {
    std::optional<RationalMatrix> inv;
    if (p.isotropy_weights.size() == scenario_.rank) inv = inverse(RationalMatrix::from_rows(p.isotropy_weights).transpose());
    basis_inverse_.push_back(std::move(inv));
  }

  signs_.assign(chambers_.size(), std::vector<std::vector<int>>(np));
  degree_.assign(chambers_.size(), std::vector<std::size_t>(np, 0));
  flip_mask_.assign(chambers_.size(), std::vector<std::uint64_t>(np, 0));
  terms_.assign(chambers_.size(), std::vector<std::optional<PolarizedTerm>>(np));
  for (std::size_t c = 0; c < chambers_.size(); ++c) {
    for (std::size_t p = 0; p < np; ++p) {
      const auto& ws = scenario_.points[p].isotropy_weights;
      for (std::size_t k = 0; k < ws.size(); ++k) {
        auto [h, orient] = arrangement_.locate(ws[k]);
        int s = chambers_[c].signs[h] * orient;
        signs_[c][p].push_back(s);
        if (s < 0) {
          ++degree_[c][p];
          flip_mask_[c][p] |= std::uint64_t{1} << k;
        }
      }
      if (!basis_inverse_[p]) terms_[c][p] = term(c, p);
    }
  }
}

std::size_t MorseContext::polarizing_index(std::size_t chamber, std::size_t point) const {
  return degree_.at(chamber).at(point);
}

GammaRegion MorseContext::region(std::size_t chamber, std::size_t point) const {
  return gamma_region(scenario_.points.at(point), chambers_.at(chamber), point);
}

PolarizedTerm MorseContext::term(std::size_t chamber, std::size_t point) const {
  const auto& p = scenario_.points.at(point);
  const auto& ch = chambers_.at(chamber);
  std::vector<LatticeVector> dens;
  LatticeVector shift(scenario_.rank);
  std::size_t deg = 0;
  for (const auto& w : p.isotropy_weights) {
    Polarized pol = polarize(w, ch);
    if (pol.flipped) {
      shift -= pol.weight;
      ++deg;
    }
    dens.push_back(pol.weight);
  }
  return PolarizedTerm(deg, p.fiber.shifted(shift), std::move(dens), ch.representative);
}

MorseContext::Coords MorseContext::coords_for(const LatticeVector& xi) const {
  if (xi.rank() != scenario_.rank) throw InputError("weight " + xi.str() + " has the wrong rank");
  Coords out;
  out.per_point.resize(scenario_.points.size());
  for (std::size_t p = 0; p < scenario_.points.size(); ++p) {
    if (!basis_inverse_[p]) continue;
    for (const auto& [apex, mult] : scenario_.points[p].fiber.terms()) {
      RationalVector c = *basis_inverse_[p] * to_rational(apex - xi);
      ApexCoords a;
      a.integral = is_integral(c);
      for (std::size_t k = 0; k < c.size(); ++k)
        if (c[k] < 0) a.flip_mask |= std::uint64_t{1} << k;
      out.per_point[p].push_back(a);
    }
  }
  return out;
}

bool MorseContext::contains_with(const Coords& c, std::size_t chamber, std::size_t point,
                                 const LatticeVector& xi) const {
  if (basis_inverse_[point]) {
    for (const auto& a : c.per_point[point])
      if (a.flip_mask == flip_mask_[chamber][point]) return true;
    return false;
  }
  return gamma_contains(region(chamber, point), xi);
}

std::vector<bool> MorseContext::membership_with(const Coords& c, std::size_t chamber, const LatticeVector& xi) const {
  std::vector<bool> in(scenario_.dim + 1, false);
  for (std::size_t p = 0; p < scenario_.points.size(); ++p) {
    std::size_t k = degree_[chamber][p];
    if (!in[k] && contains_with(c, chamber, p, xi)) in[k] = true;
  }
  return in;
}

std::vector<Integer> MorseContext::profile_with(const Coords& c, std::size_t chamber, const LatticeVector& xi) const {
  std::vector<Integer> prof(scenario_.dim + 1, 0);
  for (std::size_t p = 0; p < scenario_.points.size(); ++p) {
    std::size_t k = degree_[chamber][p];
    if (basis_inverse_[p]) {
      std::size_t i = 0;
      for (const auto& [apex, mult] : scenario_.points[p].fiber.terms()) {
        const auto& a = c.per_point[p][i++];
        if (a.integral && a.flip_mask == flip_mask_[chamber][p]) prof[k] += mult;
      }
    } else {
      prof[k] += terms_[chamber][p]->coefficient(xi);
    }
  }
  return prof;
}

bool MorseContext::contains(std::size_t chamber, std::size_t point, const LatticeVector& xi) const {
  return contains_with(coords_for(xi), chamber, point, xi);
}

std::vector<bool> MorseContext::degree_membership(std::size_t chamber, const LatticeVector& xi) const {
  return membership_with(coords_for(xi), chamber, xi);
}

std::vector<Integer> MorseContext::lhs_profile(std::size_t chamber, const LatticeVector& xi) const {
  return profile_with(coords_for(xi), chamber, xi);
}

namespace {

Integer alternating(const std::vector<Integer>& p) {
  Integer s = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (k % 2)
      s -= p[k];
    else
      s += p[k];
  }
  return s;
}

}  // namespace

Integer MorseContext::index_in(std::size_t chamber, const LatticeVector& xi) const {
  return alternating(lhs_profile(chamber, xi));
}

std::vector<std::vector<bool>> MorseContext::membership_table(const LatticeVector& xi) const {
  Coords c = coords_for(xi);
  std::vector<std::vector<bool>> t;
  t.reserve(chambers_.size());
  for (std::size_t ch = 0; ch < chambers_.size(); ++ch) t.push_back(membership_with(c, ch, xi));
  return t;
}

std::vector<std::vector<Integer>> MorseContext::profile_table(const LatticeVector& xi) const {
  Coords c = coords_for(xi);
  std::vector<std::vector<Integer>> t;
  t.reserve(chambers_.size());
  for (std::size_t ch = 0; ch < chambers_.size(); ++ch) t.push_back(profile_with(c, ch, xi));
  return t;
}

std::vector<LatticeVector> MorseContext::default_window(long margin) const {
  const std::size_t r = scenario_.rank;
  if (scenario_.points.empty() || r == 0) return {};
  LatticeVector lo = scenario_.points.front().fiber.terms().begin()->first, hi = lo;
  for (const auto& p : scenario_.points)
    for (const auto& [w, m] : p.fiber.terms())
      for (std::size_t i = 0; i < r; ++i) {
        if (w[i] < lo[i]) lo[i] = w[i];
        if (w[i] > hi[i]) hi[i] = w[i];
      }
  for (std::size_t i = 0; i < r; ++i) {
    lo[i] -= margin;
    hi[i] += margin;
  }
  std::vector<LatticeVector> out;
  LatticeVector cur = lo;
  while (true) {
    out.push_back(cur);
    std::size_t i = r;
    while (i > 0) {
      --i;
      if (cur[i] < hi[i]) {
        ++cur[i];
        for (std::size_t j = i + 1; j < r; ++j) cur[j] = lo[j];
        break;
      }
      if (i == 0) return out;
    }
  }
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Unknown: return "unknown";
    case Verdict::Excluded: return "excluded";
    case Verdict::Forced: return "forced";
    case Verdict::Obstructed: return "obstructed";
  }
  return "?";
}

std::string to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::NegativeQuotient: return "negative-Q";
    case ViolationKind::Remainder: return "remainder";
    case ViolationKind::WeakExceeded: return "weak-exceeded";
    case ViolationKind::DegreeOutOfRange: return "degree-out-of-range";
  }
  return "?";
}

RegionCertificate region_certificate(const MorseContext& ctx, std::size_t chamber, std::size_t degree,
                                     const LatticeVector& xi) {
  RegionCertificate cert;
  cert.chamber = chamber;
  cert.degree = degree;
  for (std::size_t p = 0; p < ctx.scenario().points.size(); ++p) {
    if (ctx.polarizing_index(chamber, p) != degree) continue;
    cert.checked_points.push_back(p);
    if (auto m = gamma_membership(ctx.region(chamber, p), xi)) cert.witnesses.emplace_back(p, std::move(*m));
  }
  cert.member = !cert.witnesses.empty();
  return cert;
}

bool certificate_valid(const MorseContext& ctx, const RegionCertificate& cert, const LatticeVector& xi) {
  for (std::size_t p = 0; p < ctx.scenario().points.size(); ++p) {
    if (ctx.polarizing_index(cert.chamber, p) != cert.degree) continue;
    bool listed = std::find(cert.checked_points.begin(), cert.checked_points.end(), p) != cert.checked_points.end();
    if (!listed) return false;
  }
  for (const auto& [p, m] : cert.witnesses) {
    GammaRegion g = ctx.region(cert.chamber, p);
    if (g.degree != cert.degree || !certificate_valid(g, xi, m)) return false;
  }
  if (cert.member) return !cert.witnesses.empty();
  for (auto p : cert.checked_points)
    if (gamma_contains(ctx.region(cert.chamber, p), xi)) return false;
  return true;
}

bool witness_valid(const MorseContext& ctx, const ObstructionWitness& w) {
  if (!certificate_valid(ctx, w.forcing_member, w.weight) || !w.forcing_member.member) return false;
  for (const auto& n : w.forcing_neighbours)
    if (!certificate_valid(ctx, n, w.weight) || n.member) return false;
  if (!certificate_valid(ctx, w.excluding, w.weight)) return false;
  if (!w.excluded_by_zero_multiplicity && w.reason.rfind("not in", 0) == 0 && w.excluding.member) return false;
  return true;
}

SupportVerdict support_verdict(const MorseContext& ctx, const LatticeVector& xi) {
  const std::size_t n = ctx.dim();
  auto memb = ctx.membership_table(xi);
  auto prof = ctx.profile_table(xi);
  SupportVerdict sv;
  sv.weight = xi;
  sv.degrees.resize(n + 1);
  std::vector<std::size_t> conflicts;
  for (std::size_t k = 0; k <= n; ++k) {
    DegreeVerdict& d = sv.degrees[k];
    bool mult_clash = false;
    for (std::size_t c = 0; c < memb.size(); ++c) {
      if (!memb[c][k]) {
        d.excluding_chambers.push_back(c);
        continue;
      }
      bool below = k > 0 && memb[c][k - 1];
      bool above = k < n && memb[c][k + 1];
      if (below || above) continue;
      const Integer& m = prof[c][k];
      if (m == 0) {
        d.zero_forced_chambers.push_back(c);
        continue;
      }
      if (!d.multiplicity)
        d.multiplicity = m;
      else if (*d.multiplicity != m)
        mult_clash = true;
      d.forcing_chambers.push_back(c);
    }
    if (!d.forcing_chambers.empty()) {
      bool clash = mult_clash || !d.excluding_chambers.empty() || !d.zero_forced_chambers.empty();
      d.status = clash ? Verdict::Obstructed : Verdict::Forced;
      if (clash) conflicts.push_back(k);
    } else if (!d.excluding_chambers.empty() || !d.zero_forced_chambers.empty()) {
      d.status = Verdict::Excluded;
    }
  }
  if (conflicts.empty()) return sv;

  ObstructionWitness w;
  w.weight = xi;
  w.conflicting_degrees = conflicts;
  // A region exclusion is the strongest evidence, then a zero forcing, then a multiplicity clash.
  auto rank_of = [&](std::size_t k) {
    const DegreeVerdict& dk = sv.degrees[k];
    return !dk.excluding_chambers.empty() ? 0 : (!dk.zero_forced_chambers.empty() ? 1 : 2);
  };
  w.degree = *std::min_element(conflicts.begin(), conflicts.end(),
                               [&](std::size_t a, std::size_t b) { return rank_of(a) < rank_of(b); });
  const DegreeVerdict& d = sv.degrees[w.degree];
  // Prefer a forcing chamber whose opposite chamber excludes.
  w.forcing_chamber = d.forcing_chambers.front();
  for (auto c : d.forcing_chambers) {
    auto o = ctx.opposite(c);
    if (std::find(d.excluding_chambers.begin(), d.excluding_chambers.end(), o) != d.excluding_chambers.end()) {
      w.forcing_chamber = c;
      break;
    }
  }
  w.forced_multiplicity = prof[w.forcing_chamber][w.degree];
  auto opp = ctx.opposite(w.forcing_chamber);
  if (!d.excluding_chambers.empty()) {
    bool opp_excludes =
        std::find(d.excluding_chambers.begin(), d.excluding_chambers.end(), opp) != d.excluding_chambers.end();
    w.excluding_chamber = opp_excludes ? opp : d.excluding_chambers.front();
    w.reason = "not in the degree-" + std::to_string(w.degree) + " region";
  } else if (!d.zero_forced_chambers.empty()) {
    w.excluding_chamber = d.zero_forced_chambers.front();
    w.excluded_by_zero_multiplicity = true;
    w.reason = "forced with multiplicity 0";
  } else {
    for (auto c : d.forcing_chambers)
      if (prof[c][w.degree] != w.forced_multiplicity) {
        w.excluding_chamber = c;
        break;
      }
    w.reason = "forced with multiplicity " + prof[w.excluding_chamber][w.degree].get_str();
  }
  w.forcing_member = region_certificate(ctx, w.forcing_chamber, w.degree, xi);
  if (w.degree > 0) w.forcing_neighbours.push_back(region_certificate(ctx, w.forcing_chamber, w.degree - 1, xi));
  if (w.degree < n) w.forcing_neighbours.push_back(region_certificate(ctx, w.forcing_chamber, w.degree + 1, xi));
  w.excluding = region_certificate(ctx, w.excluding_chamber, w.degree, xi);
  if (!witness_valid(ctx, w))
    throw ConsistencyError("obstruction certificate at " + xi.str() + " does not re-verify");
  sv.obstruction = std::move(w);
  return sv;
}

Integer index_coefficient(const MorseContext& ctx, const LatticeVector& xi) {
  auto prof = ctx.profile_table(xi);
  if (prof.empty()) return 0;
  Integer first = alternating(prof.front());
  for (std::size_t c = 1; c < prof.size(); ++c) {
    Integer v = alternating(prof[c]);
    if (v != first)
      throw ChamberInconsistency("index at " + xi.str() + " is " + first.get_str() + " in chamber 0 but " +
                                 v.get_str() + " in chamber " + std::to_string(c));
  }
  return first;
}

FormalCharacter index_character(const MorseContext& ctx, std::span<const LatticeVector> window) {
  FormalCharacter ch(ctx.rank());
  for (const auto& xi : window) ch.add(xi, index_coefficient(ctx, xi));
  return ch;
}

namespace {

void check_cohomology(const MorseContext& ctx, const MorsePolynomial& h) {
  if (h.rank() != ctx.rank()) throw InputError("cohomology has the wrong rank");
}

}  // namespace

StrongReport verify_strong(const MorseContext& ctx, std::size_t chamber, const MorsePolynomial& cohomology,
                           std::span<const LatticeVector> window) {
  check_cohomology(ctx, cohomology);
  StrongReport rep;
  rep.chamber = chamber;
  rep.window.assign(window.begin(), window.end());
  const std::size_t n = ctx.dim();
  for (std::size_t k = n + 1; k <= cohomology.degree(); ++k)
    for (const auto& [w, m] : cohomology[k].terms())
      rep.violations.push_back({w, k, m, ViolationKind::DegreeOutOfRange});
  for (const auto& xi : window) {
    std::vector<Integer> p = ctx.lhs_profile(chamber, xi);
    for (std::size_t k = 0; k <= std::min(n, cohomology.degree()); ++k) p[k] -= cohomology[k].coefficient(xi);
    Division d = divide_one_plus_t(p);
    if (!d.exact) rep.violations.push_back({xi, n, d.remainder, ViolationKind::Remainder});
    for (std::size_t k = 0; k < d.quotient.size(); ++k)
      if (d.quotient[k] < 0) rep.violations.push_back({xi, k, d.quotient[k], ViolationKind::NegativeQuotient});
    if (std::any_of(d.quotient.begin(), d.quotient.end(), [](const Integer& q) { return q != 0; }))
      rep.quotient.emplace(xi, std::move(d.quotient));
  }
  rep.holds = rep.violations.empty();
  return rep;
}

WeakReport weak_check(const MorseContext& ctx, std::size_t chamber, const MorsePolynomial& cohomology,
                      std::span<const LatticeVector> window) {
  check_cohomology(ctx, cohomology);
  WeakReport rep;
  rep.chamber = chamber;
  rep.window.assign(window.begin(), window.end());
  const std::size_t n = ctx.dim();
  for (std::size_t k = n + 1; k <= cohomology.degree(); ++k)
    for (const auto& [w, m] : cohomology[k].terms())
      rep.violations.push_back({w, k, m, ViolationKind::DegreeOutOfRange});
  for (const auto& xi : window) {
    std::vector<Integer> p = ctx.lhs_profile(chamber, xi);
    for (std::size_t k = 0; k <= std::min(n, cohomology.degree()); ++k) {
      Integer h = cohomology[k].coefficient(xi);
      if (h > p[k]) rep.violations.push_back({xi, k, h - p[k], ViolationKind::WeakExceeded});
    }
  }
  rep.holds = rep.violations.empty();
  return rep;
}

MorsePolynomial index_minimal_cohomology(const MorseContext& ctx, std::span<const LatticeVector> window) {
  MorsePolynomial h(ctx.rank(), ctx.dim());
  for (const auto& xi : window) {
    Integer c = index_coefficient(ctx, xi);
    if (c > 0)
      h[0].add(xi, c);
    else if (c < 0 && ctx.dim() >= 1)
      h[1].add(xi, -c);
  }
  return h;
}

std::optional<ObstructionWitness> detect_obstruction(const MorseContext& ctx, std::span<const LatticeVector> candidates) {
  std::vector<LatticeVector> order(candidates.begin(), candidates.end());
  auto l1 = [](const LatticeVector& v) {
    Integer s = 0;
    for (const auto& c : v) s += abs(c);
    return s;
  };
  std::stable_sort(order.begin(), order.end(), [&](const LatticeVector& a, const LatticeVector& b) {
    Integer la = l1(a), lb = l1(b);
    if (la != lb) return la < lb;
    return a < b;
  });
  for (const auto& xi : order) {
    SupportVerdict v = support_verdict(ctx, xi);
    if (v.obstruction) return v.obstruction;
  }
  return std::nullopt;
}

std::optional<ObstructionWitness> detect_obstruction(const MorseContext& ctx, long margin) {
  auto window = ctx.default_window(margin);
  return detect_obstruction(ctx, window);
}

ToricSupports toric_h0_hn(const Fan& fan, const PLFunction& phi) {
  return {lattice_points(gamma_zero_system(fan, phi)), lattice_points(gamma_top_system(fan, phi))};
}

MorsePolynomial toric_cohomology_2d(const MorseContext& ctx, long margin) {
  if (ctx.rank() != 2 || ctx.dim() != 2) throw InputError("toric cohomology reconstruction needs rank-2 data");
  MorsePolynomial h(2, 2);
  for (const auto& xi : ctx.default_window(margin)) {
    Integer c = index_coefficient(ctx, xi);
    if (c == 0) continue;
    SupportVerdict v = support_verdict(ctx, xi);
    std::vector<std::size_t> open;
    for (std::size_t k = 0; k <= 2; ++k)
      if (v.degrees[k].status != Verdict::Excluded) open.push_back(k);
    if (open.size() != 1)
      throw AssignmentAmbiguous("weight " + xi.str() + " with index " + c.get_str() + " fits " +
                                std::to_string(open.size()) + " degrees");
    std::size_t k = open.front();
    Integer signed_c = k % 2 ? Integer(-c) : c;
    if (signed_c <= 0)
      throw AssignmentAmbiguous("weight " + xi.str() + " has index " + c.get_str() + " of the wrong sign for degree " +
                                std::to_string(k));
    h[k].add(xi, signed_c);
  }
  return h;
}

MorsePolynomial toric_cohomology_2d(const Fan& fan, const PLFunction& phi, long margin) {
  return toric_cohomology_2d(MorseContext(fixed_point_data(fan, phi)), margin);
}

}  // namespace ehm
