#include "ehm/chambers.hpp"

#include <algorithm>
#include <set>

#include "ehm/errors.hpp"

namespace ehm {
namespace {

LatticeVector canonical_normal(const LatticeVector& w) {
  LatticeVector n = primitive(w);
  for (const auto& c : n) {
    if (c == 0) continue;
    if (c < 0) n = -n;
    break;
  }
  return n;
}

int sign_of(const Integer& x) { return sgn(x) > 0 ? 1 : (sgn(x) < 0 ? -1 : 0); }

}  // namespace

Arrangement::Arrangement(const Scenario& scenario) : rank_(scenario.rank) {
  std::set<LatticeVector> ns;
  for (const auto& p : scenario.points)
    for (const auto& w : p.isotropy_weights) {
      if (w.is_zero()) throw InputError("fixed point " + p.label + " has a zero isotropy weight");
      ns.insert(canonical_normal(w));
    }
  normals_.assign(ns.begin(), ns.end());
}

std::pair<std::size_t, int> Arrangement::locate(const LatticeVector& weight) const {
  if (weight.is_zero()) throw PolarizationError("zero weight has no hyperplane");
  LatticeVector n = canonical_normal(weight);
  auto it = std::lower_bound(normals_.begin(), normals_.end(), n);
  if (it == normals_.end() || *it != n)
    throw PolarizationError("hyperplane of " + weight.str() + " is not part of the arrangement");
  int orient = primitive(weight) == n ? 1 : -1;
  return {static_cast<std::size_t>(it - normals_.begin()), orient};
}

std::vector<Chamber> enumerate_chambers(const Arrangement& arrangement) {
  const std::size_t r = arrangement.rank();
  struct Region {
    std::vector<int> signs;
    RationalVector witness;
  };
  std::vector<Region> regions{{{}, RationalVector(r, 0)}};
  bool first = true;
  for (const auto& n : arrangement.normals()) {
    RationalVector nr = to_rational(n);
    std::vector<Region> next;
    next.reserve(regions.size() * 2);
    for (auto& reg : regions) {
      // The current witness already certifies one side (unless it sits on the
      // new hyperplane, which only happens before any cut).
      Rational at = first ? Rational(0) : dot(nr, reg.witness);
      for (int side : {1, -1}) {
        if (sgn(at) == side) {
          Region child = reg;
          child.signs.push_back(side);
          next.push_back(std::move(child));
          continue;
        }
        LinearSystem sys(r);
        for (std::size_t h = 0; h < reg.signs.size(); ++h) {
          RationalVector a = to_rational(arrangement.normals()[h]);
          if (reg.signs[h] < 0)
            for (auto& q : a) q = -q;
          sys.add_gt(a, 0);
        }
        RationalVector a = nr;
        if (side < 0)
          for (auto& q : a) q = -q;
        sys.add_gt(a, 0);
        if (auto w = feasible(sys)) {
          Region child{reg.signs, std::move(*w)};
          child.signs.push_back(side);
          next.push_back(std::move(child));
        }
      }
    }
    regions = std::move(next);
    first = false;
  }

  std::vector<Chamber> out;
  out.reserve(regions.size());
  for (auto& reg : regions) {
    Chamber c;
    c.signs = std::move(reg.signs);
    c.representative = arrangement.size() == 0 ? LatticeVector(r) : primitive(reg.witness);
    for (std::size_t h = 0; h < arrangement.size(); ++h)
      if (sign_of(dot(arrangement.normals()[h], c.representative)) != c.signs[h])
        throw ConsistencyError("chamber representative " + c.representative.str() + " left its chamber");
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const Chamber& a, const Chamber& b) { return a.signs > b.signs; });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].id = i;
  return out;
}

std::vector<Chamber> enumerate_chambers(const Scenario& scenario) { return enumerate_chambers(Arrangement(scenario)); }

Polarized polarize(const LatticeVector& lambda, const Chamber& chamber) {
  int s = sign_of(dot(lambda, chamber.representative));
  if (s == 0)
    throw PolarizationError("weight " + lambda.str() + " vanishes on chamber representative " +
                            chamber.representative.str());
  return s > 0 ? Polarized{lambda, false} : Polarized{-lambda, true};
}

std::size_t polarizing_index(const FixedPointDatum& datum, const Chamber& chamber) {
  std::size_t n = 0;
  for (const auto& w : datum.isotropy_weights) n += polarize(w, chamber).flipped;
  return n;
}

std::size_t locate_chamber(const std::vector<Chamber>& chambers, const Arrangement& arrangement,
                           const LatticeVector& theta) {
  if (theta.rank() != arrangement.rank())
    throw InputError("chamber vector " + theta.str() + " has the wrong rank");
  std::vector<int> signs;
  for (const auto& n : arrangement.normals()) {
    int s = sign_of(dot(n, theta));
    if (s == 0) throw InputError("vector " + theta.str() + " lies on the wall orthogonal to " + n.str());
    signs.push_back(s);
  }
  for (const auto& c : chambers)
    if (c.signs == signs) return c.id;
  throw ConsistencyError("no enumerated chamber contains " + theta.str());
}

std::size_t opposite_chamber(const std::vector<Chamber>& chambers, std::size_t index) {
  std::vector<int> neg = chambers.at(index).signs;
  for (auto& s : neg) s = -s;
  for (const auto& c : chambers)
    if (c.signs == neg) return c.id;
  throw ConsistencyError("chamber " + std::to_string(index) + " has no opposite");
}

}  // namespace ehm
