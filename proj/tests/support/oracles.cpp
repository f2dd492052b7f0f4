#include "oracles.hpp"

#include <algorithm>
#include <numeric>

namespace oracle {

Rational determinant(const std::vector<std::vector<Rational>>& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Rational total = 0;
  do {
    Rational term = 1;
    for (std::size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    total += inversions % 2 ? -term : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

FormalCharacter truncated_series(const FormalCharacter& numerator, const std::vector<LatticeVector>& denominators,
                                 long bound) {
  FormalCharacter acc = numerator;
  for (const auto& lam : denominators) {
    FormalCharacter geo(lam.rank());
    LatticeVector step(lam.rank());
    for (long m = 0; m <= bound; ++m) {
      geo.add(step, 1);
      step -= lam;
    }
    acc = acc * geo;
  }
  return acc;
}

namespace {

struct PolarizedPoint {
  FormalCharacter numerator;
  std::vector<LatticeVector> denominators;
  std::size_t flips = 0;
};

PolarizedPoint polarize_point(const ehm::FixedPointDatum& p, const LatticeVector& theta, std::size_t rank) {
  PolarizedPoint out{FormalCharacter(rank), {}, 0};
  LatticeVector shift(rank);
  for (const auto& w : p.isotropy_weights) {
    if (ehm::dot(w, theta) < 0) {
      out.denominators.push_back(-w);
      shift += w;
      ++out.flips;
    } else {
      out.denominators.push_back(w);
    }
  }
  for (const auto& [mu, m] : p.fiber.terms()) out.numerator.add(mu + shift, m);
  return out;
}

}  // namespace

std::vector<Integer> morse_profile(const ehm::Scenario& sc, const LatticeVector& theta, const LatticeVector& xi,
                                   long bound) {
  std::vector<Integer> out(sc.dim + 1, 0);
  for (const auto& p : sc.points) {
    PolarizedPoint pp = polarize_point(p, theta, sc.rank);
    out[pp.flips] += truncated_series(pp.numerator, pp.denominators, bound).coefficient(xi);
  }
  return out;
}

std::vector<FormalCharacter> morse_series(const ehm::Scenario& sc, const LatticeVector& theta, long bound) {
  std::vector<FormalCharacter> out(sc.dim + 1, FormalCharacter(sc.rank));
  for (const auto& p : sc.points) {
    PolarizedPoint pp = polarize_point(p, theta, sc.rank);
    out[pp.flips] += truncated_series(pp.numerator, pp.denominators, bound);
  }
  return out;
}

std::optional<std::vector<Integer>> quotient_by_one_plus_t(const std::vector<Integer>& p) {
  if (p.empty()) return std::vector<Integer>{};
  // Work down from the leading coefficient: q_{k-1} = p_k - q_k.
  std::vector<Integer> q(p.size() - 1, 0);
  Integer carry = 0;
  for (std::size_t k = p.size() - 1; k >= 1; --k) {
    q[k - 1] = p[k] - carry;
    carry = q[k - 1];
  }
  if (p[0] != carry) return std::nullopt;
  return q;
}

Integer top_pairing(const ehm::Scenario& sc, const LatticeVector& theta) {
  bool first = true;
  Integer best = 0;
  for (const auto& p : sc.points) {
    PolarizedPoint pp = polarize_point(p, theta, sc.rank);
    for (const auto& [mu, m] : pp.numerator.terms()) {
      Integer s = ehm::dot(mu, theta);
      if (first || s > best) best = s;
      first = false;
    }
  }
  return best;
}

namespace {

std::optional<std::vector<Rational>> gauss_solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

}  // namespace

bool vertex_feasible(const LinearSystem& system) {
  const std::size_t d = system.dimension();
  // Rows over (x, s): normal . x - [strict] s >= offset, plus -1 <= s <= 1.
  struct Row {
    std::vector<Rational> a;
    Rational b;
  };
  std::vector<Row> rows;
  bool strict = false;
  for (const auto& c : system.constraints()) {
    std::vector<Rational> a(c.normal.begin(), c.normal.end());
    a.push_back(c.relation == ehm::Relation::Greater ? Rational(-1) : Rational(0));
    strict = strict || c.relation == ehm::Relation::Greater;
    rows.push_back({a, c.offset});
    if (c.relation == ehm::Relation::Equal) {
      std::vector<Rational> neg;
      for (const auto& v : a) neg.push_back(-v);
      rows.push_back({neg, -c.offset});
    }
  }
  std::vector<Rational> up(d + 1, 0), down(d + 1, 0);
  up[d] = -1;
  down[d] = 1;
  rows.push_back({up, -1});
  rows.push_back({down, -1});

  const std::size_t m = rows.size(), k = d + 1;
  std::vector<bool> pick(m, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(std::min(k, m)), true);
  std::optional<Rational> best;
  do {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (std::size_t i = 0; i < m; ++i)
      if (pick[i]) {
        a.push_back(rows[i].a);
        b.push_back(rows[i].b);
      }
    if (a.size() != k) continue;
    auto y = gauss_solve(a, b);
    if (!y) continue;
    bool ok = true;
    for (const auto& r : rows) {
      Rational v = 0;
      for (std::size_t j = 0; j <= d; ++j) v += r.a[j] * (*y)[j];
      if (v < r.b) {
        ok = false;
        break;
      }
    }
    if (ok && (!best || (*y)[d] > *best)) best = (*y)[d];
  } while (std::prev_permutation(pick.begin(), pick.end()));
  if (!best) return false;
  return strict ? *best > 0 : true;
}

std::optional<std::vector<Rational>> grid_point(const LinearSystem& system, long range, long den) {
  const std::size_t d = system.dimension();
  std::vector<long> idx(d, -range * den);
  for (;;) {
    std::vector<Rational> x;
    for (auto i : idx) x.emplace_back(i, den);
    for (auto& q : x) q.canonicalize();
    if (system.satisfied_by(x)) return x;
    std::size_t i = 0;
    while (i < d && idx[i] == range * den) {
      idx[i] = -range * den;
      ++i;
    }
    if (i == d) return std::nullopt;
    ++idx[i];
  }
}

std::vector<LatticeVector> box(std::size_t rank, long lo, long hi) {
  std::vector<LatticeVector> out;
  LatticeVector cur(rank);
  for (std::size_t i = 0; i < rank; ++i) cur[i] = lo;
  for (;;) {
    out.push_back(cur);
    std::size_t i = rank;
    while (i > 0 && cur[i - 1] == hi) {
      cur[i - 1] = lo;
      --i;
    }
    if (i == 0) break;
    cur[i - 1] += 1;
  }
  return out;
}

std::vector<LatticeVector> box_points(const LinearSystem& system, long range) {
  std::vector<LatticeVector> out;
  for (const auto& p : box(system.dimension(), -range, range))
    if (system.satisfied_by(ehm::to_rational(p))) out.push_back(p);
  return out;
}

}  // namespace oracle
