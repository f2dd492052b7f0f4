// Fourier-Motzkin elimination with Chernikov's history bound.
//
// Rows are kept in the form a . y >= b. Strict rows are handled by one extra
// variable s: a . y - s >= b together with s <= 1, and the system is feasible
// iff the projected range of s reaches above zero.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>

#include "ehm/errors.hpp"
#include "ehm/lattice.hpp"

namespace ehm {
namespace {

struct Row {
  RationalVector a;
  Rational b;
  std::vector<std::uint64_t> hist;
};

std::size_t popcount(const std::vector<std::uint64_t>& bits) {
  std::size_t n = 0;
  for (auto w : bits) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<std::uint64_t> unite(const std::vector<std::uint64_t>& x, const std::vector<std::uint64_t>& y) {
  std::vector<std::uint64_t> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] | y[i];
  return out;
}

bool is_zero_row(const Row& r) {
  return std::all_of(r.a.begin(), r.a.end(), [](const Rational& q) { return q == 0; });
}

void normalize(Row& r) {
  for (const auto& q : r.a) {
    if (q == 0) continue;
    Rational s = abs(q);
    if (s != 1) {
      for (auto& x : r.a) x /= s;
      r.b /= s;
    }
    return;
  }
}

// Keeps only the tightest row for every normalized left-hand side.
void dedup(std::vector<Row>& rows) {
  std::map<RationalVector, std::size_t> seen;
  std::vector<Row> out;
  out.reserve(rows.size());
  for (auto& r : rows) {
    auto [it, inserted] = seen.emplace(r.a, out.size());
    if (inserted) {
      out.push_back(std::move(r));
      continue;
    }
    Row& kept = out[it->second];
    if (r.b > kept.b || (r.b == kept.b && popcount(r.hist) < popcount(kept.hist))) kept = std::move(r);
  }
  rows = std::move(out);
}

struct Elimination {
  bool infeasible = false;
  std::vector<Row> rows;
  // (variable, rows present just before it was eliminated)
  std::vector<std::pair<std::size_t, std::vector<Row>>> stages;
};

Elimination eliminate(std::vector<Row> rows, std::vector<std::size_t> vars, bool keep_stages) {
  Elimination out;
  auto drop_trivial = [&](std::vector<Row>& rs) {
    std::vector<Row> kept;
    kept.reserve(rs.size());
    for (auto& r : rs) {
      if (is_zero_row(r)) {
        if (r.b > 0) out.infeasible = true;
        continue;
      }
      kept.push_back(std::move(r));
    }
    rs = std::move(kept);
  };
  for (auto& r : rows) normalize(r);
  drop_trivial(rows);
  dedup(rows);
  if (out.infeasible) return out;

  std::size_t step = 0;
  while (!vars.empty()) {
    // Cheapest variable first.
    std::size_t best = 0;
    long best_cost = 0;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      long pos = 0, neg = 0;
      for (const auto& r : rows) {
        int s = sgn(r.a[vars[i]]);
        pos += s > 0;
        neg += s < 0;
      }
      long cost = pos * neg - pos - neg;
      if (i == 0 || cost < best_cost) {
        best = i;
        best_cost = cost;
      }
    }
    std::size_t v = vars[best];
    vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(best));
    ++step;
    if (keep_stages) out.stages.emplace_back(v, rows);

    std::vector<Row> next, pos, neg;
    for (auto& r : rows) {
      int s = sgn(r.a[v]);
      if (s == 0)
        next.push_back(std::move(r));
      else
        (s > 0 ? pos : neg).push_back(std::move(r));
    }
    for (const auto& p : pos) {
      for (const auto& n : neg) {
        auto hist = unite(p.hist, n.hist);
        if (popcount(hist) > step + 1) continue;
        Row c;
        c.a.resize(p.a.size());
        Rational fp = -n.a[v];
        const Rational& fn = p.a[v];
        for (std::size_t j = 0; j < p.a.size(); ++j) c.a[j] = fp * p.a[j] + fn * n.a[j];
        c.a[v] = 0;
        c.b = fp * p.b + fn * n.b;
        c.hist = std::move(hist);
        normalize(c);
        next.push_back(std::move(c));
      }
    }
    drop_trivial(next);
    if (out.infeasible) return out;
    dedup(next);
    rows = std::move(next);
  }
  out.rows = std::move(rows);
  return out;
}

// Interval of variable v implied by rows, given values for every other variable
// that appears with a nonzero coefficient.
Interval bounds_for(const std::vector<Row>& rows, std::size_t v, const RationalVector& values) {
  Interval iv;
  for (const auto& r : rows) {
    Rational rest = r.b;
    for (std::size_t j = 0; j < r.a.size(); ++j)
      if (j != v && r.a[j] != 0) rest -= r.a[j] * values[j];
    int s = sgn(r.a[v]);
    if (s == 0) {
      if (rest > 0) iv.empty = true;
      continue;
    }
    Rational bound = rest / r.a[v];
    if (s > 0) {
      if (!iv.lower || bound > *iv.lower) iv.lower = bound;
    } else {
      if (!iv.upper || bound < *iv.upper) iv.upper = bound;
    }
  }
  if (iv.lower && iv.upper && *iv.lower > *iv.upper) iv.empty = true;
  return iv;
}

Rational pick(const Interval& iv) {
  if (iv.lower && iv.upper) {
    Integer lo = ceil(*iv.lower), hi = floor(*iv.upper);
    if (lo <= hi) return Rational(std::clamp(Integer(0), lo, hi));
    return (*iv.lower + *iv.upper) / 2;
  }
  if (iv.lower) return Rational(ceil(*iv.lower));
  if (iv.upper) return Rational(floor(*iv.upper));
  return 0;
}

std::vector<std::uint64_t> single_bit(std::size_t i, std::size_t total) {
  std::vector<std::uint64_t> bits((total + 63) / 64, 0);
  bits[i / 64] |= std::uint64_t{1} << (i % 64);
  return bits;
}

// Affine parametrization of the solution space of the equalities:
// x[pivot_i] = rhs_i - sum_f coef(i, f) x[f] over free variables f.
struct EqualityReduction {
  bool inconsistent = false;
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> free_vars;
  RationalMatrix reduced;  // rows: pivot rows, columns: n + 1 (last = rhs)
};

EqualityReduction reduce_equalities(const LinearSystem& system) {
  std::size_t n = system.dimension();
  std::vector<const LinearConstraint*> eqs;
  for (const auto& c : system.constraints())
    if (c.relation == Relation::Equal) eqs.push_back(&c);
  EqualityReduction red;
  RationalMatrix m(eqs.size(), n + 1);
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = eqs[i]->normal[j];
    m(i, n) = eqs[i]->offset;
  }
  // Row-reduce on the variable columns only.
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j <= n; ++j) std::swap(m(p, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (std::size_t j = 0; j <= n; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (std::size_t j = 0; j <= n; ++j) m(i, j) -= f * m(r, j);
    }
    red.pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m.rows(); ++i)
    if (m(i, n) != 0) red.inconsistent = true;
  std::vector<bool> is_pivot(n, false);
  for (auto p : red.pivots) is_pivot[p] = true;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) red.free_vars.push_back(j);
  red.reduced = RationalMatrix(r, n + 1);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j <= n; ++j) red.reduced(i, j) = m(i, j);
  return red;
}

}  // namespace

std::optional<RationalVector> feasible(const LinearSystem& system) {
  const std::size_t n = system.dimension();
  EqualityReduction red = reduce_equalities(system);
  if (red.inconsistent) return std::nullopt;

  const std::size_t f = red.free_vars.size();
  const bool strict = system.has_strict();
  const std::size_t nv = f + (strict ? 1 : 0);
  const std::size_t s_var = f;

  std::vector<const LinearConstraint*> ineqs;
  for (const auto& c : system.constraints())
    if (c.relation != Relation::Equal) ineqs.push_back(&c);
  const std::size_t total = ineqs.size() + (strict ? 1 : 0);

  std::vector<Row> rows;
  rows.reserve(total);
  for (std::size_t k = 0; k < ineqs.size(); ++k) {
    const auto& c = *ineqs[k];
    Row row;
    row.a.assign(nv, 0);
    row.b = c.offset;
    for (std::size_t i = 0; i < red.pivots.size(); ++i) {
      const Rational& ap = c.normal[red.pivots[i]];
      if (ap == 0) continue;
      row.b -= ap * red.reduced(i, n);
      for (std::size_t t = 0; t < f; ++t) row.a[t] -= ap * red.reduced(i, red.free_vars[t]);
    }
    for (std::size_t t = 0; t < f; ++t) row.a[t] += c.normal[red.free_vars[t]];
    if (c.relation == Relation::Greater) row.a[s_var] = -1;
    row.hist = single_bit(k, total);
    rows.push_back(std::move(row));
  }
  if (strict) {
    Row cap;
    cap.a.assign(nv, 0);
    cap.a[s_var] = -1;
    cap.b = -1;
    cap.hist = single_bit(ineqs.size(), total);
    rows.push_back(std::move(cap));
  }

  std::vector<std::size_t> vars(f);
  for (std::size_t t = 0; t < f; ++t) vars[t] = t;
  Elimination el = eliminate(std::move(rows), vars, true);
  if (el.infeasible) return std::nullopt;

  RationalVector val(nv, 0);
  if (strict) {
    Interval iv = bounds_for(el.rows, s_var, val);
    if (iv.empty || !iv.upper || *iv.upper <= 0) return std::nullopt;
    val[s_var] = *iv.upper;
  } else {
    for (const auto& r : el.rows)
      if (r.b > 0) return std::nullopt;
  }
  for (auto it = el.stages.rbegin(); it != el.stages.rend(); ++it) {
    Interval iv = bounds_for(it->second, it->first, val);
    if (iv.empty) throw ConsistencyError("Fourier-Motzkin back-substitution hit an empty interval");
    val[it->first] = pick(iv);
  }

  RationalVector x(n, 0);
  for (std::size_t t = 0; t < f; ++t) x[red.free_vars[t]] = val[t];
  for (std::size_t i = 0; i < red.pivots.size(); ++i) {
    Rational v = red.reduced(i, n);
    for (std::size_t t = 0; t < f; ++t) v -= red.reduced(i, red.free_vars[t]) * val[t];
    x[red.pivots[i]] = v;
  }
  if (!system.satisfied_by(x)) throw ConsistencyError("Fourier-Motzkin witness fails the original system");
  return x;
}

Interval project_bounds(const LinearSystem& system, std::size_t var) {
  const std::size_t n = system.dimension();
  if (var >= n) throw InputError("project_bounds: variable out of range");
  std::size_t total = 0;
  for (const auto& c : system.constraints()) total += c.relation == Relation::Equal ? 2 : 1;
  std::vector<Row> rows;
  rows.reserve(total);
  std::size_t k = 0;
  for (const auto& c : system.constraints()) {
    Row r{c.normal, c.offset, single_bit(k++, total)};
    if (c.relation == Relation::Equal) {
      Row neg = r;
      for (auto& q : neg.a) q = -q;
      neg.b = -neg.b;
      neg.hist = single_bit(k++, total);
      rows.push_back(std::move(neg));
    }
    rows.push_back(std::move(r));
  }
  std::vector<std::size_t> vars;
  for (std::size_t j = 0; j < n; ++j)
    if (j != var) vars.push_back(j);
  Elimination el = eliminate(std::move(rows), vars, false);
  if (el.infeasible) return Interval{true, std::nullopt, std::nullopt};
  return bounds_for(el.rows, var, RationalVector(n, 0));
}

namespace {

void enumerate(const LinearSystem& system, LatticeVector& prefix, std::size_t depth,
               std::vector<LatticeVector>& out) {
  if (system.dimension() == 0) {
    if (system.satisfied_by({})) out.push_back(prefix);
    return;
  }
  Interval iv = project_bounds(system, 0);
  if (iv.empty) return;
  if (!iv.lower || !iv.upper) throw Unbounded("lattice point enumeration over an unbounded region");
  for (Integer v = ceil(*iv.lower); v <= floor(*iv.upper); ++v) {
    prefix[depth] = v;
    enumerate(system.substitute(0, Rational(v)), prefix, depth + 1, out);
  }
}

}  // namespace

std::vector<LatticeVector> lattice_points(const LinearSystem& system) {
  if (!feasible(system)) return {};
  for (std::size_t j = 0; j < system.dimension(); ++j) {
    Interval iv = project_bounds(system, j);
    if (!iv.lower || !iv.upper) throw Unbounded("lattice point enumeration over an unbounded region");
  }
  std::vector<LatticeVector> out;
  LatticeVector prefix(system.dimension());
  enumerate(system, prefix, 0, out);
  return out;
}

}  // namespace ehm
