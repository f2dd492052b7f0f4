#include "ehm/weyl.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <numeric>
#include <set>

#include "ehm/errors.hpp"

namespace ehm {
namespace {

LatticeVector mat_apply(const IntegerMatrix& m, const LatticeVector& v) {
  LatticeVector out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = dot(m[i], v);
  return out;
}

IntegerMatrix mat_mul(const IntegerMatrix& a, const IntegerMatrix& b) {
  const std::size_t n = a.size();
  IntegerMatrix out(n, LatticeVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Integer s = 0;
      for (std::size_t k = 0; k < n; ++k) s += a[i][k] * b[k][j];
      out[i][j] = s;
    }
  return out;
}

IntegerMatrix mat_identity(std::size_t n) {
  IntegerMatrix out(n, LatticeVector(n));
  for (std::size_t i = 0; i < n; ++i) out[i][i] = 1;
  return out;
}

// s_alpha(v) = v - <v, alpha^vee> alpha, as a matrix on weight coordinates.
IntegerMatrix reflection_matrix(const RootSystem& rs, const LatticeVector& alpha) {
  const std::size_t n = rs.rank();
  IntegerMatrix cols;
  for (std::size_t j = 0; j < n; ++j) {
    LatticeVector e(n);
    e[j] = 1;
    Rational c = rs.coroot_pairing(e, alpha);
    if (c.get_den() != 1) throw ConsistencyError("non-integral coroot pairing");
    cols.push_back(e - Integer(c.get_num()) * alpha);
  }
  IntegerMatrix out(n, LatticeVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = cols[j][i];
  return out;
}

std::vector<LatticeVector> positive_part(const RootSystem& rs, std::span<const LatticeVector> delta) {
  std::vector<LatticeVector> out;
  for (const auto& a : delta)
    if (rs.is_positive(a)) out.push_back(a);
  return out;
}

bool in_positive_root_cone(const RootSystem& rs, const LatticeVector& v) {
  for (const auto& c : rs.root_coordinates(v))
    if (c < 0 || c.get_den() != 1) return false;
  return true;
}

}  // namespace

std::string to_string(RootType t) {
  switch (t) {
    case RootType::A1: return "A1";
    case RootType::A2: return "A2";
    case RootType::A1xA1: return "A1xA1";
    case RootType::B2: return "B2";
    case RootType::G2: return "G2";
    case RootType::A3: return "A3";
  }
  return "?";
}

RootType parse_root_type(const std::string& name) {
  std::string up;
  for (char c : name) up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  if (up == "A1") return RootType::A1;
  if (up == "A2") return RootType::A2;
  if (up == "A1XA1") return RootType::A1xA1;
  if (up == "B2") return RootType::B2;
  if (up == "G2") return RootType::G2;
  if (up == "A3") return RootType::A3;
  throw UnsupportedType("unsupported root system type '" + name + "'");
}

RootSystem RootSystem::of_type(RootType type) {
  RootSystem rs;
  rs.type_ = type;
  switch (type) {
    case RootType::A1:
      rs.cartan_ = {{2}};
      rs.half_lengths_ = {1};
      break;
    case RootType::A2:
      rs.cartan_ = {{2, -1}, {-1, 2}};
      rs.half_lengths_ = {1, 1};
      break;
    case RootType::A1xA1:
      rs.cartan_ = {{2, 0}, {0, 2}};
      rs.half_lengths_ = {1, 1};
      break;
    case RootType::B2:
      rs.cartan_ = {{2, -2}, {-1, 2}};
      rs.half_lengths_ = {2, 1};
      break;
    case RootType::G2:
      rs.cartan_ = {{2, -1}, {-3, 2}};
      rs.half_lengths_ = {1, 3};
      break;
    case RootType::A3:
      rs.cartan_ = {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
      rs.half_lengths_ = {1, 1, 1};
      break;
  }
  rs.rank_ = rs.cartan_.size();
  for (const auto& row : rs.cartan_) rs.simple_.push_back(LatticeVector::from_longs(row));
  auto inv = inverse(RationalMatrix::from_rows(rs.simple_).transpose());
  if (!inv) throw ConsistencyError("singular Cartan matrix");
  rs.to_root_coords_ = *inv;

  // Roots are the Weyl orbit of the simple roots.
  std::set<LatticeVector> all(rs.simple_.begin(), rs.simple_.end());
  std::deque<LatticeVector> queue(rs.simple_.begin(), rs.simple_.end());
  while (!queue.empty()) {
    LatticeVector a = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < rs.rank_; ++i) {
      LatticeVector b = rs.reflect(i, a);
      if (all.insert(b).second) queue.push_back(b);
    }
  }
  for (const auto& a : all) {
    bool pos = true;
    for (const auto& c : rs.root_coordinates(a)) pos = pos && c >= 0;
    if (pos) rs.positive_.push_back(a);
  }
  std::sort(rs.positive_.begin(), rs.positive_.end(), [&](const LatticeVector& a, const LatticeVector& b) {
    auto ca = rs.root_coordinates(a), cb = rs.root_coordinates(b);
    Rational ha = std::accumulate(ca.begin(), ca.end(), Rational(0));
    Rational hb = std::accumulate(cb.begin(), cb.end(), Rational(0));
    if (ha != hb) return ha < hb;
    return a < b;
  });
  return rs;
}

std::vector<LatticeVector> RootSystem::roots() const {
  std::vector<LatticeVector> out = positive_;
  for (const auto& a : positive_) out.push_back(-a);
  return out;
}

LatticeVector RootSystem::rho() const {
  LatticeVector r(rank_);
  for (std::size_t i = 0; i < rank_; ++i) r[i] = 1;
  return r;
}

bool RootSystem::is_root(const LatticeVector& v) const {
  return std::find(positive_.begin(), positive_.end(), v) != positive_.end() ||
         std::find(positive_.begin(), positive_.end(), -v) != positive_.end();
}

bool RootSystem::is_positive(const LatticeVector& v) const {
  return std::find(positive_.begin(), positive_.end(), v) != positive_.end();
}

RationalVector RootSystem::root_coordinates(const LatticeVector& v) const {
  if (v.rank() != rank_) throw InputError("weight " + v.str() + " has the wrong rank for " + name());
  return to_root_coords_ * to_rational(v);
}

Rational RootSystem::inner(const LatticeVector& a, const LatticeVector& b) const {
  RationalVector c = root_coordinates(b);
  Rational s = 0;
  for (std::size_t j = 0; j < rank_; ++j) s += c[j] * Rational(a[j]) * half_lengths_[j];
  return s;
}

Rational RootSystem::coroot_pairing(const LatticeVector& lambda, const LatticeVector& alpha) const {
  Rational aa = inner(alpha, alpha);
  if (aa == 0) throw InputError("zero root");
  return 2 * inner(lambda, alpha) / aa;
}

LatticeVector RootSystem::reflect(std::size_t i, const LatticeVector& v) const {
  LatticeVector out = v;
  for (std::size_t j = 0; j < rank_; ++j) out[j] -= v[i] * cartan_[i][j];
  return out;
}

bool RootSystem::is_dominant(const LatticeVector& v) const {
  return std::all_of(v.begin(), v.end(), [](const Integer& c) { return c >= 0; });
}

LatticeVector RootSystem::dominant_conjugate(const LatticeVector& v) const {
  LatticeVector cur = v;
  for (;;) {
    std::size_t i = 0;
    while (i < rank_ && cur[i] >= 0) ++i;
    if (i == rank_) return cur;
    cur = reflect(i, cur);
  }
}

LatticeVector RootSystem::dominant_chamber_vector() const {
  // Solve A theta = (1, ..., 1) and clear denominators.
  auto sol = rational_solve(RationalMatrix::from_rows(simple_), RationalVector(rank_, 1));
  if (!sol) throw ConsistencyError("singular Cartan matrix");
  return primitive(*sol);
}

LatticeVector WeylElement::apply(const LatticeVector& v) const { return mat_apply(matrix, v); }

std::string WeylElement::label() const {
  if (word.empty()) return "e";
  std::string s;
  for (int i : word) s += "s" + std::to_string(i);
  return s;
}

std::vector<WeylElement> generate_weyl(const RootSystem& rs) {
  const std::size_t n = rs.rank();
  std::vector<IntegerMatrix> simple;
  for (std::size_t i = 0; i < n; ++i) {
    IntegerMatrix s = mat_identity(n);
    for (std::size_t j = 0; j < n; ++j) s[j][i] -= rs.cartan()[i][j];
    simple.push_back(std::move(s));
  }
  std::vector<WeylElement> out{{mat_identity(n), {}, 1}};
  std::set<IntegerMatrix> seen{out.front().matrix};
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (std::size_t i = 0; i < n; ++i) {
      IntegerMatrix m = mat_mul(simple[i], out[head].matrix);
      if (!seen.insert(m).second) continue;
      WeylElement w;
      w.matrix = std::move(m);
      w.word.push_back(static_cast<int>(i + 1));
      w.word.insert(w.word.end(), out[head].word.begin(), out[head].word.end());
      w.det = -out[head].det;
      out.push_back(std::move(w));
    }
  }
  return out;
}

std::size_t root_length(const RootSystem& rs, const WeylElement& w) {
  std::size_t l = 0;
  for (const auto& a : rs.positive_roots())
    if (!rs.is_positive(w.apply(a))) ++l;
  return l;
}

void check_root_subset(const RootSystem& rs, std::span<const LatticeVector> delta_s) {
  std::set<LatticeVector> s(delta_s.begin(), delta_s.end());
  for (const auto& a : s) {
    if (!rs.is_root(a)) throw InputError(a.str() + " is not a root of " + rs.name());
    if (!s.count(-a)) throw InputError("isotropy roots are not closed under negation: missing " + (-a).str());
  }
  for (const auto& a : s)
    for (const auto& b : s) {
      LatticeVector c = a + b;
      if (rs.is_root(c) && !s.count(c))
        throw InputError("isotropy roots are not closed under addition: missing " + c.str());
    }
}

std::size_t relative_length(const RootSystem& rs, const WeylElement& w, std::span<const LatticeVector> delta_s) {
  std::set<LatticeVector> s(delta_s.begin(), delta_s.end());
  std::size_t l = 0;
  for (const auto& a : rs.positive_roots()) {
    if (s.count(a)) continue;
    if (!rs.is_positive(w.apply(a))) ++l;
  }
  return l;
}

int det_s(const RootSystem& rs, const WeylElement& w, std::span<const LatticeVector> delta_s) {
  return (relative_length(rs, w, delta_s) % 2 ? -1 : 1) * w.det;
}

std::vector<IntegerMatrix> subsystem_group(const RootSystem& rs, std::span<const LatticeVector> delta_s) {
  std::vector<IntegerMatrix> gens;
  for (const auto& a : positive_part(rs, delta_s)) gens.push_back(reflection_matrix(rs, a));
  std::vector<IntegerMatrix> out{mat_identity(rs.rank())};
  std::set<IntegerMatrix> seen(out.begin(), out.end());
  for (std::size_t head = 0; head < out.size(); ++head)
    for (const auto& g : gens) {
      IntegerMatrix m = mat_mul(g, out[head]);
      if (seen.insert(m).second) out.push_back(std::move(m));
    }
  return out;
}

FormalCharacter levi_character(const RootSystem& rs, std::span<const LatticeVector> delta_s,
                               const LatticeVector& lambda) {
  check_root_subset(rs, delta_s);
  auto pos = positive_part(rs, delta_s);
  for (const auto& a : pos)
    if (rs.coroot_pairing(lambda, a) < 0)
      throw InputError("weight " + lambda.str() + " is not dominant for the isotropy roots");
  if (pos.empty()) return FormalCharacter::monomial(lambda);

  Scenario sc;
  sc.rank = rs.rank();
  sc.dim = pos.size();
  auto group = subsystem_group(rs, delta_s);
  for (std::size_t g = 0; g < group.size(); ++g) {
    FixedPointDatum p;
    p.label = "u" + std::to_string(g);
    for (const auto& a : pos) p.isotropy_weights.push_back(mat_apply(group[g], a));
    p.fiber = FormalCharacter::monomial(mat_apply(group[g], lambda));
    sc.points.push_back(std::move(p));
  }
  MorseContext ctx(std::move(sc));
  std::size_t c = ctx.locate(rs.dominant_chamber_vector());
  FormalCharacter out(rs.rank());
  for (const auto& xi : ctx.default_window(0)) out.add(xi, ctx.index_in(c, xi));
  return out;
}

Scenario flag_fixed_data(const RootSystem& rs, const LatticeVector& lambda) {
  if (lambda.rank() != rs.rank()) throw InputError("highest weight " + lambda.str() + " has the wrong rank");
  if (!rs.is_dominant(lambda)) throw InputError("highest weight " + lambda.str() + " is not dominant");
  Scenario sc;
  sc.rank = rs.rank();
  sc.dim = rs.positive_roots().size();
  for (const auto& w : generate_weyl(rs)) {
    FixedPointDatum p;
    p.label = w.label();
    for (const auto& a : rs.positive_roots()) p.isotropy_weights.push_back(w.apply(a));
    p.fiber = FormalCharacter::monomial(w.apply(lambda));
    sc.points.push_back(std::move(p));
  }
  return sc;
}

std::vector<std::vector<std::size_t>> flag_weyl_action(const RootSystem& rs) {
  auto group = generate_weyl(rs);
  std::map<IntegerMatrix, std::size_t> index;
  for (std::size_t i = 0; i < group.size(); ++i) index[group[i].matrix] = i;
  std::vector<std::vector<std::size_t>> action(group.size(), std::vector<std::size_t>(group.size()));
  for (std::size_t g = 0; g < group.size(); ++g)
    for (std::size_t p = 0; p < group.size(); ++p) action[g][p] = index.at(mat_mul(group[g].matrix, group[p].matrix));
  return action;
}

FormalCharacter freudenthal_character(const RootSystem& rs, const LatticeVector& lambda) {
  if (!rs.is_dominant(lambda)) throw InputError("highest weight " + lambda.str() + " is not dominant");
  const LatticeVector rho = rs.rho();
  const Rational top = rs.inner(lambda + rho, lambda + rho);
  std::map<LatticeVector, Integer> memo;

  std::function<Integer(const LatticeVector&)> mult = [&](const LatticeVector& nu) -> Integer {
    if (!in_positive_root_cone(rs, lambda - nu)) return 0;
    LatticeVector dom = rs.dominant_conjugate(nu);
    if (dom != nu) return mult(dom);
    if (nu == lambda) return 1;
    if (auto it = memo.find(nu); it != memo.end()) return it->second;
    Rational sum = 0;
    for (const auto& a : rs.positive_roots()) {
      LatticeVector shifted = nu + a;
      while (in_positive_root_cone(rs, lambda - shifted)) {
        sum += rs.inner(shifted, a) * Rational(mult(shifted));
        shifted += a;
      }
    }
    Rational denom = top - rs.inner(nu + rho, nu + rho);
    Rational m = 2 * sum / denom;
    if (m.get_den() != 1 || m < 0) throw ConsistencyError("Freudenthal recursion produced " + m.get_str());
    Integer out = m.get_num();
    memo.emplace(nu, out);
    return out;
  };

  // Weights lie in the convex hull of the Weyl orbit of lambda.
  std::vector<LatticeVector> orbit;
  for (const auto& w : generate_weyl(rs)) orbit.push_back(w.apply(lambda));
  LatticeVector lo = orbit.front(), hi = orbit.front();
  for (const auto& v : orbit)
    for (std::size_t i = 0; i < rs.rank(); ++i) {
      if (v[i] < lo[i]) lo[i] = v[i];
      if (v[i] > hi[i]) hi[i] = v[i];
    }
  FormalCharacter ch(rs.rank());
  LatticeVector cur = lo;
  for (;;) {
    Integer m = mult(cur);
    if (m != 0) ch.add(cur, m);
    std::size_t i = 0;
    while (i < rs.rank() && cur[i] == hi[i]) {
      cur[i] = lo[i];
      ++i;
    }
    if (i == rs.rank()) break;
    cur[i] += 1;
  }
  return ch;
}

FormalCharacter weyl_character(const RootSystem& rs, const LatticeVector& lambda,
                               std::span<const LatticeVector> window) {
  MorseContext ctx(flag_fixed_data(rs, lambda));
  std::size_t c = ctx.locate(rs.dominant_chamber_vector());
  FormalCharacter fixed(rs.rank());
  for (const auto& xi : window) fixed.add(xi, ctx.index_in(c, xi));
  FormalCharacter oracle = freudenthal_character(rs, lambda);
  for (const auto& xi : window)
    if (fixed.coefficient(xi) != oracle.coefficient(xi))
      throw ConsistencyError("character of " + lambda.str() + " at " + xi.str() + ": fixed points give " +
                             fixed.coefficient(xi).get_str() + ", Freudenthal gives " +
                             oracle.coefficient(xi).get_str());
  return fixed;
}

FormalCharacter weyl_character(const RootSystem& rs, const LatticeVector& lambda) {
  MorseContext ctx(flag_fixed_data(rs, lambda));
  auto window = ctx.default_window(0);
  return weyl_character(rs, lambda, window);
}

Integer weyl_dimension(const RootSystem& rs, const LatticeVector& lambda) {
  const LatticeVector rho = rs.rho();
  Rational d = 1;
  for (const auto& a : rs.positive_roots()) d *= rs.inner(lambda + rho, a) / rs.inner(rho, a);
  if (d.get_den() != 1) throw ConsistencyError("Weyl dimension is not integral");
  return d.get_num();
}

std::vector<std::vector<std::size_t>> orbit_partition(const Scenario& scenario,
                                                      const std::vector<std::vector<std::size_t>>& action) {
  const std::size_t n = scenario.points.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& row : action) {
    if (row.size() != n) throw InputError("action table row has the wrong length");
    std::vector<bool> hit(n, false);
    for (std::size_t p = 0; p < n; ++p) {
      if (row[p] >= n || hit[row[p]]) throw InputError("action table row is not a permutation");
      hit[row[p]] = true;
      std::size_t a = find(p), b = find(row[p]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t p = 0; p < n; ++p) groups[find(p)].push_back(p);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

}  // namespace ehm
