// Runs the ten acceptance checks and prints one PASS/FAIL line for each.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "ehm/builtins.hpp"
#include "ehm/cli/run.hpp"
#include "ehm/errors.hpp"
#include "ehm/morse.hpp"
#include "ehm/weyl.hpp"
#include "oracles.hpp"

using namespace ehm;

namespace {

// Collects the first failed expectation of a check.
struct Check {
  std::string failure;
  std::vector<std::string> notes;

  bool expect(bool cond, const std::string& what) {
    if (!cond && failure.empty()) failure = what;
    return cond;
  }
  bool ok() const { return failure.empty(); }
};

std::string str(const std::vector<LatticeVector>& v) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
  return os.str() + "}";
}

Integer alternating(const std::vector<Integer>& p) {
  Integer s = 0;
  for (std::size_t k = 0; k < p.size(); ++k) s += (k % 2 == 0) ? p[k] : Integer(-p[k]);
  return s;
}

std::size_t index_of(const Scenario& sc, const std::string& label) {
  for (std::size_t i = 0; i < sc.points.size(); ++i)
    if (sc.points[i].label == label) return i;
  return sc.points.size();
}

void projective_line(Check& c) {
  for (long r : {0L, 1L, 2L, 5L}) {
    MorseContext ctx(builtin("cp1", {.r = r}).scenario);
    auto w = ctx.default_window(3);
    FormalCharacter idx = index_character(ctx, w);
    bool ones = std::all_of(idx.terms().begin(), idx.terms().end(), [](const auto& t) { return t.second == 1; });
    c.expect(idx.size() == static_cast<std::size_t>(r + 1) && ones, "index of O(" + std::to_string(r) + ")");
    for (const auto& xi : w)
      c.expect(support_verdict(ctx, xi).degrees[1].status == Verdict::Excluded,
               "H1 not excluded at " + xi.str() + " for r=" + std::to_string(r));
  }
  for (long r : {-1L, -3L}) {
    MorseContext ctx(builtin("cp1", {.r = r}).scenario);
    std::size_t forced = 0;
    for (const auto& xi : ctx.default_window(3)) {
      SupportVerdict v = support_verdict(ctx, xi);
      c.expect(v.degrees[0].status == Verdict::Excluded, "H0 not excluded at " + xi.str());
      if (v.degrees[1].status == Verdict::Forced && *v.degrees[1].multiplicity == 1) ++forced;
    }
    c.expect(forced == static_cast<std::size_t>(-r - 1), "forced H1 count for r=" + std::to_string(r));
  }
}

void projective_plane(Check& c) {
  MorseContext ctx(builtin("cp2", {.r = 3}).scenario);
  c.expect(ctx.chambers().size() == 6, "chamber count");
  std::size_t ch = ctx.locate({2, 1});
  for (std::size_t p = 0; p < 3; ++p)
    c.expect(ctx.polarizing_index(ch, index_of(ctx.scenario(), "p" + std::to_string(p + 1))) == p,
             "polarizing index of p" + std::to_string(p + 1));
  std::size_t forced = 0;
  MorsePolynomial h(2, 2);
  for (const auto& xi : ctx.default_window(3)) {
    SupportVerdict v = support_verdict(ctx, xi);
    bool inside = xi[0] >= 0 && xi[1] >= 0 && xi[0] + xi[1] <= 3;
    c.expect(v.degrees[1].status == Verdict::Excluded && v.degrees[2].status == Verdict::Excluded,
             "H1/H2 not excluded at " + xi.str());
    if (inside) {
      c.expect(v.degrees[0].status == Verdict::Forced && *v.degrees[0].multiplicity == 1,
               "H0 not forced at " + xi.str());
      ++forced;
      h[0].add(xi, 1);
    } else {
      c.expect(v.degrees[0].status == Verdict::Excluded, "H0 not excluded at " + xi.str());
    }
  }
  c.expect(forced == 10, "simplex size");
  // Q is compared weight by weight with an independent expansion. It vanishes
  // on the simplex; outside it, Gamma regions of adjacent degrees overlap and
  // Q is a nonnegative nonzero polynomial (for example t + t^2 = (1 + t) t at
  // (-3,-3) in the chamber of (2,1)), so Q = 0 cannot hold on the whole window.
  auto window = ctx.default_window(3);
  std::size_t nonzero = 0;
  for (const auto& chamber : ctx.chambers()) {
    StrongReport rep = verify_strong(ctx, chamber.id, h, window);
    c.expect(rep.holds, "strong inequalities fail in chamber " + std::to_string(chamber.id));
    auto series = oracle::morse_series(ctx.scenario(), chamber.representative, 40);
    Integer top = oracle::top_pairing(ctx.scenario(), chamber.representative);
    for (const auto& xi : window) {
      c.expect(top - dot(xi, chamber.representative) <= 40, "oracle truncation too short");
      std::vector<Integer> p(3);
      for (std::size_t k = 0; k < 3; ++k) p[k] = series[k].coefficient(xi) - h[k].coefficient(xi);
      auto q = oracle::quotient_by_one_plus_t(p);
      auto it = rep.quotient.find(xi);
      std::vector<Integer> got = it == rep.quotient.end() ? std::vector<Integer>(2, 0) : it->second;
      got.resize(2, 0);
      c.expect(q && *q == got, "Q differs from the oracle at " + xi.str());
      bool zero = std::all_of(got.begin(), got.end(), [](const Integer& x) { return x == 0; });
      c.expect(std::all_of(got.begin(), got.end(), [](const Integer& x) { return x >= 0; }), "negative Q");
      if (h[0].coefficient(xi) != 0) c.expect(zero, "Q nonzero on the simplex at " + xi.str());
      if (!zero) ++nonzero;
    }
  }
  std::ostringstream os;
  os << "Q = 0 on the simplex in all 6 chambers; Q >= 0 and matches the oracle on all " << window.size()
     << " window weights; Q != 0 at " << nonzero << " (chamber, weight) pairs off the simplex";
  c.notes.push_back(os.str());
}

void hirzebruch(Check& c) {
  auto ex = builtin("hirzebruch", {.r = 2, .s = 1, .a = 1});
  MorseContext ctx(ex.scenario);
  MorsePolynomial h = toric_cohomology_2d(*ex.fan, *ex.pl);
  c.expect(h[2].empty(), "H2 nonzero");
  const LatticeVector theta = ctx.chambers().front().representative;
  const long bound = 40;
  auto series = oracle::morse_series(ctx.scenario(), theta, bound);
  Integer top = oracle::top_pairing(ctx.scenario(), theta);
  std::vector<LatticeVector> h0, h1;
  for (const auto& xi : ctx.default_window(3)) {
    c.expect(top - dot(xi, theta) <= bound, "oracle truncation too short");
    Integer idx = series[0].coefficient(xi) - series[1].coefficient(xi) + series[2].coefficient(xi);
    if (idx > 0) h0.push_back(xi);
    if (idx < 0) h1.push_back(xi);
    int hits = (h[0].coefficient(xi) != 0) + (h[1].coefficient(xi) != 0) + (h[2].coefficient(xi) != 0);
    c.expect(hits <= 1, "supports overlap at " + xi.str());
  }
  c.expect(h[0].support() == h0, "H0 support differs from the oracle");
  c.expect(h[1].support() == h1, "H1 support differs from the oracle");
  c.notes.push_back("H0 = " + str(h0) + " = lattice points of {x1,x2>=0, x1<=r, a x1+x2<=s}; H1 = " + str(h1));
}

void jurkiewicz(Check& c) {
  Fan fan = jurkiewicz_fan();
  ValidationReport v = validate(fan);
  c.expect(v.smooth && v.complete && v.cone_count == 22, "validation");
  c.expect(!strictly_convex(fan, jurkiewicz_pl()) && !admits_strictly_convex(fan), "convexity");

  // Replay of the contradiction on the 8-cone fan with rays a..f.
  Fan coarse = jurkiewicz_coarse_fan();
  auto sum = [&](std::vector<std::pair<std::size_t, std::size_t>> walls) {
    RationalVector s(6, 0);
    for (auto [cone, ray] : walls) {
      auto w = wall_inequality(coarse, cone, ray);
      for (std::size_t i = 0; i < 6; ++i) s[i] += w[i];
    }
    return s;
  };
  const RationalVector aggregate{3, 3, 3, 1, 1, 1};
  RationalVector positive = sum({{1, 3}, {2, 4}, {3, 5}});
  RationalVector negative = sum({{0, 5}, {0, 3}, {0, 4}});
  for (auto& x : negative) x = -x;
  c.expect(positive == aggregate, "3S+T > 0 not derived");
  c.expect(negative == aggregate, "3S+T < 0 not derived");
  c.expect(!feasible(strict_convexity_system(coarse)).has_value(), "coarse convexity system feasible");

  MorseContext ctx(builtin("jurkiewicz").scenario);
  LatticeVector zero{0, 0, 0};
  auto w = detect_obstruction(ctx, oracle::box(3, -2, 2));
  c.expect(w && w->weight == zero && w->conflicting_degrees == std::vector<std::size_t>{0, 3} && witness_valid(ctx, *w),
           "obstruction witness");
  c.expect(index_coefficient(ctx, zero) == 0, "index at 0");
  MorsePolynomial h(3, 3);
  h[0].add(zero, 1);
  h[3].add(zero, 1);
  std::size_t ch = ctx.locate(jurkiewicz_chamber());
  c.expect(weak_check(ctx, ch, h, ctx.default_window(0)).holds, "weak inequalities");
}

void tolman(Check& c) {
  MorseContext ctx(builtin("tolman").scenario);
  const LatticeVector xi{1, 2};
  std::size_t ch = ctx.locate(tolman_chamber());
  std::size_t opp = ctx.opposite(ch);
  std::set<std::string> in_c, in_opp;
  for (std::size_t p = 0; p < ctx.scenario().points.size(); ++p) {
    if (ctx.contains(ch, p, xi)) in_c.insert(ctx.scenario().points[p].label);
    if (ctx.contains(opp, p, xi)) in_opp.insert(ctx.scenario().points[p].label);
  }
  const Scenario& sc = ctx.scenario();
  c.expect(in_c == std::set<std::string>{"p1", "p5"}, "memberships in C");
  c.expect(in_opp == std::set<std::string>{"p3", "p6"}, "memberships in -C");
  c.expect(ctx.polarizing_index(ch, index_of(sc, "p1")) == 1 && ctx.polarizing_index(ch, index_of(sc, "p5")) == 0 &&
               ctx.polarizing_index(opp, index_of(sc, "p3")) == 0 && ctx.polarizing_index(opp, index_of(sc, "p6")) == 2,
           "polarizing indices");
  auto w = detect_obstruction(ctx);
  c.expect(w && w->weight == xi && w->degree == 2, "obstruction witness");
  cli::CommandRequest req;
  req.example = "tolman";
  req.command = "obstruction";
  std::ostringstream out, err;
  c.expect(cli::run(req, out, err) == cli::kViolation, "CLI exit code");
}

void chamber_independence(Check& c) {
  for (const auto& name : builtin_names()) {
    MorseContext ctx(builtin(name).scenario);
    long margin = ctx.rank() == 3 ? 0 : 2;
    auto window = ctx.default_window(margin);
    while (window.size() < 50) window = ctx.default_window(++margin);
    if (window.size() > 120) window.resize(120);
    for (const auto& xi : window) {
      auto profiles = ctx.profile_table(xi);
      Integer first = alternating(profiles.front());
      for (const auto& p : profiles) c.expect(alternating(p) == first, name + " disagrees at " + xi.str());
    }
  }
}

void t_minus_one(Check& c) {
  for (const auto& name : builtin_names()) {
    MorseContext ctx(builtin(name).scenario);
    auto window = ctx.default_window(ctx.rank() == 3 ? 0 : 2);
    for (const auto& xi : window) {
      Integer idx;
      try {
        idx = index_coefficient(ctx, xi);
      } catch (const ChamberInconsistency&) {
        c.expect(false, name + " chambers disagree at " + xi.str());
        return;
      }
      for (std::size_t k = 0; k < ctx.chambers().size(); ++k)
        c.expect(alternating(ctx.lhs_profile(k, xi)) == idx, name + " profile at " + xi.str());
    }
  }
}

void weyl(Check& c) {
  std::map<RootType, std::size_t> order{{RootType::A1, 2}, {RootType::A2, 6}, {RootType::B2, 8}};
  for (auto [t, n] : order) {
    RootSystem rs = RootSystem::of_type(t);
    auto group = generate_weyl(rs);
    c.expect(group.size() == n, "order of W(" + rs.name() + ")");
    for (const auto& w : group) c.expect(w.det == (w.length() % 2 == 0 ? 1 : -1), "det in " + rs.name());
  }
  RootSystem a2 = RootSystem::of_type(RootType::A2);
  FormalCharacter adj = weyl_character(a2, a2.rho());
  c.expect(adj.total() == 8 && adj.coefficient({0, 0}) == 2, "A2 adjoint character");
  c.expect(adj == freudenthal_character(a2, a2.rho()), "Freudenthal disagreement");

  RootSystem a1 = RootSystem::of_type(RootType::A1);
  for (long r : {0L, 1L, 3L}) {
    MorseContext flag(builtin("flag-a1", {.lambda = LatticeVector{r}}).scenario);
    MorseContext line(builtin("cp1", {.r = r}).scenario);
    for (long x = -6; x <= 6; ++x)
      c.expect(index_coefficient(flag, {2 * x - r}) == index_coefficient(line, {x}) &&
                   index_coefficient(flag, {2 * x - r + 1}) == 0,
               "flag A1 vs CP1 at r=" + std::to_string(r));
    std::vector<OrbitDatum> orbits{{"F", {}, {{LatticeVector{r}, Rational(1)}}, {}}};
    RepresentationCohomology h(2);
    h[0][LatticeVector{r}] = 1;
    auto rep = assemble_nonabelian(a1, orbits, LatticeVector{1}, h, oracle::box(1, -15, 15));
    c.expect(rep.holds(), "flag A1 assembly at r=" + std::to_string(r));
  }
  std::vector<OrbitDatum> orbits{{"F", {}, {{a2.rho(), Rational(1)}}, {}}};
  RepresentationCohomology h(4);
  h[0][a2.rho()] = 1;
  auto rep = assemble_nonabelian(a2, orbits, a2.dominant_chamber_vector(), h, oracle::box(2, -5, 5));
  c.expect(rep.fixed_point_failures.empty(), "Weyl numerator identity at t = -1");
  c.expect(rep.holds(), "flag A2 assembly");
}

void numerical(Check& c) {
  std::mt19937 rng(20261018);
  std::uniform_real_distribution<double> angle(-3.0, 3.0);
  double worst = 0;
  for (const auto& name : {"cp2", "hirzebruch"}) {
    MorseContext ctx(builtin(name).scenario);
    FormalCharacter idx = index_character(ctx, ctx.default_window(3));
    int tested = 0;
    while (tested < 100) {
      EvaluationPoint th{angle(rng), angle(rng)};
      std::size_t ch = tested % ctx.chambers().size();
      std::complex<double> lhs = 0;
      try {
        for (std::size_t p = 0; p < ctx.scenario().points.size(); ++p) lhs += evaluate(ctx.term(ch, p), th);
      } catch (const SingularEvaluation&) {
        continue;
      }
      worst = std::max(worst, std::abs(lhs - evaluate(idx, th)));
      ++tested;
    }
  }
  c.expect(worst < 1e-9, "max deviation " + std::to_string(worst));
  std::ostringstream os;
  os << "max deviation " << worst;
  c.notes.push_back(os.str());
}

void oracle_suite(Check& c) {
  std::mt19937 rng(4242);
  std::uniform_int_distribution<int> coord(-3, 3), small(0, 3), rank_d(1, 3), rel(0, 5), off(-4, 4);
  std::size_t checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t rank = static_cast<std::size_t>(rank_d(rng));
    LatticeVector theta(rank);
    for (std::size_t i = 0; i < rank; ++i) theta[i] = 1 + static_cast<long>(i);
    std::vector<LatticeVector> dens;
    int nd = small(rng);
    while (static_cast<int>(dens.size()) < nd) {
      LatticeVector v(rank);
      for (std::size_t i = 0; i < rank; ++i) v[i] = coord(rng);
      Integer s = dot(v, theta);
      if (s == 0) continue;
      dens.push_back(s > 0 ? v : -v);
    }
    FormalCharacter num(rank);
    LatticeVector mu(rank);
    for (std::size_t i = 0; i < rank; ++i) mu[i] = coord(rng);
    num.add(mu, 1);
    PolarizedTerm term(0, num, dens, theta);
    FormalCharacter brute = oracle::truncated_series(num, dens, 20);
    for (const auto& target : oracle::box(rank, -4, 4)) {
      if (dot(mu - target, theta) > 20) continue;
      c.expect(term_coefficient(term, target, theta) == brute.coefficient(target), "term_coefficient mismatch");
      ++checked;
    }
  }
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t dim = 1 + trial % 3;
    LinearSystem s(dim);
    std::size_t count = 1 + (trial / 3) % 8;
    for (std::size_t k = 0; k < count; ++k) {
      RationalVector a(dim);
      for (auto& x : a) x = coord(rng);
      int r = rel(rng);
      s.add(a, r < 3 ? Relation::GreaterEqual : (r < 5 ? Relation::Greater : Relation::Equal), off(rng));
    }
    for (std::size_t i = 0; i < dim; ++i) {
      RationalVector e(dim, 0);
      e[i] = 1;
      s.add_ge(e, -3);
      s.add_le(e, 3);
    }
    auto w = feasible(s);
    c.expect(w.has_value() == oracle::vertex_feasible(s), "feasible() vs exact vertex oracle");
    if (oracle::grid_point(s, 3, dim == 3 ? 2 : 4)) c.expect(w.has_value(), "feasible() missed a grid point");
    if (w) c.expect(s.satisfied_by(*w), "feasibility witness invalid");
    auto pts = lattice_points(s);
    c.expect(pts == oracle::box_points(s, 3), "lattice_points vs box enumeration");
    auto cons = s.constraints();
    std::shuffle(cons.begin(), cons.end(), rng);
    LinearSystem shuffled(dim);
    for (auto& con : cons) shuffled.add(con);
    c.expect(lattice_points(shuffled) == pts, "lattice_points not permutation invariant");
  }
  c.notes.push_back(std::to_string(checked) + " term coefficients compared");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> checks{
      {"1 projective line cohomology", projective_line},
      {"2 projective plane chambers, verdicts and strong inequalities", projective_plane},
      {"3 Hirzebruch cohomology against the index oracle", hirzebruch},
      {"4 Jurkiewicz fan obstruction", jurkiewicz},
      {"5 Tolman data obstruction", tolman},
      {"6 chamber independence of the index", chamber_independence},
      {"7 t = -1 consistency", t_minus_one},
      {"8 Weyl groups, characters and flag assembly", weyl},
      {"9 numerical cross-check", numerical},
      {"10 oracle property suite", oracle_suite},
  };
  int failed = 0;
  for (const auto& [name, fn] : checks) {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (c.ok() ? "PASS " : "FAIL ") << name << " (" << secs << "s)";
    if (!c.ok()) std::cout << ": " << c.failure;
    std::cout << "\n";
    for (const auto& n : c.notes) std::cout << "     " << n << "\n";
    if (!c.ok()) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
