#include "ehm/builtins.hpp"

#include "ehm/errors.hpp"

namespace ehm {
namespace {

LatticeVector unit(long n, long i) {
  LatticeVector v(static_cast<std::size_t>(n));
  v[static_cast<std::size_t>(i)] = 1;
  return v;
}

BuiltinExample toric(std::string name, std::string description, Fan fan, PLFunction pl) {
  BuiltinExample ex;
  ex.name = std::move(name);
  ex.description = std::move(description);
  ex.scenario = fixed_point_data(fan, pl);
  ex.fan = std::move(fan);
  ex.pl = std::move(pl);
  return ex;
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"cp1", "cp2", "cpn", "hirzebruch", "jurkiewicz", "tolman", "flag-a1", "flag-a2"};
}

Fan projective_fan(long n) {
  if (n < 1 || n > 8) throw InputError("projective space dimension must be between 1 and 8");
  std::vector<LatticeVector> rays;
  std::vector<std::string> ray_labels;
  LatticeVector v0(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    rays.push_back(unit(n, i));
    ray_labels.push_back("e" + std::to_string(i + 1));
    v0[static_cast<std::size_t>(i)] = -1;
  }
  rays.push_back(v0);
  ray_labels.push_back("v0");
  std::vector<std::vector<std::size_t>> cones;
  std::vector<std::string> labels;
  for (long i = 0; i < n; ++i) {
    std::vector<std::size_t> cone{static_cast<std::size_t>(n)};
    for (long j = 0; j < n; ++j)
      if (j != i) cone.push_back(static_cast<std::size_t>(j));
    cones.push_back(cone);
    labels.push_back("p" + std::to_string(i + 1));
  }
  std::vector<std::size_t> last;
  for (long j = 0; j < n; ++j) last.push_back(static_cast<std::size_t>(j));
  cones.push_back(last);
  labels.push_back("p" + std::to_string(n + 1));
  return Fan(static_cast<std::size_t>(n), rays, cones, labels, ray_labels);
}

PLFunction projective_pl(long n, long r) {
  std::vector<long> v(static_cast<std::size_t>(n), 0);
  v.push_back(-r);
  return PLFunction::from_longs(v);
}

Fan hirzebruch_fan(long a) {
  if (a < 0) throw InputError("Hirzebruch parameter a must be nonnegative");
  return Fan(2, {LatticeVector{1, 0}, LatticeVector{0, 1}, LatticeVector{-1, 0}, LatticeVector{-a, -1}},
             {{0, 1}, {1, 2}, {2, 3}, {3, 0}}, {"p1", "p2", "p3", "p4"}, {"v1", "v2", "v3", "v4"});
}

PLFunction hirzebruch_pl(long r, long s) { return PLFunction::from_longs({0, 0, -r, -s}); }

Fan jurkiewicz_fan() {
  std::vector<LatticeVector> rays{
      {1, 0, 0},   {0, 1, 0},   {0, 0, 1},   {0, -2, -1},  {-1, 0, -2},  {-2, -1, 0},  {-1, -2, -1},
      {-1, -1, -2}, {-2, -1, -1}, {-1, -2, -2}, {-2, -1, -2}, {-2, -2, -1}, {-1, -1, -1},
  };
  std::vector<std::string> names{"a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l", "m"};
  auto idx = [&](char c) { return static_cast<std::size_t>(c - 'a'); };
  const char* cones_txt[] = {
      "abc", "acf", "abd", "bce", "adf", "bde", "cef",                                       // outer
      "mhj", "mjd", "mdg", "mgl", "mlf", "mfi", "mik", "mke", "meh",                         // around m
      "dgf", "glf", "djh", "dhe", "eki", "eif",                                              // remaining inner
  };
  std::vector<std::vector<std::size_t>> cones;
  for (const char* t : cones_txt) cones.push_back({idx(t[0]), idx(t[1]), idx(t[2])});
  return Fan(3, rays, cones, {}, names);
}

PLFunction jurkiewicz_pl() { return PLFunction::from_longs({0, 0, 0, 3, 3, 3, 4, 4, 4, 5, 5, 5, 3}); }

Fan jurkiewicz_coarse_fan() {
  Fan fine = jurkiewicz_fan();
  std::vector<LatticeVector> rays(fine.rays().begin(), fine.rays().begin() + 6);
  std::vector<std::string> names{"a", "b", "c", "d", "e", "f"};
  return Fan(3, rays, {{0, 1, 2}, {0, 2, 5}, {0, 1, 3}, {1, 2, 4}, {0, 3, 5}, {1, 3, 4}, {2, 4, 5}, {3, 4, 5}}, {},
             names);
}

// g + 2l + 2m, interior to the inner cone {g, l, m}.
LatticeVector jurkiewicz_chamber() { return {-7, -8, -5}; }

Scenario tolman_scenario() {
  // Isotropy weights are the negatives of these.
  const std::vector<std::vector<LatticeVector>> negated{
      {{1, 0}, {0, 1}, {1, 1}},    {{1, 0}, {0, 1}, {-1, -1}},  {{1, 0}, {0, -1}, {1, -1}},
      {{-1, 0}, {0, -1}, {1, -1}}, {{-1, 0}, {-1, 1}, {-2, 1}}, {{-1, 0}, {-1, 1}, {2, -1}},
  };
  const std::vector<LatticeVector> fibers{{0, 0}, {3, 3}, {0, 2}, {3, 2}, {5, 0}, {-1, 3}};
  Scenario sc;
  sc.rank = 2;
  sc.dim = 3;
  for (std::size_t i = 0; i < negated.size(); ++i) {
    FixedPointDatum p;
    p.label = "p" + std::to_string(i + 1);
    for (const auto& w : negated[i]) p.isotropy_weights.push_back(-w);
    p.fiber = FormalCharacter::monomial(fibers[i]);
    sc.points.push_back(std::move(p));
  }
  return sc;
}

LatticeVector tolman_chamber() { return {1, -2}; }

BuiltinExample builtin(const std::string& name, const BuiltinParams& params) {
  if (name == "cp1") return toric("cp1", "projective line with O(r)", projective_fan(1), projective_pl(1, params.r));
  if (name == "cp2") {
    auto ex = toric("cp2", "projective plane with O(r)", projective_fan(2), projective_pl(2, params.r));
    ex.chamber = LatticeVector{2, 1};
    return ex;
  }
  if (name == "cpn")
    return toric("cpn", "projective space of dimension n with O(r)", projective_fan(params.n),
                 projective_pl(params.n, params.r));
  if (name == "hirzebruch") {
    auto ex = toric("hirzebruch", "Hirzebruch surface with line bundle (r, s)", hirzebruch_fan(params.a),
                    hirzebruch_pl(params.r, params.s));
    ex.chamber = LatticeVector{-params.a - 1, -1};
    return ex;
  }
  if (name == "jurkiewicz") {
    auto ex = toric("jurkiewicz", "smooth complete non-projective toric threefold with 22 fixed points",
                    jurkiewicz_fan(), jurkiewicz_pl());
    ex.chamber = jurkiewicz_chamber();
    return ex;
  }
  if (name == "tolman") {
    BuiltinExample ex;
    ex.name = "tolman";
    ex.description = "six fixed points of a Hamiltonian T^2 action with no invariant Kaehler structure";
    ex.scenario = tolman_scenario();
    ex.chamber = tolman_chamber();
    return ex;
  }
  if (name == "flag-a1" || name == "flag-a2") {
    RootType t = name == "flag-a1" ? RootType::A1 : RootType::A2;
    RootSystem rs = RootSystem::of_type(t);
    LatticeVector lambda = params.lambda ? *params.lambda : (t == RootType::A1 ? LatticeVector{params.r} : rs.rho());
    if (lambda.rank() != rs.rank()) throw InputError("highest weight for " + name + " needs rank " + std::to_string(rs.rank()));
    BuiltinExample ex;
    ex.name = name;
    ex.description = "full flag manifold of type " + to_string(t) + " with highest weight " + lambda.str();
    ex.scenario = flag_fixed_data(rs, lambda);
    ex.chamber = rs.dominant_chamber_vector();
    ex.root_type = t;
    ex.highest_weight = lambda;
    return ex;
  }
  throw InputError("unknown example '" + name + "'");
}

}  // namespace ehm
