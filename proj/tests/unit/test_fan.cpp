#include <gtest/gtest.h>

#include <algorithm>

#include "ehm/builtins.hpp"
#include "ehm/errors.hpp"
#include "ehm/morse.hpp"
#include "oracles.hpp"

using namespace ehm;

namespace {

const FixedPointDatum& point(const Scenario& sc, const std::string& label) {
  auto it = std::find_if(sc.points.begin(), sc.points.end(), [&](const auto& p) { return p.label == label; });
  if (it == sc.points.end()) throw std::runtime_error("no point " + label);
  return *it;
}

std::vector<LatticeVector> sorted(std::vector<LatticeVector> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(Fan, ProjectivePlaneIsSmoothComplete) {
  auto rep = validate(projective_fan(2));
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.cone_count, 3u);
}

TEST(Fan, RejectsMalformedInput) {
  EXPECT_THROW(Fan(2, {LatticeVector{2, 0}, LatticeVector{0, 1}}, {{0, 1}}), InputError);
  EXPECT_THROW(Fan(2, {LatticeVector{1, 0}, LatticeVector{0, 1}}, {{0, 5}}), InputError);
  EXPECT_THROW(Fan(2, {LatticeVector{1, 0}, LatticeVector{1, 0}}, {{0, 1}}), InputError);
}

TEST(Fan, DetectsSingularAndIncomplete) {
  Fan half(2, {LatticeVector{1, 0}, LatticeVector{0, 1}, LatticeVector{-1, 0}}, {{0, 1}, {1, 2}});
  EXPECT_FALSE(validate(half).complete);
  Fan singular(2, {LatticeVector{1, 0}, LatticeVector{1, 2}, LatticeVector{-1, 0}, LatticeVector{0, -1}},
               {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  auto rep = validate(singular);
  EXPECT_FALSE(rep.smooth);
  EXPECT_EQ(rep.failing_cones, (std::vector<std::size_t>{0, 1}));
}

TEST(Fan, ConeWeightOfProjectivePlane) {
  Fan f = projective_fan(2);
  PLFunction phi = projective_pl(2, 2);
  // Cone p1 is {v0, e2}.
  EXPECT_EQ(cone_weight(f, phi, 0), (LatticeVector{2, 0}));
  for (std::size_t s = 0; s < f.max_cones().size(); ++s) {
    LatticeVector m = cone_weight(f, phi, s);
    for (auto r : f.max_cones()[s]) EXPECT_EQ(dot(m, f.rays()[r]), phi[r]);
  }
}

TEST(Fan, ProjectiveConvexity) {
  for (long n = 1; n <= 3; ++n) {
    Fan f = projective_fan(n);
    EXPECT_TRUE(strictly_convex(f, projective_pl(n, 1)));
    EXPECT_FALSE(strictly_convex(f, projective_pl(n, -1)));
    PLFunction concave = projective_pl(n, -1);
    std::vector<Integer> negated;
    for (const auto& x : concave.values()) negated.push_back(-x);
    EXPECT_TRUE(strictly_convex(f, PLFunction(negated)));
    EXPECT_TRUE(convex(f, projective_pl(n, 0)));
    EXPECT_FALSE(strictly_convex(f, projective_pl(n, 0)));
    EXPECT_TRUE(admits_strictly_convex(f));
  }
}

TEST(Fan, ProjectivePlaneFixedPoints) {
  Scenario sc = fixed_point_data(projective_fan(2), projective_pl(2, 2));
  ASSERT_EQ(sc.points.size(), 3u);
  EXPECT_EQ(sorted(point(sc, "p3").isotropy_weights), sorted({LatticeVector{-1, 0}, LatticeVector{0, -1}}));
  EXPECT_EQ(point(sc, "p3").fiber, FormalCharacter::monomial({0, 0}));
  EXPECT_EQ(sorted(point(sc, "p1").isotropy_weights), sorted({LatticeVector{1, 0}, LatticeVector{1, -1}}));
  EXPECT_EQ(point(sc, "p1").fiber, FormalCharacter::monomial({2, 0}));
}

TEST(Fan, HirzebruchWeights) {
  const long a = 2;
  Scenario sc = fixed_point_data(hirzebruch_fan(a), hirzebruch_pl(1, 1));
  std::vector<std::vector<LatticeVector>> negated{
      {{1, 0}, {0, 1}}, {{-1, 0}, {0, 1}}, {{0, -1}, {-1, a}}, {{0, -1}, {1, -a}}};
  for (std::size_t i = 0; i < 4; ++i) {
    std::vector<LatticeVector> expect;
    for (const auto& w : negated[i]) expect.push_back(-w);
    EXPECT_EQ(sorted(sc.points[i].isotropy_weights), sorted(expect)) << "p" << i + 1;
  }
}

TEST(Fan, IsotropyWeightsPairNonPositivelyWithCone) {
  for (const auto& ex : {builtin("cp2"), builtin("hirzebruch"), builtin("jurkiewicz")}) {
    const Fan& f = *ex.fan;
    for (std::size_t s = 0; s < f.max_cones().size(); ++s)
      for (const auto& w : ex.scenario.points[s].isotropy_weights)
        for (auto r : f.max_cones()[s]) EXPECT_LE(dot(w, f.rays()[r]), 0);
  }
}

TEST(Fan, MomentPolytopeOfProjectivePlane) {
  LinearSystem p = moment_polytope(projective_fan(2), projective_pl(2, 2));
  EXPECT_EQ(lattice_points(p).size(), 6u);
  EXPECT_THROW(moment_polytope(projective_fan(2), projective_pl(2, -1)), NotConvex);
}

TEST(Fan, HirzebruchPolytopeIsQuadrilateral) {
  // s >= a r: Gamma^0 is the 4-gon 0 <= x1 <= r, 0 <= x2, a x1 + x2 <= s.
  const long a = 1, r = 2, s = 3;
  auto pts = lattice_points(gamma_zero_system(hirzebruch_fan(a), hirzebruch_pl(r, s)));
  std::vector<LatticeVector> expect;
  for (long x = 0; x <= r; ++x)
    for (long y = 0; a * x + y <= s; ++y) expect.push_back({x, y});
  EXPECT_EQ(pts, sorted(expect));
}

TEST(Fan, ShiftingPhiShiftsIndex) {
  Fan f = hirzebruch_fan(1);
  PLFunction phi = hirzebruch_pl(2, 1);
  LatticeVector xi{1, -2};
  MorseContext base(fixed_point_data(f, phi));
  MorseContext shifted(fixed_point_data(f, phi.plus_linear(f, xi)));
  auto w = base.default_window(2);
  FormalCharacter a = index_character(base, w);
  std::vector<LatticeVector> moved;
  for (const auto& v : w) moved.push_back(v + xi);
  EXPECT_EQ(index_character(shifted, moved), a.shifted(xi));
}

TEST(Fan, JurkiewiczHasNoStrictlyConvexFunction) {
  Fan f = jurkiewicz_fan();
  auto rep = validate(f);
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.cone_count, 22u);
  EXPECT_FALSE(strictly_convex(f, jurkiewicz_pl()));
  EXPECT_FALSE(admits_strictly_convex(f));
  EXPECT_EQ(fixed_point_data(f, jurkiewicz_pl()).points.size(), 22u);
}

TEST(Fan, JurkiewiczCoarseFanIsSingular) {
  auto rep = validate(jurkiewicz_coarse_fan());
  EXPECT_TRUE(rep.complete);
  EXPECT_FALSE(rep.smooth);
}

TEST(Scenario, CheckRejectsBadData) {
  Scenario sc;
  sc.rank = 2;
  sc.dim = 1;
  sc.points.push_back({"p", {LatticeVector{0, 0}}, FormalCharacter::monomial({0, 0})});
  EXPECT_THROW(sc.check(), InputError);
  sc.points[0].isotropy_weights = {LatticeVector{1, 0}, LatticeVector{0, 1}};
  EXPECT_THROW(sc.check(), InputError);
  sc.points[0].isotropy_weights = {LatticeVector{1, 0}};
  sc.points[0].fiber = FormalCharacter::monomial({0, 0}, -1);
  EXPECT_THROW(sc.check(), InputError);
}
