#pragma once

// Built-in example manifolds: projective spaces, Hirzebruch surfaces, the
// non-projective Jurkiewicz threefold, Tolman's six-point data and full flag
// manifolds.

#include <optional>
#include <string>
#include <vector>

#include "ehm/fan.hpp"
#include "ehm/weyl.hpp"

namespace ehm {

struct BuiltinParams {
  long r = 2;
  long s = 1;
  long a = 1;
  long n = 2;
  std::optional<LatticeVector> lambda;  // highest weight for flag examples
};

struct BuiltinExample {
  std::string name;
  std::string description;
  std::optional<Fan> fan;
  std::optional<PLFunction> pl;
  Scenario scenario;
  std::optional<LatticeVector> chamber;    // preferred chamber vector, when the example has one
  std::optional<RootType> root_type;       // flag examples
  std::optional<LatticeVector> highest_weight;
};

std::vector<std::string> builtin_names();
// Throws InputError for an unknown name or bad parameters.
BuiltinExample builtin(const std::string& name, const BuiltinParams& params = {});

// Rays e_1..e_n then v_0 = -(e_1 + ... + e_n); cones p_i omit e_i, p_{n+1} = {e_1..e_n}.
Fan projective_fan(long n);
// phi(e_i) = 0, phi(v_0) = -r.
PLFunction projective_pl(long n, long r);

// Rays e1, e2, -e1, -a e1 - e2.
Fan hirzebruch_fan(long a);
PLFunction hirzebruch_pl(long r, long s);

// Smooth complete fan with 13 rays and 22 cones that carries no strictly convex function.
Fan jurkiewicz_fan();
PLFunction jurkiewicz_pl();
// The 8-cone fan obtained by merging the inner cones into the single cone {d, e, f}.
Fan jurkiewicz_coarse_fan();
LatticeVector jurkiewicz_chamber();

Scenario tolman_scenario();
LatticeVector tolman_chamber();

}  // namespace ehm
