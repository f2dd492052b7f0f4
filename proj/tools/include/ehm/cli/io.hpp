#pragma once

// JSON reading and writing for fans, scenarios and cohomology tables.
//
// Fan document:
//   {"rank": 2, "rays": [[1,0],[0,1],[-1,-1]], "max_cones": [[0,1],[1,2],[2,0]],
//    "pl": [0,0,-2], "labels": ["p3","p1","p2"], "ray_labels": ["e1","e2","v0"]}
// `labels` names the maximal cones; `pl` and both label lists are optional.
//
// Scenario document:
//   {"rank": 2, "dim": 3, "fixed_points": [
//     {"label": "p1", "weights": [[-1,0],[0,-1],[-1,-1]],
//      "fiber": [{"weight": [0,0], "multiplicity": 1}]}]}
// A fiber entry may also be a bare weight, meaning multiplicity 1.
//
// Cohomology document: [{"degree": 0, "weight": [0,0], "multiplicity": 1}, ...]
// or the same list under the key "cohomology".

#include <json.hpp>

#include <optional>
#include <string>

#include "ehm/fan.hpp"

namespace ehm::cli {

using Json = nlohmann::json;

struct Input {
  std::optional<Fan> fan;
  std::optional<PLFunction> pl;
  Scenario scenario;
};

LatticeVector parse_vector(const std::string& text);  // "1,-2,0"
LatticeVector vector_from_json(const Json& j);
Json to_json(const LatticeVector& v);
Json to_json(const FormalCharacter& ch);

Fan fan_from_json(const Json& j);
Json fan_to_json(const Fan& fan, const std::optional<PLFunction>& pl);
Scenario scenario_from_json(const Json& j);
Json scenario_to_json(const Scenario& scenario);

// A fan document is recognized by its "rays" key. Fans without "pl" use phi = 0.
Input input_from_json(const Json& j);
Input load_input(const std::string& path);

// Entries are checked for nonnegative multiplicity and degree within 0..dim.
MorsePolynomial cohomology_from_json(const Json& j, std::size_t rank, std::size_t dim);
MorsePolynomial load_cohomology(const std::string& path, std::size_t rank, std::size_t dim);

}  // namespace ehm::cli
