#include "ehm/cli/io.hpp"

#include <fstream>
#include <sstream>

#include "ehm/errors.hpp"

namespace ehm::cli {
namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t as_size(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw InputError(std::string(what) + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

Integer as_integer(const Json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::invalid_argument&) {
    }
  }
  throw InputError("expected an integer, got " + j.dump());
}

Json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

Json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace

LatticeVector parse_vector(const std::string& text) {
  std::vector<Integer> coords;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw InputError("empty coordinate in '" + text + "'");
    try {
      coords.emplace_back(item.substr(b, e - b + 1));
    } catch (const std::invalid_argument&) {
      throw InputError("'" + text + "' is not an integer vector");
    }
  }
  if (coords.empty()) throw InputError("empty vector");
  return LatticeVector(std::move(coords));
}

LatticeVector vector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw InputError("expected a nonempty integer list, got " + j.dump());
  std::vector<Integer> coords;
  for (const auto& x : j) coords.push_back(as_integer(x));
  return LatticeVector(std::move(coords));
}

Json to_json(const LatticeVector& v) {
  Json out = Json::array();
  for (const auto& c : v) out.push_back(integer_json(c));
  return out;
}

Json to_json(const FormalCharacter& ch) {
  Json out = Json::array();
  for (const auto& [w, m] : ch.terms()) out.push_back({{"weight", to_json(w)}, {"multiplicity", integer_json(m)}});
  return out;
}

Fan fan_from_json(const Json& j) {
  std::size_t rank = as_size(field(j, "rank"), "rank");
  std::vector<LatticeVector> rays;
  for (const auto& r : field(j, "rays")) rays.push_back(vector_from_json(r));
  std::vector<std::vector<std::size_t>> cones;
  for (const auto& c : field(j, "max_cones")) {
    if (!c.is_array()) throw InputError("max_cones entries must be index lists");
    std::vector<std::size_t> idx;
    for (const auto& i : c) idx.push_back(as_size(i, "cone index"));
    cones.push_back(std::move(idx));
  }
  std::vector<std::string> labels, ray_labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  if (j.contains("ray_labels")) ray_labels = j.at("ray_labels").get<std::vector<std::string>>();
  return Fan(rank, std::move(rays), std::move(cones), std::move(labels), std::move(ray_labels));
}

Json fan_to_json(const Fan& fan, const std::optional<PLFunction>& pl) {
  Json j;
  j["rank"] = fan.rank();
  j["rays"] = Json::array();
  for (const auto& r : fan.rays()) j["rays"].push_back(to_json(r));
  j["max_cones"] = fan.max_cones();
  if (pl) {
    Json vals = Json::array();
    for (const auto& v : pl->values()) vals.push_back(integer_json(v));
    j["pl"] = vals;
  }
  if (!fan.cone_labels().empty()) j["labels"] = fan.cone_labels();
  if (!fan.ray_labels().empty()) j["ray_labels"] = fan.ray_labels();
  return j;
}

Scenario scenario_from_json(const Json& j) {
  Scenario sc;
  sc.rank = as_size(field(j, "rank"), "rank");
  sc.dim = as_size(field(j, "dim"), "dim");
  for (const auto& p : field(j, "fixed_points")) {
    FixedPointDatum d;
    d.label = p.contains("label") ? p.at("label").get<std::string>() : "p" + std::to_string(sc.points.size() + 1);
    for (const auto& w : field(p, "weights")) d.isotropy_weights.push_back(vector_from_json(w));
    d.fiber = FormalCharacter(sc.rank);
    for (const auto& f : field(p, "fiber")) {
      if (f.is_array())
        d.fiber.add(vector_from_json(f), 1);
      else
        d.fiber.add(vector_from_json(field(f, "weight")), f.contains("multiplicity") ? as_integer(f.at("multiplicity")) : Integer(1));
    }
    sc.points.push_back(std::move(d));
  }
  sc.check();
  return sc;
}

Json scenario_to_json(const Scenario& scenario) {
  Json j;
  j["rank"] = scenario.rank;
  j["dim"] = scenario.dim;
  j["fixed_points"] = Json::array();
  for (const auto& p : scenario.points) {
    Json w = Json::array();
    for (const auto& x : p.isotropy_weights) w.push_back(to_json(x));
    j["fixed_points"].push_back({{"label", p.label}, {"weights", w}, {"fiber", to_json(p.fiber)}});
  }
  return j;
}

Input input_from_json(const Json& j) {
  Input in;
  if (j.is_object() && j.contains("rays")) {
    in.fan = fan_from_json(j);
    if (j.contains("pl")) {
      std::vector<Integer> vals;
      for (const auto& v : j.at("pl")) vals.push_back(as_integer(v));
      in.pl = PLFunction(std::move(vals));
    } else {
      in.pl = PLFunction::zero(*in.fan);
    }
    in.scenario = fixed_point_data(*in.fan, *in.pl);
  } else {
    in.scenario = scenario_from_json(j);
  }
  return in;
}

Input load_input(const std::string& path) {
  try {
    return input_from_json(parse_file(path));
  } catch (const Json::exception& e) {
    throw InputError("malformed input '" + path + "': " + e.what());
  }
}

MorsePolynomial cohomology_from_json(const Json& j, std::size_t rank, std::size_t dim) {
  const Json& list = j.is_object() ? field(j, "cohomology") : j;
  if (!list.is_array()) throw InputError("cohomology must be a list of entries");
  MorsePolynomial h(rank, dim);
  for (const auto& e : list) {
    std::size_t k = as_size(field(e, "degree"), "degree");
    if (k > dim) throw InputError("cohomology degree " + std::to_string(k) + " exceeds dimension " + std::to_string(dim));
    LatticeVector w = vector_from_json(field(e, "weight"));
    if (w.rank() != rank) throw InputError("cohomology weight " + w.str() + " has the wrong rank");
    Integer m = e.contains("multiplicity") ? as_integer(e.at("multiplicity")) : Integer(1);
    if (m < 0) throw InputError("negative multiplicity at " + w.str());
    h[k].add(w, m);
  }
  return h;
}

MorsePolynomial load_cohomology(const std::string& path, std::size_t rank, std::size_t dim) {
  try {
    return cohomology_from_json(parse_file(path), rank, dim);
  } catch (const Json::exception& e) {
    throw InputError("malformed cohomology '" + path + "': " + e.what());
  }
}

}  // namespace ehm::cli
