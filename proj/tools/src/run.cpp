#include "ehm/cli/run.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "ehm/cli/io.hpp"
#include "ehm/cli/render.hpp"
#include "ehm/errors.hpp"

namespace ehm::cli {
namespace {

struct Loaded {
  Input input;
  std::optional<BuiltinExample> example;
};

struct Session {
  const CommandRequest& req;
  Loaded data;
  std::ostream& out;
  std::optional<MorseContext> ctx_;

  MorseContext& ctx() {
    if (!ctx_) ctx_.emplace(data.input.scenario);
    return *ctx_;
  }
  bool json() const { return req.format == "json"; }
  bool csv() const { return req.format == "csv"; }

  std::size_t chamber() {
    if (req.chamber) return ctx().locate(*req.chamber);
    if (data.example && data.example->chamber) return ctx().locate(*data.example->chamber);
    return 0;
  }
  std::vector<LatticeVector> window() { return ctx().default_window(req.margin); }

  void emit(const Json& j) { out << j.dump(2) << "\n"; }
  void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw InputError("cannot write '" + path + "'");
    f << text;
  }
};

Loaded load(const CommandRequest& req) {
  if (req.input.has_value() == req.example.has_value())
    throw InputError("give exactly one of --input FILE or `example NAME`");
  Loaded l;
  if (req.input) {
    l.input = load_input(*req.input);
  } else {
    BuiltinExample ex = builtin(*req.example, req.params);
    l.input.fan = ex.fan;
    l.input.pl = ex.pl;
    l.input.scenario = ex.scenario;
    l.example = std::move(ex);
  }
  return l;
}

std::string join_sizes(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string weights_str(const std::vector<LatticeVector>& ws) {
  std::string s = "{";
  for (std::size_t i = 0; i < ws.size(); ++i) s += (i ? ", " : "") + ws[i].str();
  return s + "}";
}

std::string char_str(const FormalCharacter& ch) {
  if (ch.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, m] : ch.terms()) {
    if (!first) s += " + ";
    first = false;
    if (m != 1) s += m.get_str() + "*";
    s += "e^" + w.str();
  }
  return s;
}

Json verdict_json(const SupportVerdict& sv) {
  Json degs = Json::array();
  for (std::size_t k = 0; k < sv.degrees.size(); ++k) {
    const auto& d = sv.degrees[k];
    Json e{{"degree", k}, {"verdict", to_string(d.status)}};
    if (d.multiplicity) e["multiplicity"] = d.multiplicity->get_si();
    e["excluding_chambers"] = d.excluding_chambers;
    e["forcing_chambers"] = d.forcing_chambers;
    degs.push_back(e);
  }
  return {{"weight", to_json(sv.weight)}, {"degrees", degs}};
}

Json witness_json(MorseContext& ctx, const ObstructionWitness& w) {
  auto labels = [&](const RegionCertificate& c) {
    std::vector<std::string> out;
    for (const auto& [p, cert] : c.witnesses) out.push_back(ctx.scenario().points[p].label);
    return out;
  };
  return {{"weight", to_json(w.weight)},
          {"degree", w.degree},
          {"conflicting_degrees", w.conflicting_degrees},
          {"forcing_chamber", to_json(ctx.chambers()[w.forcing_chamber].representative)},
          {"excluding_chamber", to_json(ctx.chambers()[w.excluding_chamber].representative)},
          {"forced_multiplicity", w.forced_multiplicity.get_si()},
          {"reason", w.reason},
          {"forcing_points", labels(w.forcing_member)}};
}

int cmd_validate(Session& s) {
  if (!s.data.input.fan) throw InputError("validate needs fan input");
  const Fan& fan = *s.data.input.fan;
  ValidationReport rep = validate(fan);
  Json j{{"simplicial", rep.simplicial}, {"smooth", rep.smooth}, {"complete", rep.complete},
         {"cone_count", rep.cone_count}, {"failing_cones", rep.failing_cones}, {"problems", rep.problems}};
  if (rep.ok()) j["admits_strictly_convex"] = admits_strictly_convex(fan);
  if (s.data.input.pl && rep.ok()) {
    j["strictly_convex"] = strictly_convex(fan, *s.data.input.pl);
    j["convex"] = convex(fan, *s.data.input.pl);
  }
  if (s.json()) {
    s.emit(j);
  } else {
    s.out << "cones: " << rep.cone_count << "\nsimplicial: " << rep.simplicial << "\nsmooth: " << rep.smooth
          << "\ncomplete: " << rep.complete << "\n";
    for (const auto& p : rep.problems) s.out << "problem: " << p << "\n";
    if (j.contains("admits_strictly_convex"))
      s.out << "admits strictly convex function: " << j["admits_strictly_convex"].get<bool>() << "\n";
    if (j.contains("strictly_convex")) s.out << "given function strictly convex: " << j["strictly_convex"].get<bool>() << "\n";
  }
  return rep.ok() ? kConsistent : kViolation;
}

int cmd_fixed_points(Session& s) {
  auto& ctx = s.ctx();
  std::size_t c = s.chamber();
  if (s.json()) {
    Json j = scenario_to_json(ctx.scenario());
    for (std::size_t p = 0; p < ctx.scenario().points.size(); ++p)
      j["fixed_points"][p]["polarizing_index"] = ctx.polarizing_index(c, p);
    j["chamber"] = to_json(ctx.chambers()[c].representative);
    s.emit(j);
    return kConsistent;
  }
  s.out << ctx.scenario().points.size() << " fixed points, dimension " << ctx.dim() << ", chamber "
        << ctx.chambers()[c].representative << "\n";
  for (std::size_t p = 0; p < ctx.scenario().points.size(); ++p) {
    const auto& pt = ctx.scenario().points[p];
    s.out << pt.label << ": weights " << weights_str(pt.isotropy_weights) << ", fiber " << char_str(pt.fiber)
          << ", n = " << ctx.polarizing_index(c, p) << "\n";
  }
  return kConsistent;
}

int cmd_chambers(Session& s) {
  auto& ctx = s.ctx();
  Json arr = Json::array();
  for (const auto& ch : ctx.chambers()) {
    std::vector<std::size_t> idx;
    for (std::size_t p = 0; p < ctx.scenario().points.size(); ++p) idx.push_back(ctx.polarizing_index(ch.id, p));
    arr.push_back({{"id", ch.id}, {"representative", to_json(ch.representative)}, {"signs", ch.signs},
                   {"polarizing_indices", idx}, {"opposite", ctx.opposite(ch.id)}});
  }
  if (s.json()) {
    s.emit({{"count", ctx.chambers().size()}, {"chambers", arr}});
  } else {
    s.out << ctx.chambers().size() << " chambers\n";
    for (const auto& c : arr)
      s.out << "C" << c["id"].get<std::size_t>() << " " << vector_from_json(c["representative"]).str()
            << " indices " << join_sizes(c["polarizing_indices"].get<std::vector<std::size_t>>()) << "\n";
  }
  return kConsistent;
}

int cmd_index(Session& s) {
  auto& ctx = s.ctx();
  if (s.req.weight) {
    const LatticeVector& xi = *s.req.weight;
    Integer coeff;
    try {
      coeff = index_coefficient(ctx, xi);
    } catch (const ChamberInconsistency& e) {
      s.out << "chamber inconsistency: " << e.what() << "\n";
      return kViolation;
    }
    if (s.json())
      s.emit({{"weight", to_json(xi)}, {"coefficient", coeff.get_si()}});
    else
      s.out << "index at " << xi << ": " << coeff << "\n";
    return kConsistent;
  }
  auto window = s.window();
  FormalCharacter ch;
  try {
    ch = index_character(ctx, window);
  } catch (const ChamberInconsistency& e) {
    s.out << "chamber inconsistency: " << e.what() << "\n";
    return kViolation;
  }
  if (s.csv()) {
    s.out << csv_character(ch);
  } else if (s.json()) {
    s.emit({{"window_size", window.size()}, {"character", to_json(ch)}});
  } else {
    s.out << ch.size() << " weights with nonzero index in a window of " << window.size() << "\n";
    for (const auto& [w, m] : ch.terms()) s.out << w << " " << m << "\n";
  }
  return kConsistent;
}

int cmd_gamma(Session& s) {
  auto& ctx = s.ctx();
  std::size_t c = s.chamber();
  Json arr = Json::array();
  for (std::size_t p = 0; p < ctx.scenario().points.size(); ++p) {
    GammaRegion g = ctx.region(c, p);
    Json gens = Json::array();
    for (const auto& gen : g.generators) gens.push_back({{"direction", to_json(gen.direction)}, {"strict", gen.strict}});
    Json apexes = Json::array();
    for (const auto& a : g.apexes) apexes.push_back(to_json(a));
    Json e{{"point", g.point_label}, {"degree", g.degree}, {"apexes", apexes}, {"generators", gens}};
    if (s.req.weight) {
      auto cert = gamma_membership(g, *s.req.weight);
      e["contains"] = cert.has_value();
      if (cert) {
        Json coeffs = Json::array();
        for (const auto& q : cert->coefficients) coeffs.push_back(q.get_str());
        e["certificate"] = {{"apex", to_json(cert->apex)}, {"coefficients", coeffs}};
      }
    }
    arr.push_back(e);
  }
  if (s.req.svg) s.write_file(*s.req.svg, svg_regions(ctx, c, s.window()));
  if (s.json()) {
    s.emit({{"chamber", to_json(ctx.chambers()[c].representative)}, {"regions", arr}});
    return kConsistent;
  }
  s.out << "chamber " << ctx.chambers()[c].representative << "\n";
  for (const auto& e : arr) {
    s.out << e["point"].get<std::string>() << " (n=" << e["degree"].get<std::size_t>() << "): apex";
    for (const auto& a : e["apexes"]) s.out << " " << vector_from_json(a);
    s.out << ", directions";
    for (const auto& g : e["generators"])
      s.out << " " << vector_from_json(g["direction"]) << (g["strict"].get<bool>() ? " (strict)" : "");
    if (e.contains("contains")) s.out << ", contains " << s.req.weight->str() << ": " << e["contains"].get<bool>();
    s.out << "\n";
  }
  return kConsistent;
}

int cmd_verdict(Session& s) {
  auto& ctx = s.ctx();
  std::vector<LatticeVector> weights = s.req.weight ? std::vector<LatticeVector>{*s.req.weight} : s.window();
  if (s.req.svg) s.write_file(*s.req.svg, svg_verdicts(ctx, weights));
  if (s.csv()) {
    s.out << csv_verdicts(ctx, weights);
    return kConsistent;
  }
  bool obstructed = false;
  Json arr = Json::array();
  for (const auto& xi : weights) {
    SupportVerdict sv = support_verdict(ctx, xi);
    bool interesting = s.req.weight.has_value();
    for (const auto& d : sv.degrees) {
      interesting = interesting || d.status == Verdict::Forced || d.status == Verdict::Obstructed;
      obstructed = obstructed || d.status == Verdict::Obstructed;
    }
    if (interesting) arr.push_back(verdict_json(sv));
  }
  if (s.json()) {
    s.emit({{"verdicts", arr}, {"obstructed", obstructed}});
  } else {
    for (const auto& v : arr) {
      s.out << vector_from_json(v["weight"]) << ":";
      for (const auto& d : v["degrees"]) {
        s.out << " H" << d["degree"].get<std::size_t>() << "=" << d["verdict"].get<std::string>();
        if (d.contains("multiplicity")) s.out << "(" << d["multiplicity"].get<long>() << ")";
      }
      s.out << "\n";
    }
  }
  return obstructed ? kViolation : kConsistent;
}

MorsePolynomial default_cohomology(Session& s) {
  auto& ctx = s.ctx();
  if (s.req.cohomology) return load_cohomology(*s.req.cohomology, ctx.rank(), ctx.dim());
  if (s.data.example && s.data.example->root_type) {
    MorsePolynomial h(ctx.rank(), ctx.dim());
    h[0] = weyl_character(RootSystem::of_type(*s.data.example->root_type), *s.data.example->highest_weight);
    return h;
  }
  if (s.data.input.fan && ctx.rank() == 2) return toric_cohomology_2d(ctx, s.req.margin);
  throw InputError("morse-check needs --cohomology FILE for this input");
}

int cmd_morse_check(Session& s) {
  auto& ctx = s.ctx();
  std::size_t c = s.chamber();
  MorsePolynomial h = default_cohomology(s);
  auto window = s.window();
  StrongReport strong = verify_strong(ctx, c, h, window);
  WeakReport weak = weak_check(ctx, c, h, window);
  auto viol = [](const std::vector<Violation>& vs) {
    Json a = Json::array();
    for (const auto& v : vs)
      a.push_back({{"weight", to_json(v.weight)}, {"degree", v.degree}, {"value", v.value.get_si()},
                   {"kind", to_string(v.kind)}});
    return a;
  };
  if (s.json()) {
    s.emit({{"chamber", to_json(ctx.chambers()[c].representative)},
            {"window_size", window.size()},
            {"strong", {{"holds", strong.holds}, {"violations", viol(strong.violations)}}},
            {"weak", {{"holds", weak.holds}, {"violations", viol(weak.violations)}}}});
  } else {
    s.out << "chamber " << ctx.chambers()[c].representative << ", window of " << window.size() << " weights\n";
    s.out << "strong inequalities: " << (strong.holds ? "hold" : "violated") << "\n";
    for (std::size_t i = 0; i < strong.violations.size() && i < 20; ++i) {
      const auto& v = strong.violations[i];
      s.out << "  " << to_string(v.kind) << " at " << v.weight << " degree " << v.degree << ": " << v.value << "\n";
    }
    s.out << "weak inequalities: " << (weak.holds ? "hold" : "violated") << "\n";
    for (std::size_t i = 0; i < weak.violations.size() && i < 20; ++i) {
      const auto& v = weak.violations[i];
      s.out << "  " << to_string(v.kind) << " at " << v.weight << " degree " << v.degree << ": " << v.value << "\n";
    }
  }
  return strong.holds && weak.holds ? kConsistent : kViolation;
}

int cmd_obstruction(Session& s) {
  auto& ctx = s.ctx();
  auto w = detect_obstruction(ctx, s.req.margin);
  if (s.req.svg) s.write_file(*s.req.svg, svg_verdicts(ctx, s.window()));
  if (s.json()) {
    s.emit(w ? Json{{"obstruction", witness_json(ctx, *w)}} : Json{{"obstruction", nullptr}});
  } else if (w) {
    Json j = witness_json(ctx, *w);
    s.out << "obstruction at " << w->weight << " in degree " << w->degree << " (conflicting degrees "
          << join_sizes(w->conflicting_degrees) << ")\n";
    s.out << "  forced with multiplicity " << w->forced_multiplicity << " in chamber "
          << ctx.chambers()[w->forcing_chamber].representative << " by";
    for (const auto& l : j["forcing_points"]) s.out << " " << l.get<std::string>();
    s.out << "\n  " << w->reason << " in chamber " << ctx.chambers()[w->excluding_chamber].representative << "\n";
  } else {
    s.out << "no obstruction in a window of " << s.window().size() << " weights\n";
  }
  return w ? kViolation : kConsistent;
}

int cmd_toric_cohomology(Session& s) {
  if (!s.data.input.fan) throw InputError("toric-cohomology needs fan input");
  auto& ctx = s.ctx();
  MorsePolynomial h = toric_cohomology_2d(ctx, s.req.margin);
  if (s.json()) {
    Json arr = Json::array();
    for (std::size_t k = 0; k <= h.degree(); ++k)
      for (const auto& [w, m] : h[k].terms())
        arr.push_back({{"degree", k}, {"weight", to_json(w)}, {"multiplicity", m.get_si()}});
    s.emit({{"cohomology", arr}});
  } else {
    for (std::size_t k = 0; k <= h.degree(); ++k) s.out << "H" << k << ": " << char_str(h[k]) << "\n";
  }
  return kConsistent;
}

int cmd_flag(Session& s) {
  RootType type = s.req.root_type ? parse_root_type(*s.req.root_type)
                                  : (s.data.example && s.data.example->root_type ? *s.data.example->root_type
                                                                                   : RootType::A2);
  RootSystem rs = RootSystem::of_type(type);
  LatticeVector lambda = s.req.params.lambda ? *s.req.params.lambda
                         : (s.data.example && s.data.example->highest_weight ? *s.data.example->highest_weight
                                                                             : rs.rho());
  FormalCharacter ch = weyl_character(rs, lambda);
  OrbitDatum orbit{"flag", {}, {{lambda, Rational(1)}}, {}};
  RepresentationCohomology coh(rs.positive_roots().size() + 1);
  coh[0][lambda] = 1;
  std::vector<OrbitDatum> orbits{orbit};
  MorseContext ctx(flag_fixed_data(rs, lambda));
  auto window = ctx.default_window(s.req.margin);
  NonabelianReport rep = assemble_nonabelian(rs, orbits, rs.dominant_chamber_vector(), coh, window);
  if (s.json()) {
    s.emit({{"type", to_string(type)},
            {"highest_weight", to_json(lambda)},
            {"weyl_group_order", generate_weyl(rs).size()},
            {"dimension", ch.total().get_si()},
            {"character", to_json(ch)},
            {"fixed_point_formula", rep.fixed_point_failures.empty()},
            {"torus_agreement", rep.torus_mismatches.empty()},
            {"strong_inequalities", rep.torus.holds}});
  } else if (s.csv()) {
    s.out << csv_character(ch);
  } else {
    s.out << "type " << to_string(type) << ", highest weight " << lambda << ", |W| = " << generate_weyl(rs).size()
          << "\ndimension " << ch.total() << "\ncharacter " << char_str(ch) << "\n";
    s.out << "fixed-point formula at t=-1: " << (rep.fixed_point_failures.empty() ? "holds" : "fails") << "\n";
    s.out << "agreement with torus-level assembly: " << (rep.torus_mismatches.empty() ? "yes" : "no") << "\n";
    s.out << "strong inequalities on window: " << (rep.torus.holds ? "hold" : "violated") << "\n";
  }
  return rep.holds() ? kConsistent : kViolation;
}

int cmd_export(Session& s) {
  Json j = s.data.input.fan ? fan_to_json(*s.data.input.fan, s.data.input.pl) : scenario_to_json(s.data.input.scenario);
  if (s.req.output)
    s.write_file(*s.req.output, j.dump(2) + "\n");
  else
    s.emit(j);
  return kConsistent;
}

int cmd_describe(Session& s) {
  const auto& ex = *s.data.example;
  s.out << ex.name << ": " << ex.description << "\n"
        << ex.scenario.points.size() << " fixed points, rank " << ex.scenario.rank << ", dimension "
        << ex.scenario.dim << "\n";
  return kConsistent;
}

const std::map<std::string, std::function<int(Session&)>>& commands() {
  static const std::map<std::string, std::function<int(Session&)>> table{
      {"validate", cmd_validate},   {"fixed-points", cmd_fixed_points},
      {"chambers", cmd_chambers},   {"index", cmd_index},
      {"gamma", cmd_gamma},         {"verdict", cmd_verdict},
      {"morse-check", cmd_morse_check}, {"obstruction", cmd_obstruction},
      {"toric-cohomology", cmd_toric_cohomology}, {"flag", cmd_flag},
      {"export", cmd_export},
  };
  return table;
}

}  // namespace

std::string usage() {
  std::ostringstream os;
  os << "usage: ehm <command> --input FILE [options]\n"
     << "       ehm example <name> [<command>] [options]\n"
     << "       ehm flag [--type A2] [--lambda 1,1]\n\ncommands:";
  for (const auto& [name, fn] : commands()) os << " " << name;
  os << "\nexamples:";
  for (const auto& n : builtin_names()) os << " " << n;
  os << "\nexit codes: 0 consistent, 1 violation or obstruction, 2 input error\n";
  return os.str();
}

int run(const CommandRequest& request, std::ostream& out, std::ostream& err) {
  try {
    if (request.format != "text" && request.format != "json" && request.format != "csv")
      throw InputError("unknown format '" + request.format + "'");
    if (request.margin < 0) throw InputError("margin must be nonnegative");
    bool describe = request.command.empty() && request.example;
    auto it = commands().find(request.command);
    if (!describe && it == commands().end()) {
      err << "unknown command '" << request.command << "'\n" << usage();
      return kInputError;
    }
    Loaded data;
    if (request.command == "flag" && !request.input && !request.example) {
      // The flag command can run without a scenario.
    } else {
      data = load(request);
    }
    Session s{request, std::move(data), out, std::nullopt};
    return describe ? cmd_describe(s) : it->second(s);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace ehm::cli
