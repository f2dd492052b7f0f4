#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "ehm/cli/io.hpp"
#include "ehm/cli/render.hpp"
#include "ehm/cli/run.hpp"
#include "ehm/errors.hpp"

using namespace ehm;
using namespace ehm::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(CommandRequest req) {
  std::ostringstream out, err;
  int code = run(req, out, err);
  return {code, out.str(), err.str()};
}

CommandRequest example(const std::string& name, const std::string& command) {
  CommandRequest r;
  r.example = name;
  r.command = command;
  return r;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ehm_test_" + std::to_string(::getpid()) + "_" + name);
}

std::size_t count(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
  return n;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, ExitCodes) {
  EXPECT_EQ(call(example("cp2", "index")).code, kConsistent);
  EXPECT_EQ(call(example("cp2", "obstruction")).code, kConsistent);
  EXPECT_EQ(call(example("jurkiewicz", "obstruction")).code, kViolation);
  EXPECT_EQ(call(example("tolman", "obstruction")).code, kViolation);
  EXPECT_EQ(call(example("nowhere", "index")).code, kInputError);
  CommandRequest both = example("cp2", "index");
  both.input = "file.json";
  EXPECT_EQ(call(both).code, kInputError);
  CommandRequest bad_format = example("cp2", "index");
  bad_format.format = "xml";
  EXPECT_EQ(call(bad_format).code, kInputError);
}

TEST(Cli, UnknownCommandPrintsUsage) {
  Result r = call(example("cp2", "frobnicate"));
  EXPECT_EQ(r.code, kInputError);
  EXPECT_NE(r.err.find("usage:"), std::string::npos);
  EXPECT_NE(r.err.find("morse-check"), std::string::npos);
}

TEST(Cli, IndexOfProjectivePlane) {
  CommandRequest req = example("cp2", "index");
  req.format = "json";
  Result r = call(req);
  ASSERT_EQ(r.code, kConsistent);
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["character"].size(), 6u);
  req.weight = LatticeVector{1, 1};
  Json one = Json::parse(call(req).out);
  EXPECT_EQ(one["coefficient"], 1);
}

TEST(Cli, ChambersListsPolarizingIndices) {
  CommandRequest req = example("cp2", "chambers");
  req.format = "json";
  Json j = Json::parse(call(req).out);
  EXPECT_EQ(j["count"], 6);
  bool found = false;
  for (const auto& c : j["chambers"])
    if (vector_from_json(c["representative"]) == LatticeVector{2, 1})
      found = c["polarizing_indices"] == Json({0, 1, 2});
  EXPECT_TRUE(found);
}

TEST(Cli, ObstructionReportsTheWitness) {
  CommandRequest req = example("tolman", "obstruction");
  req.format = "json";
  Result r = call(req);
  EXPECT_EQ(r.code, kViolation);
  Json j = Json::parse(r.out);
  EXPECT_EQ(vector_from_json(j["obstruction"]["weight"]), (LatticeVector{1, 2}));
  EXPECT_EQ(j["obstruction"]["degree"], 2);
}

TEST(Cli, ExportRoundTrip) {
  auto path = temp_path("hirzebruch.json");
  CommandRequest exp = example("hirzebruch", "export");
  exp.output = path.string();
  ASSERT_EQ(call(exp).code, kConsistent);

  CommandRequest a = example("hirzebruch", "index");
  a.format = "csv";
  CommandRequest b;
  b.command = "index";
  b.input = path.string();
  b.format = "csv";
  Result ra = call(a), rb = call(b);
  EXPECT_EQ(rb.code, kConsistent);
  EXPECT_EQ(ra.out, rb.out);
  EXPECT_EQ(ra.out.substr(0, ra.out.find('\n')), "x1,x2,coeff");

  // Exporting the loaded file again gives the same document.
  CommandRequest again;
  again.command = "export";
  again.input = path.string();
  EXPECT_EQ(Json::parse(call(again).out), Json::parse(slurp(path)));
  std::filesystem::remove(path);
}

TEST(Cli, ScenarioRoundTrip) {
  Scenario sc = builtin("tolman").scenario;
  Json j = scenario_to_json(sc);
  Scenario back = scenario_from_json(j);
  EXPECT_EQ(scenario_to_json(back), j);
  EXPECT_EQ(j.dump(), scenario_to_json(scenario_from_json(Json::parse(j.dump()))).dump());
  ASSERT_EQ(back.points.size(), sc.points.size());
  for (std::size_t i = 0; i < sc.points.size(); ++i) {
    EXPECT_EQ(back.points[i].isotropy_weights, sc.points[i].isotropy_weights);
    EXPECT_EQ(back.points[i].fiber, sc.points[i].fiber);
  }
}

TEST(Cli, MalformedDocumentsAreInputErrors) {
  EXPECT_THROW(scenario_from_json(Json::parse(R"({"rank": 2, "dim": 1, "fixed_points": [
      {"label": "p", "weights": [[1, 0], [0, 1]], "fiber": [[0, 0]]}]})")),
               InputError);
  EXPECT_THROW(parse_vector("1,x"), InputError);
  EXPECT_THROW(cohomology_from_json(Json::parse(R"([{"degree": 5, "weight": [0,0], "multiplicity": 1}])"), 2, 2),
               InputError);
  auto path = temp_path("broken.json");
  std::ofstream(path) << "{ not json";
  CommandRequest req;
  req.command = "index";
  req.input = path.string();
  EXPECT_EQ(call(req).code, kInputError);
  std::filesystem::remove(path);
}

TEST(Cli, GammaSvgHasOneApexPerPoint) {
  auto path = temp_path("gamma.svg");
  CommandRequest req = example("cp2", "gamma");
  req.svg = path.string();
  req.weight = LatticeVector{1, 0};
  ASSERT_EQ(call(req).code, kConsistent);
  std::string svg = slurp(path);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_EQ(count(svg, "class=\"apex\""), 3u);
  std::filesystem::remove(path);
  EXPECT_THROW(svg_regions(MorseContext(builtin("jurkiewicz").scenario), 0, {}), UnsupportedType);
}

TEST(Cli, MorseCheckAndToricCohomology) {
  EXPECT_EQ(call(example("cp2", "morse-check")).code, kConsistent);
  EXPECT_EQ(call(example("flag-a2", "morse-check")).code, kConsistent);
  EXPECT_EQ(call(example("tolman", "morse-check")).code, kInputError);
  Result r = call(example("hirzebruch", "toric-cohomology"));
  EXPECT_EQ(r.code, kConsistent);
  EXPECT_NE(r.out.find("H0: e^(0,0) + e^(0,1) + e^(1,0)"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("H2: 0"), std::string::npos);
}

TEST(Cli, FlagCommand) {
  CommandRequest req;
  req.command = "flag";
  req.root_type = "B2";
  req.format = "json";
  Result r = call(req);
  ASSERT_EQ(r.code, kConsistent) << r.err;
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["weyl_group_order"], 8);
  EXPECT_EQ(j["dimension"], 16);
  req.root_type = "E8";
  EXPECT_EQ(call(req).code, kInputError);
}

TEST(Cli, ValidateAndDescribe) {
  CommandRequest req = example("jurkiewicz", "validate");
  req.format = "json";
  Json j = Json::parse(call(req).out);
  EXPECT_EQ(j["cone_count"], 22);
  EXPECT_EQ(j["smooth"], true);
  EXPECT_EQ(j["admits_strictly_convex"], false);
  Result d = call(example("tolman", ""));
  EXPECT_EQ(d.code, kConsistent);
  EXPECT_NE(d.out.find("6 fixed points"), std::string::npos);
}

TEST(Cli, BinaryParsesArguments) {
  auto exit_of = [](const std::string& args) {
    std::string cmd = std::string(EHM_BINARY) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  EXPECT_EQ(exit_of("example cp2 --r 2 index"), 0);
  EXPECT_EQ(exit_of("example tolman obstruction"), 1);
  EXPECT_EQ(exit_of("example cp2 verdict --weight 1,0 --format json"), 0);
  EXPECT_EQ(exit_of("example cp2 index --weight 1,zz"), 2);
  EXPECT_EQ(exit_of("bogus"), 2);
}
