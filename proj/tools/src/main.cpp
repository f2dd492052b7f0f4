#include <CLI11.hpp>

#include <iostream>

#include "ehm/cli/io.hpp"
#include "ehm/cli/run.hpp"
#include "ehm/errors.hpp"

int main(int argc, char** argv) {
  using namespace ehm::cli;
  CLI::App app{"Equivariant holomorphic Morse inequalities"};
  app.footer(usage());

  std::vector<std::string> words;
  std::string input, chamber, weight, lambda, svg, output, cohomology, type;
  CommandRequest req;
  app.add_option("words", words, "command, or: example <name> [command]");
  app.add_option("-i,--input", input, "fan or scenario JSON file");
  app.add_option("--chamber", chamber, "integral vector inside the chamber, e.g. 2,1");
  app.add_option("--weight", weight, "weight, e.g. 1,2");
  app.add_option("--margin", req.margin, "window margin around the fiber weights")->capture_default_str();
  app.add_option("--format", req.format, "text, json or csv")->capture_default_str();
  app.add_option("--svg", svg, "write an SVG drawing (rank 2)");
  app.add_option("-o,--output", output, "output file for export");
  app.add_option("--cohomology", cohomology, "cohomology JSON file for morse-check");
  app.add_option("--type", type, "root system type for flag: A1, A2, A1xA1, B2, G2, A3");
  app.add_option("--r", req.params.r, "line bundle parameter r")->capture_default_str();
  app.add_option("--s", req.params.s, "line bundle parameter s")->capture_default_str();
  app.add_option("--a", req.params.a, "Hirzebruch parameter a")->capture_default_str();
  app.add_option("--n", req.params.n, "dimension of projective space")->capture_default_str();
  app.add_option("--lambda", lambda, "highest weight for flag examples, e.g. 1,1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (words.empty()) {
      std::cerr << usage();
      return kInputError;
    }
    if (words[0] == "example") {
      if (words.size() < 2 || words.size() > 3) {
        std::cerr << usage();
        return kInputError;
      }
      req.example = words[1];
      if (words.size() == 3) req.command = words[2];
    } else {
      if (words.size() != 1) {
        std::cerr << usage();
        return kInputError;
      }
      req.command = words[0];
    }
    if (!input.empty()) req.input = input;
    if (!chamber.empty()) req.chamber = parse_vector(chamber);
    if (!weight.empty()) req.weight = parse_vector(weight);
    if (!lambda.empty()) req.params.lambda = parse_vector(lambda);
    if (!svg.empty()) req.svg = svg;
    if (!output.empty()) req.output = output;
    if (!cohomology.empty()) req.cohomology = cohomology;
    if (!type.empty()) req.root_type = type;
  } catch (const ehm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return run(req, std::cout, std::cerr);
}
