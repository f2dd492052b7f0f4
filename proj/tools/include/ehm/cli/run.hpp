#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "ehm/builtins.hpp"

namespace ehm::cli {

struct CommandRequest {
  std::string command;
  std::optional<std::string> input;    // path to a fan or scenario document
  std::optional<std::string> example;  // built-in example name
  BuiltinParams params;
  std::optional<LatticeVector> chamber;
  std::optional<LatticeVector> weight;
  long margin = 3;
  std::string format = "text";  // text | json | csv
  std::optional<std::string> svg;
  std::optional<std::string> output;
  std::optional<std::string> cohomology;
  std::optional<std::string> root_type;  // for `flag`
};

// Exit codes.
constexpr int kConsistent = 0;
constexpr int kViolation = 1;
constexpr int kInputError = 2;

std::string usage();
int run(const CommandRequest& request, std::ostream& out, std::ostream& err);

}  // namespace ehm::cli
