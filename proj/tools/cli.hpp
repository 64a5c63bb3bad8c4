#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fiblab/io.hpp"

namespace fiblab::cli {

/// Registered command names, in help order.
const std::vector<std::string>& commands();

struct CommandRequest {
  std::string command;
  /// Object with the payloads a command reads: "map", "space", "set", "category", "functor", ...
  io::Json inputs = io::Json::object();
  std::optional<std::string> mode;  // exact | bounded
  std::optional<int> bound;
  std::optional<int> l_max;
  std::uint64_t seed = 20161027;
  bool json = false;
  bool full = false;
  /// Empty picks the command default.
  std::string side;
  std::string variant = "zeroth";
  int vertex = 0;
  std::string direction = "under";
  bool general = false;
  bool initial = false;
  std::optional<int> criterion;
  std::string yoneda_mode = "all";
};

/// Exit status: 0 when every checked claim holds, 1 when one fails, 2 on input errors.
int execute(const CommandRequest& req, std::ostream& out, std::ostream& err);

/// Parses command-line arguments (without the program name) and executes them.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fiblab::cli
