#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gnebench/harness.hpp"

namespace gne {

struct CliOptions {
  std::string mode;         // run | compare | ranks
  ExperimentPlan plan;      // populated for run/compare
  std::string ranks_input;  // populated for ranks
  std::string out_path;     // empty = console only
  std::string format = "csv";  // csv | json | both
};

// Parses argv (program name excluded); throws std::invalid_argument with a
// usage message on bad input. Exposed separately so tests can drive the
// parser without process spawning.
CliOptions cli_parse(const std::vector<std::string>& args);

// Full dispatch: parse, execute, print. Returns the process exit code:
// 0 success, 1 usage error, 2 any cell or I/O failure.
int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

int cli_main(int argc, const char* const* argv);

}  // namespace gne
