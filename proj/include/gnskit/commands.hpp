#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gnskit/workspace.hpp"

namespace gnskit {

struct CommandOptions {
  TolerancePolicy pol;
  std::uint64_t seed = 0;
  bool text_output = false;
};

/// Verbs understood by run_command, in help order.
const std::vector<std::string>& command_verbs();

/// Dispatches one verb against the workspace and returns its report. Domain
/// failures propagate as Error; unknown verbs and entities raise UnknownVerb,
/// UnknownEntity or Usage.
Json run_command(const Workspace& ws, const std::string& verb,
                 const std::vector<std::string>& args, const CommandOptions& options);

struct CommandOutcome {
  int exit_code = 0;       // 0 ok, 1 domain error, 2 usage or parse error
  std::string report;      // for standard output
  std::string diagnostic;  // for standard error
};

/// Loads the workspace file and runs the verb, rendering the report.
CommandOutcome execute(const std::string& workspace_path, const std::string& verb,
                       const std::vector<std::string>& args, const CommandOptions& options);

/// Flattened "path = value" lines for --output text.
std::string render_text(const Json& report);

}  // namespace gnskit
