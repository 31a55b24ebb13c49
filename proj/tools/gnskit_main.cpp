#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gnskit/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Finite-dimensional GNS representations, positive functionals and reproducing kernels"};
  app.set_version_flag("--version", "gnskit 0.1.0");

  std::string workspace;
  std::string verb;
  std::vector<std::string> args;
  gnskit::CommandOptions options;
  std::string output = "json";

  std::string verbs;
  for (const auto& v : gnskit::command_verbs()) verbs += (verbs.empty() ? "" : ", ") + v;

  app.add_option("workspace", workspace, "Workspace JSON file")->required();
  app.add_option("verb", verb, "One of: " + verbs)->required();
  app.add_option("args", args, "Entity names and numbers for the verb");
  app.add_option("--tol-rank", options.pol.rel_rank_tol, "Relative rank cutoff")->capture_default_str();
  app.add_option("--tol-psd", options.pol.psd_tol, "PSD tolerance")->capture_default_str();
  app.add_option("--tol-match", options.pol.match_tol, "Matching tolerance")->capture_default_str();
  app.add_option("--seed", options.seed, "Seed for decompose")->capture_default_str();
  app.add_option("--output", output, "Report format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();
  app.positionals_at_end(false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  options.text_output = output == "text";

  const auto outcome = gnskit::execute(workspace, verb, args, options);
  std::cout << outcome.report;
  std::cerr << outcome.diagnostic;
  return outcome.exit_code;
}
