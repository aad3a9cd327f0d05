#ifndef DEPSENT_CLI_HPP
#define DEPSENT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace depsent {

/// Parsed command line. rules is an XML file path or "builtin";
/// rules_subset is a comma-separated list of rule names, empty = all
/// (evaluate without a subset produces the ablation table).
struct RunConfig {
  std::string command;
  std::string lexicon;
  std::string rules = "builtin";
  std::vector<std::string> inputs;
  std::string format = "records"; // table | records | trace
  std::string rules_subset;
  int jobs = 1;
  int sentence = 1; // explain: 1-based sentence to trace
};

/// Executes one command. Output goes to out only on success; errors are a
/// one-line diagnostic on err. Returns the process exit status.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Argument parsing wrapper around run().
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace depsent

#endif
