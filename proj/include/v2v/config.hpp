// Command-line and config-file handling for simulation sweeps.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "v2v/engine.hpp"

namespace v2v {

struct CliOptions {
  SimConfig sim;                    // first sweep point; defaults for the rest
  std::vector<int> vue_pairs{10};   // K values to sweep
  std::vector<int> rbs{15};         // N values to sweep
  std::vector<std::uint64_t> seeds{1};
  std::string out_dir = "results";
};

/// Raised when --help is given; what() holds the usage text.
class HelpRequested : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Parses command-line style arguments (without the program name). A
/// `--config <path>` argument loads `key = value` lines first; flags given on
/// the command line override file values. Unknown keys and out-of-range values
/// raise ConfigError naming the key.
CliOptions parse_args(const std::vector<std::string>& args);

/// Loads `path` (empty for none) and applies `overrides` on top of it.
CliOptions parse_config(const std::string& path, const std::vector<std::string>& overrides = {});

} // namespace v2v
