#pragma once

#include <map>
#include <stdexcept>
#include <string>

namespace desynclab {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat key=value configuration with [section] headers. '#' and ';' start
// comments; blank lines are skipped; keys before any section land in the
// "" section. Section and key names are trimmed verbatim (no case
// folding). Syntax problems raise ConfigError naming path and line.
using ConfigSections = std::map<std::string, std::map<std::string, std::string>>;

ConfigSections parse_config_file(const std::string& path);

}  // namespace desynclab
