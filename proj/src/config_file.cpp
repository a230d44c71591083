#include "desynclab/config_file.hpp"

#include <fstream>

namespace desynclab {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

ConfigSections parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError(path + ": cannot open configuration file");

  ConfigSections sections;
  std::string section;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line.erase(comment);
    const std::string body = trim(line);
    if (body.empty()) continue;

    if (body.front() == '[') {
      if (body.back() != ']')
        throw ConfigError(path + ":" + std::to_string(lineno) +
                          ": unterminated section header");
      section = trim(body.substr(1, body.size() - 2));
      if (section.empty())
        throw ConfigError(path + ":" + std::to_string(lineno) +
                          ": empty section name");
      sections[section];  // sections may be present but empty
      continue;
    }

    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected key=value or [section]");
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty())
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": missing key before '='");
    sections[section][key] = value;
  }
  return sections;
}

}  // namespace desynclab
