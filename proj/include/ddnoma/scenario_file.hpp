#pragma once

#include <map>
#include <string>
#include <vector>

#include "ddnoma/link.hpp"
#include "ddnoma/system.hpp"

namespace ddnoma {

// Flat INI-style scenario file: [section] headers, key = value lines,
// '#' comments, comma-separated lists.
class ScenarioFile {
 public:
  static ScenarioFile parse_file(const std::string& path);
  static ScenarioFile parse_string(const std::string& text);

  bool has(const std::string& section, const std::string& key) const;
  std::string get(const std::string& section, const std::string& key,
                  const std::string& fallback) const;
  double get_num(const std::string& section, const std::string& key,
                 double fallback) const;
  std::vector<std::string> get_list(const std::string& section,
                                    const std::string& key) const;
  std::vector<double> get_num_list(const std::string& section,
                                   const std::string& key) const;

  // Typed views over the shared sections.
  GridSpec grid() const;
  ScenarioConfig system_config() const;
  LinkConfig link_config() const;

 private:
  std::map<std::string, std::map<std::string, std::string>> sections_;
};

}  // namespace ddnoma
