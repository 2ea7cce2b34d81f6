#pragma once

#include <string>
#include <vector>

#include "sc/construct.hpp"

namespace sc {

// Parsed project configuration: group tables, family member specs, and
// construction / verification parameters. See README for the grammar.
struct ProjectConfig {
  std::vector<GroupTable> groups;
  std::vector<FamilyMemberSpec> members;
  char theorem = 'a';
  int n = 23;
  Rational lambda{1, 6};
  ClosureMode closure = ClosureMode::rotations;
  int j_trunc = 1;
  int j_total = 0;
  std::vector<std::pair<int, int>> pairs_L;

  const GroupTable& group(const std::string& name) const;
};

ProjectConfig parse_config(const std::string& text);
ProjectConfig load_config(const std::string& path);

Presentation build_from_config(const ProjectConfig& cfg,
                               const ConstructionParams& params);

std::string emit_presentation(const Presentation& pres);
Presentation parse_presentation(const std::string& text);
Presentation load_presentation(const std::string& path);
void save_presentation(const Presentation& pres, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace sc
