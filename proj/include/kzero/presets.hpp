#pragma once

// Named input documents shipped with the CLI.

#include "kzero/io.hpp"

#include <map>
#include <string>
#include <vector>

namespace kzero {

struct PresetInfo {
  std::string name;
  std::string kind;  // the document schema the preset produces
  std::string description;
  std::map<std::string, long long> defaults;  // integer parameters
};

/// Sorted by name.
const std::vector<PresetInfo>& preset_catalog();

/// Unknown names or parameters throw SchemaError.
io::Json preset_document(const std::string& name, const std::map<std::string, long long>& params = {});

const PresetInfo& preset_info(const std::string& name);

/// The equator algebra ℤ[x]/(x² − w) with |x| odd, ℤ/2-graded.
AInfCategory equator_algebra(long w = 1, GroundRing ring = GroundRing::integers());
/// ℤ[ε]/ε² with |ε| = 0.
AInfCategory dual_numbers_algebra();

}  // namespace kzero
