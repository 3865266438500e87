#pragma once

#include <string>

inline std::string fixture_path(const std::string& name) {
  return std::string(LITSIM_FIXTURE_DIR) + "/" + name;
}
