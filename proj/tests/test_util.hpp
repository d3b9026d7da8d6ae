#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "dlsenum/square.hpp"

namespace dlsenum::test {

inline std::string read_data(const std::string& name) {
  std::ifstream in(std::string(DLSENUM_TEST_DATA) + "/" + name);
  if (!in) throw std::runtime_error("missing test data " + name);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline SquareGrid grid_of(const std::string& text) { return parse_grid(text); }

}  // namespace dlsenum::test
