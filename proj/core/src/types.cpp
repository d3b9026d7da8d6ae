#include "dlsenum/types.hpp"

#include <algorithm>

namespace dlsenum {

std::string to_string(u128 value) {
  if (value == 0) return "0";
  std::string out;
  while (value != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

u128 parse_u128(std::string_view text) {
  if (text.empty()) throw Error("empty integer");
  constexpr u128 kMax = ~u128{0};
  u128 value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') throw Error("invalid integer '" + std::string(text) + "'");
    const auto digit = static_cast<unsigned>(c - '0');
    if (value > (kMax - digit) / 10) throw Error("integer overflow '" + std::string(text) + "'");
    value = value * 10 + digit;
  }
  return value;
}

u128 factorial(int n) {
  u128 f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<unsigned>(i);
  return f;
}

}  // namespace dlsenum
