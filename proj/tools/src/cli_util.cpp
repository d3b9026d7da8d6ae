#include "cli_util.hpp"

#include <cstdlib>
#include <sstream>

#include "dlsenum/workunits.hpp"

namespace dlsenum::cli {

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text, const std::string& flag) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) throw UsageError(flag + ": expected A..B, got '" + text + "'");
  try {
    const u128 a = parse_u128(text.substr(0, dots));
    const u128 b = parse_u128(text.substr(dots + 2));
    if (a > b || b > UINT64_MAX) throw Error("bad bounds");
    return {static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b)};
  } catch (const Error&) {
    throw UsageError(flag + ": expected A..B with A <= B, got '" + text + "'");
  }
}

FixedPrefix parse_fixed(const std::string& text) {
  if (text == "none") return FixedPrefix::none;
  if (text == "first-row" || text == "first_row") return FixedPrefix::first_row;
  if (text == "first-row-and-column" || text == "first_row_and_column") return FixedPrefix::first_row_and_column;
  throw UsageError("--fixed: expected none, first-row or first-row-and-column, got '" + text + "'");
}

ConstraintSet parse_constraints(const std::string& text) {
  try {
    return ConstraintSet::from_code(text);
  } catch (const Error& e) {
    throw UsageError(std::string("--constraints: ") + e.what());
  }
}

Order parse_order(int n) {
  try {
    return Order(n);
  } catch (const Error& e) {
    throw UsageError(std::string("--order: ") + e.what());
  }
}

nlohmann::json count_json(u128 value) {
  if (value <= (u128{1} << 53)) return static_cast<std::uint64_t>(value);
  return to_string(value);
}

std::optional<std::pair<u128, std::string>> total_factor(Order order, const ConstraintSet& cs, FixedPrefix fixed) {
  const int n = order.n();
  const std::string nf = std::to_string(n) + "!";
  switch (fixed) {
    case FixedPrefix::none: return std::pair<u128, std::string>{1, "1"};
    case FixedPrefix::first_row:
      if (cs.vertical_symmetry) {
        // Only symbol renamings commuting with v -> n-1-v keep the symmetry.
        const int m = order.half();
        return std::pair<u128, std::string>{(u128{1} << m) * factorial(m),
                                            "2^" + std::to_string(m) + " x " + std::to_string(m) + "!"};
      }
      return std::pair<u128, std::string>{factorial(n), nf};
    case FixedPrefix::first_row_and_column:
      if (cs.main_diagonal || cs.anti_diagonal) return std::nullopt;
      return std::pair<u128, std::string>{factorial(n) * factorial(n - 1), nf + " x " + std::to_string(n - 1) + "!"};
    case FixedPrefix::custom: return std::nullopt;
  }
  return std::nullopt;
}

unsigned threads_or_env(std::optional<unsigned> flag) {
  if (flag) return resolve_threads(*flag);
  if (const char* env = std::getenv("DLSENUM_THREADS"); env && *env) {
    try {
      const u128 v = parse_u128(env);
      if (v > 4096) throw Error("too large");
      return resolve_threads(static_cast<unsigned>(v));
    } catch (const Error&) {
      throw UsageError(std::string("DLSENUM_THREADS: expected a thread count, got '") + env + "'");
    }
  }
  return 1;
}

std::string format_double(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

}  // namespace dlsenum::cli
