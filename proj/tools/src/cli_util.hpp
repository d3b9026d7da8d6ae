#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "dlsenum/fill_plan.hpp"

namespace dlsenum::cli {

/// Bad flag values or combinations; exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "A..B" with A <= B.
std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text, const std::string& flag);

FixedPrefix parse_fixed(const std::string& text);
ConstraintSet parse_constraints(const std::string& text);
Order parse_order(int n);

/// Number when exactly representable as a double, decimal string otherwise.
nlohmann::json count_json(u128 value);

/// Factor turning a count with the given fixing into the count of all squares,
/// with a human label; nullopt when the fixing is not a normalization.
std::optional<std::pair<u128, std::string>> total_factor(Order order, const ConstraintSet& cs, FixedPrefix fixed);

/// --threads value, else DLSENUM_THREADS, else 1; 0 means all cores.
unsigned threads_or_env(std::optional<unsigned> flag);

std::string format_double(double v);

}  // namespace dlsenum::cli
