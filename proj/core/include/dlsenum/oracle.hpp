#pragma once

#include <cstdint>

#include "dlsenum/fill_plan.hpp"

namespace dlsenum {

/// Reference count built row by row from the list of all permutations of
/// 0..n-1, checking columns and diagonals per row and running validate() on
/// every finished square. Slow on purpose; limits: LS up to n=7 (n=7 needs the
/// first row and column fixed, n=6 the first row), DLS/VSDLS up to n=6.
std::uint64_t oracle_count(Order order, const ConstraintSet& cs, FixedPrefix fixed);

/// Tries every filling of the non-fixed cells with symbols 0..n-1. Limited to
/// at most 2^25 fillings (n <= 3 unfixed, n = 4 with the first row fixed).
std::uint64_t brute_force_count(Order order, const ConstraintSet& cs, FixedPrefix fixed);

}  // namespace dlsenum
