#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dlsenum {

using Symbol = std::uint8_t;
using Mask = std::uint32_t;
using u128 = unsigned __int128;

inline constexpr Symbol kEmpty = 0xFF;
inline constexpr int kMaxOrder = 16;
inline constexpr int kMaxCells = kMaxOrder * kMaxOrder;

/// Raised for invalid arguments, malformed input and configuration mismatches.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Order of a square, 1 <= n <= 16 so that every symbol mask fits in 16 bits.
class Order {
 public:
  explicit Order(int n) : n_(n) {
    if (n < 1 || n > kMaxOrder) {
      throw Error("order must be in 1.." + std::to_string(kMaxOrder) + ", got " + std::to_string(n));
    }
  }

  constexpr int n() const { return n_; }
  constexpr int cells() const { return n_ * n_; }
  constexpr int half() const { return n_ / 2; }
  /// Mask with the low n bits set.
  constexpr Mask all_symbols() const { return (Mask{1} << n_) - 1; }

  friend constexpr bool operator==(Order, Order) = default;

 private:
  int n_;
};

struct Cell {
  int row = 0;
  int col = 0;

  friend constexpr auto operator<=>(const Cell&, const Cell&) = default;
};

inline constexpr Mask symbol_bit(int s) { return Mask{1} << s; }

std::string to_string(u128 value);
u128 parse_u128(std::string_view text);

/// n! as a 128-bit integer (n <= 16).
u128 factorial(int n);

}  // namespace dlsenum
