#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>

namespace gpmap {

/// Largest supported input count; a row then holds 2^7 = 128 bits.
inline constexpr int kMaxInputs = 7;

/// Fixed-width bit vector holding one gate state (or context row) over all 2^n input columns.
/// Column c lives at bit c; column 2^n - 1 is the all-ones input combination.
struct BitRow {
  std::array<std::uint64_t, 2> words{};

  constexpr bool test(std::size_t column) const noexcept {
    return (words[column >> 6] >> (column & 63)) & 1u;
  }
  constexpr void set(std::size_t column) noexcept { words[column >> 6] |= std::uint64_t{1} << (column & 63); }

  constexpr int popcount() const noexcept { return std::popcount(words[0]) + std::popcount(words[1]); }
  constexpr bool none() const noexcept { return (words[0] | words[1]) == 0; }

  friend constexpr BitRow operator&(const BitRow& a, const BitRow& b) noexcept {
    return {{a.words[0] & b.words[0], a.words[1] & b.words[1]}};
  }
  friend constexpr BitRow operator|(const BitRow& a, const BitRow& b) noexcept {
    return {{a.words[0] | b.words[0], a.words[1] | b.words[1]}};
  }
  friend constexpr BitRow operator^(const BitRow& a, const BitRow& b) noexcept {
    return {{a.words[0] ^ b.words[0], a.words[1] ^ b.words[1]}};
  }
  friend constexpr BitRow operator~(const BitRow& a) noexcept { return {{~a.words[0], ~a.words[1]}}; }
  friend constexpr bool operator==(const BitRow&, const BitRow&) noexcept = default;
};

/// Mask with the low 2^n bits set.
constexpr BitRow column_mask(int n_inputs) noexcept {
  const std::size_t bits = std::size_t{1} << n_inputs;
  BitRow m;
  if (bits >= 128) {
    m.words = {~std::uint64_t{0}, ~std::uint64_t{0}};
  } else if (bits >= 64) {
    m.words = {~std::uint64_t{0}, bits == 64 ? 0 : (std::uint64_t{1} << (bits - 64)) - 1};
  } else {
    m.words = {(std::uint64_t{1} << bits) - 1, 0};
  }
  return m;
}

}  // namespace gpmap
