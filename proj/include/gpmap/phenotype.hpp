#pragma once

#include "gpmap/bit_row.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace gpmap {

/// Truth table of a single-output n-input Boolean function: 2^n bits, column c at bit c.
class Phenotype {
public:
  Phenotype() = default;
  /// Bits above 2^n are discarded.
  Phenotype(int n_inputs, const BitRow& bits);

  /// Low 2^n bits of `value`; requires n <= 6.
  static Phenotype from_value(int n_inputs, std::uint64_t value);
  /// Accepts an optional 0x prefix and either case. Throws ValidationError if the value needs more than 2^n bits.
  static Phenotype from_hex(std::string_view text, int n_inputs);
  /// All-zero or all-one function.
  static Phenotype constant(int n_inputs, bool value);

  int n_inputs() const noexcept { return n_inputs_; }
  std::size_t bit_count() const noexcept { return std::size_t{1} << n_inputs_; }
  const BitRow& bits() const noexcept { return bits_; }
  bool bit(std::size_t column) const noexcept { return bits_.test(column); }

  /// Numeric value of the truth table; requires n <= 6.
  std::uint64_t value() const noexcept { return bits_.words[0]; }

  /// Canonical form: 0x-prefixed lowercase hex, zero-padded to max(1, 2^n / 4) digits.
  std::string to_hex() const;

  friend int hamming_distance(const Phenotype& a, const Phenotype& b) noexcept {
    return (a.bits_ ^ b.bits_).popcount();
  }

  friend bool operator==(const Phenotype&, const Phenotype&) = default;
  /// Orders by input count, then by numeric value.
  friend std::strong_ordering operator<=>(const Phenotype& a, const Phenotype& b) noexcept {
    if (auto c = a.n_inputs_ <=> b.n_inputs_; c != 0) return c;
    if (auto c = a.bits_.words[1] <=> b.bits_.words[1]; c != 0) return c;
    return a.bits_.words[0] <=> b.bits_.words[0];
  }

private:
  BitRow bits_{};
  int n_inputs_ = 1;
};

/// Number of distinct n-input phenotypes, 2^(2^n); requires n <= 5.
std::uint64_t phenotype_count(int n_inputs);

}  // namespace gpmap

template <>
struct std::hash<gpmap::Phenotype> {
  std::size_t operator()(const gpmap::Phenotype& p) const noexcept {
    const auto& w = p.bits().words;
    return std::hash<std::uint64_t>{}(w[0] ^ (w[1] * 0x9e3779b97f4a7c15ull) ^ static_cast<std::uint64_t>(p.n_inputs()));
  }
};
