#pragma once

#include "gpmap/bit_row.hpp"

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gpmap {

/// Two-input logic gate. Enumerator order is the LGP function index minus one.
enum class Gate : std::uint8_t { And, Or, Nand, Nor, Xor };

inline constexpr int kGateCount = 5;

/// LGP text encoding: AND=1, OR=2, NAND=3, NOR=4, XOR=5.
constexpr int lgp_index(Gate g) noexcept { return static_cast<int>(g) + 1; }
std::optional<Gate> gate_from_lgp_index(int index) noexcept;

std::string_view gate_name(Gate g) noexcept;
/// Case-insensitive lookup of "AND", "OR", "NAND", "NOR", "XOR".
std::optional<Gate> gate_from_name(std::string_view name) noexcept;

/// Bitwise application over all input columns. NAND/NOR set bits above 2^n; callers mask.
constexpr BitRow apply(Gate g, const BitRow& a, const BitRow& b) noexcept {
  switch (g) {
    case Gate::And: return a & b;
    case Gate::Or: return a | b;
    case Gate::Nand: return ~(a & b);
    case Gate::Nor: return ~(a | b);
    case Gate::Xor: return a ^ b;
  }
  return {};
}

/// Single-bit truth table lookup, kept separate from the bitwise path for tests.
constexpr bool apply(Gate g, bool a, bool b) noexcept {
  switch (g) {
    case Gate::And: return a && b;
    case Gate::Or: return a || b;
    case Gate::Nand: return !(a && b);
    case Gate::Nor: return !(a || b);
    case Gate::Xor: return a != b;
  }
  return false;
}

/// Ordered, duplicate-free, non-empty list of gate functions available to a representation.
class GateSet {
public:
  GateSet(std::initializer_list<Gate> gates);
  explicit GateSet(std::vector<Gate> gates);

  /// AND, OR, NAND, NOR, XOR.
  static GateSet full();
  /// AND, OR, NAND, NOR.
  static GateSet no_xor();
  /// "full", "no-xor", or a comma-separated list of gate names.
  static GateSet parse(std::string_view text);

  std::size_t size() const noexcept { return gates_.size(); }
  Gate operator[](std::size_t i) const noexcept { return gates_[i]; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  bool contains(Gate g) const noexcept;

  /// "full", "no-xor", or the comma-separated names.
  std::string to_string() const;

  friend bool operator==(const GateSet&, const GateSet&) = default;

private:
  std::vector<Gate> gates_;
};

}  // namespace gpmap
