#pragma once

#include "gpmap/genotype.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace gpmap {

struct ParseOptions {
  /// CGP levels back; unset means "any previous node" (the gate count).
  std::optional<int> levels_back;
  /// LGP input count. The LGP text does not carry it, so it is required for LGP.
  std::optional<int> n_inputs;
  int n_calc_registers = 2;
};

/// Parses the circuit notation, whitespace-insensitive:
///   CGP: circuit((1,2,3), ((4,OR,1,2), (5,AND,2,3), (6,XOR,4,5)))   ("circuit" is optional)
///   LGP: [(2, 1, 3, 4), (1, 2, 4, 5), (5, 1, 1, 2)]
/// Throws ParseError on syntax errors and StructuralError/ValidationError on bad indices or gate names.
Genotype parse_circuit(std::string_view text, Representation repr, const ParseOptions& options = {});
CgpGenotype parse_cgp(std::string_view text, std::optional<int> levels_back = std::nullopt);
LgpGenotype parse_lgp(std::string_view text, int n_inputs, int n_calc_registers = 2);

/// Canonical text; parse_circuit(format_circuit(g)) == g when levels back is unrestricted.
std::string format_circuit(const Genotype& g);
std::string format_circuit(const CgpGenotype& g);
std::string format_circuit(const LgpGenotype& g);

}  // namespace gpmap
