#pragma once

#include "gpmap/gate.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gpmap {

enum class Representation { Cgp, Lgp };

std::string_view to_string(Representation r) noexcept;
/// "cgp" or "lgp", case-insensitive.
Representation parse_representation(std::string_view text);

/// One CGP gate. Node indices are 1-based: inputs occupy 1..n, gate j occupies n + j.
struct CgpNode {
  Gate function = Gate::And;
  int in1 = 1;
  int in2 = 1;

  friend bool operator==(const CgpNode&, const CgpNode&) = default;
};

/// Single-row feed-forward CGP circuit; the last gate is the output.
struct CgpGenotype {
  int n_inputs = 1;
  int levels_back = 1;
  std::vector<CgpNode> nodes;

  std::size_t gate_count() const noexcept { return nodes.size(); }
  friend bool operator==(const CgpGenotype&, const CgpGenotype&) = default;
};

/// One LGP instruction. Registers are 1-based: 1..c are computational, c+1..c+n hold the inputs.
struct LgpInstruction {
  Gate function = Gate::And;
  int out = 1;
  int in1 = 1;
  int in2 = 1;

  friend bool operator==(const LgpInstruction&, const LgpInstruction&) = default;
};

/// Register-machine program; the phenotype is register 1 after the last instruction.
struct LgpGenotype {
  int n_inputs = 1;
  int n_calc_registers = 2;
  std::vector<LgpInstruction> instructions;

  std::size_t gate_count() const noexcept { return instructions.size(); }
  int register_count() const noexcept { return n_calc_registers + n_inputs; }
  friend bool operator==(const LgpGenotype&, const LgpGenotype&) = default;
};

using Genotype = std::variant<CgpGenotype, LgpGenotype>;

int n_inputs(const Genotype& g) noexcept;
std::size_t gate_count(const Genotype& g) noexcept;
Representation representation(const Genotype& g) noexcept;

/// Inclusive range of legal values for one genotype field.
struct IndexRange {
  int lo = 1;
  int hi = 1;
  int size() const noexcept { return hi - lo + 1; }
  bool contains(int v) const noexcept { return v >= lo && v <= hi; }
};

/// Legal input indices for CGP gate `position` (0-based). Inputs form layer 0 and gate j forms layer j;
/// a gate may read any node in the `levels_back` layers before it, so early gates see every input.
IndexRange cgp_input_range(int n_inputs, int levels_back, std::size_t position) noexcept;

/// Throws StructuralError when an index is out of range or a function is outside `gates`.
void validate(const CgpGenotype& g, const GateSet& gates);
void validate(const LgpGenotype& g, const GateSet& gates);
void validate(const Genotype& g, const GateSet& gates);

/// Shape of a genotype space.
struct ChromosomeParams {
  Representation repr = Representation::Cgp;
  int n_inputs = 3;
  /// Gate count for CGP, instruction count for LGP.
  int n_gates = 11;
  /// CGP only. Values above n_gates mean "any previous node".
  int levels_back = 8;
  /// LGP only.
  int n_calc_registers = 2;
  GateSet gate_set = GateSet::full();

  /// Throws ValidationError.
  void validate() const;

  /// levels_back clamped to [1, n_gates].
  int effective_levels_back() const noexcept;

  /// CGP, 4 inputs, 11 gates, 8 levels back, full gate set.
  static ChromosomeParams paper_cgp_4in();
  /// LGP, 4 inputs, 10 instructions, 2 computational registers, full gate set.
  static ChromosomeParams paper_lgp_4in();

  /// Same space with a different gate count (levels back follows when it was unrestricted).
  ChromosomeParams with_gates(int gates, bool unrestricted_levels_back) const;

  std::string describe() const;

  friend bool operator==(const ChromosomeParams&, const ChromosomeParams&) = default;
};

/// Parameters implied by an existing genotype under `gates`.
ChromosomeParams params_of(const Genotype& g, const GateSet& gates);

}  // namespace gpmap
