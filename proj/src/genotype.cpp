#include "gpmap/genotype.hpp"

#include "gpmap/error.hpp"

#include <algorithm>
#include <cctype>

namespace gpmap {

std::string_view to_string(Representation r) noexcept { return r == Representation::Cgp ? "cgp" : "lgp"; }

Representation parse_representation(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "cgp") return Representation::Cgp;
  if (lower == "lgp") return Representation::Lgp;
  throw ValidationError("unknown representation '" + std::string(text) + "' (expected cgp or lgp)");
}

int n_inputs(const Genotype& g) noexcept {
  return std::visit([](const auto& x) { return x.n_inputs; }, g);
}

std::size_t gate_count(const Genotype& g) noexcept {
  return std::visit([](const auto& x) { return x.gate_count(); }, g);
}

Representation representation(const Genotype& g) noexcept {
  return std::holds_alternative<CgpGenotype>(g) ? Representation::Cgp : Representation::Lgp;
}

IndexRange cgp_input_range(int n_inputs, int levels_back, std::size_t position) noexcept {
  const int j = static_cast<int>(position) + 1;
  const int hi = n_inputs + j - 1;
  const int lo = j <= levels_back ? 1 : n_inputs + j - levels_back;
  return {lo, hi};
}

void validate(const CgpGenotype& g, const GateSet& gates) {
  if (g.n_inputs < 1 || g.n_inputs > kMaxInputs) throw StructuralError("CGP input count out of range");
  if (g.levels_back < 1) throw StructuralError("CGP levels back must be at least 1");
  if (g.nodes.empty()) throw StructuralError("CGP circuit needs at least one gate");
  for (std::size_t p = 0; p < g.nodes.size(); ++p) {
    const auto& node = g.nodes[p];
    const auto range = cgp_input_range(g.n_inputs, g.levels_back, p);
    const int index = g.n_inputs + static_cast<int>(p) + 1;
    if (!range.contains(node.in1) || !range.contains(node.in2)) {
      throw StructuralError("gate " + std::to_string(index) + " reads node outside [" + std::to_string(range.lo) + ", " +
                            std::to_string(range.hi) + "]");
    }
    if (!gates.contains(node.function)) {
      throw StructuralError("gate " + std::to_string(index) + " uses " + std::string(gate_name(node.function)) +
                            " which is not in the gate set");
    }
  }
}

void validate(const LgpGenotype& g, const GateSet& gates) {
  if (g.n_inputs < 1 || g.n_inputs > kMaxInputs) throw StructuralError("LGP input count out of range");
  if (g.n_calc_registers < 1) throw StructuralError("LGP needs at least one computational register");
  const int registers = g.register_count();
  for (std::size_t p = 0; p < g.instructions.size(); ++p) {
    const auto& ins = g.instructions[p];
    const auto where = "instruction " + std::to_string(p + 1);
    if (ins.out < 1 || ins.out > g.n_calc_registers) throw StructuralError(where + " writes a non-computational register");
    if (ins.in1 < 1 || ins.in1 > registers || ins.in2 < 1 || ins.in2 > registers) {
      throw StructuralError(where + " reads a register outside 1.." + std::to_string(registers));
    }
    if (!gates.contains(ins.function)) {
      throw StructuralError(where + " uses " + std::string(gate_name(ins.function)) + " which is not in the gate set");
    }
  }
}

void validate(const Genotype& g, const GateSet& gates) {
  std::visit([&](const auto& x) { validate(x, gates); }, g);
}

void ChromosomeParams::validate() const {
  if (n_inputs < 1 || n_inputs > kMaxInputs) {
    throw ValidationError("inputs must be in 1.." + std::to_string(kMaxInputs));
  }
  if (n_gates < 1) throw ValidationError("gate/instruction count must be at least 1");
  if (repr == Representation::Cgp && levels_back < 1) throw ValidationError("levels back must be at least 1");
  if (repr == Representation::Lgp && n_calc_registers < 1) {
    throw ValidationError("at least one computational register is required");
  }
}

int ChromosomeParams::effective_levels_back() const noexcept { return std::clamp(levels_back, 1, std::max(1, n_gates)); }

ChromosomeParams ChromosomeParams::paper_cgp_4in() {
  return {Representation::Cgp, 4, 11, 8, 2, GateSet::full()};
}

ChromosomeParams ChromosomeParams::paper_lgp_4in() {
  return {Representation::Lgp, 4, 10, 1, 2, GateSet::full()};
}

ChromosomeParams ChromosomeParams::with_gates(int gates, bool unrestricted_levels_back) const {
  ChromosomeParams p = *this;
  p.n_gates = gates;
  if (repr == Representation::Cgp) {
    p.levels_back = unrestricted_levels_back ? gates : std::min(effective_levels_back(), gates);
  }
  return p;
}

std::string ChromosomeParams::describe() const {
  std::string out(to_string(repr));
  out += " inputs=" + std::to_string(n_inputs);
  if (repr == Representation::Cgp) {
    out += " gates=" + std::to_string(n_gates) + " levels_back=" + std::to_string(effective_levels_back());
  } else {
    out += " instructions=" + std::to_string(n_gates) + " calc_registers=" + std::to_string(n_calc_registers);
  }
  out += " gate_set=" + gate_set.to_string();
  return out;
}

ChromosomeParams params_of(const Genotype& g, const GateSet& gates) {
  ChromosomeParams p;
  p.gate_set = gates;
  p.n_inputs = n_inputs(g);
  p.n_gates = static_cast<int>(gate_count(g));
  if (const auto* c = std::get_if<CgpGenotype>(&g)) {
    p.repr = Representation::Cgp;
    p.levels_back = c->levels_back;
  } else {
    p.repr = Representation::Lgp;
    p.n_calc_registers = std::get<LgpGenotype>(g).n_calc_registers;
  }
  return p;
}

}  // namespace gpmap
