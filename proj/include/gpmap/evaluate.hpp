#pragma once

#include "gpmap/bit_row.hpp"
#include "gpmap/genotype.hpp"
#include "gpmap/phenotype.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace gpmap {

/// The n standard input rows. Row i (1-based) has bit c equal to bit (n - i) of column index c,
/// so the columns enumerate every input combination once with all-ones at the top.
struct InputContext {
  int n_inputs = 0;
  std::vector<BitRow> rows;
};

/// Throws std::out_of_range unless 1 <= n <= kMaxInputs.
const InputContext& standard_contexts(int n_inputs);

/// Gate states of an evaluated circuit, one row per gate in gate order (inactive gates included).
struct GateStateMatrix {
  int n_inputs = 0;
  std::vector<BitRow> rows;

  std::size_t gate_count() const noexcept { return rows.size(); }
  std::size_t column_count() const noexcept { return std::size_t{1} << n_inputs; }
};

struct Evaluation {
  Phenotype phenotype;
  GateStateMatrix states;
  /// Number of gate functions applied; equals the gate count.
  std::size_t gate_applications = 0;
};

/// Validates `g` against `gates`, then evaluates every gate once in index order.
Evaluation evaluate_cgp(const CgpGenotype& g, const GateSet& gates);
/// Computational registers start at zero, input registers hold the standard contexts.
Evaluation evaluate_lgp(const LgpGenotype& g, const GateSet& gates);
Evaluation evaluate(const Genotype& g, const GateSet& gates);

/// Phenotype only, without validation or matrix allocation. `g` must be structurally valid.
Phenotype phenotype_of(const CgpGenotype& g);
Phenotype phenotype_of(const LgpGenotype& g);
Phenotype phenotype_of(const Genotype& g);

/// Gate positions (0-based) that the output depends on, ascending.
std::vector<std::size_t> active_gates(const CgpGenotype& g);
/// Instruction positions whose result reaches register 1 at program end, ascending.
std::vector<std::size_t> active_gates(const LgpGenotype& g);
std::vector<std::size_t> active_gates(const Genotype& g);

/// Sub-matrix made of the given rows.
GateStateMatrix select_rows(const GateStateMatrix& x, std::span<const std::size_t> rows);

}  // namespace gpmap
