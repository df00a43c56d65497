#include "gpmap/evaluate.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace gpmap {

namespace {

std::array<InputContext, kMaxInputs + 1> build_contexts() {
  std::array<InputContext, kMaxInputs + 1> all;
  for (int n = 1; n <= kMaxInputs; ++n) {
    auto& ctx = all[static_cast<std::size_t>(n)];
    ctx.n_inputs = n;
    ctx.rows.resize(static_cast<std::size_t>(n));
    const std::size_t columns = std::size_t{1} << n;
    for (int i = 1; i <= n; ++i) {
      for (std::size_t c = 0; c < columns; ++c) {
        if ((c >> (n - i)) & 1u) ctx.rows[static_cast<std::size_t>(i - 1)].set(c);
      }
    }
  }
  return all;
}

// Node values for a CGP circuit: inputs in slots 0..n-1, gate p in slot n + p.
std::vector<BitRow>& cgp_scratch(std::size_t size) {
  thread_local std::vector<BitRow> buffer;
  if (buffer.size() < size) buffer.resize(size);
  return buffer;
}

std::vector<BitRow>& lgp_scratch(std::size_t size) {
  thread_local std::vector<BitRow> buffer;
  if (buffer.size() < size) buffer.resize(size);
  return buffer;
}

// Fills `nodes` and returns the number of gate applications.
std::size_t run_cgp(const CgpGenotype& g, std::vector<BitRow>& nodes) {
  const auto& ctx = standard_contexts(g.n_inputs);
  const auto n = static_cast<std::size_t>(g.n_inputs);
  const BitRow mask = column_mask(g.n_inputs);
  for (std::size_t i = 0; i < n; ++i) nodes[i] = ctx.rows[i];
  std::size_t p = 0;
  for (const auto& node : g.nodes) {
    nodes[n + p] = apply(node.function, nodes[static_cast<std::size_t>(node.in1 - 1)],
                         nodes[static_cast<std::size_t>(node.in2 - 1)]) &
                   mask;
    ++p;
  }
  return p;
}

// Registers: calc registers in slots 0..c-1, inputs in c..c+n-1. Invokes `after(p, value)` per instruction.
template <typename After>
void run_lgp(const LgpGenotype& g, std::vector<BitRow>& regs, After&& after) {
  const auto& ctx = standard_contexts(g.n_inputs);
  const auto c = static_cast<std::size_t>(g.n_calc_registers);
  const BitRow mask = column_mask(g.n_inputs);
  for (std::size_t r = 0; r < c; ++r) regs[r] = BitRow{};
  for (std::size_t i = 0; i < static_cast<std::size_t>(g.n_inputs); ++i) regs[c + i] = ctx.rows[i];
  std::size_t p = 0;
  for (const auto& ins : g.instructions) {
    auto& out = regs[static_cast<std::size_t>(ins.out - 1)];
    out = apply(ins.function, regs[static_cast<std::size_t>(ins.in1 - 1)], regs[static_cast<std::size_t>(ins.in2 - 1)]) &
          mask;
    after(p++, out);
  }
}

}  // namespace

const InputContext& standard_contexts(int n_inputs) {
  static const auto contexts = build_contexts();
  if (n_inputs < 1 || n_inputs > kMaxInputs) {
    throw std::out_of_range("standard contexts exist for 1.." + std::to_string(kMaxInputs) + " inputs, got " +
                            std::to_string(n_inputs));
  }
  return contexts[static_cast<std::size_t>(n_inputs)];
}

Evaluation evaluate_cgp(const CgpGenotype& g, const GateSet& gates) {
  validate(g, gates);
  const auto n = static_cast<std::size_t>(g.n_inputs);
  std::vector<BitRow> nodes(n + g.nodes.size());
  Evaluation result;
  result.gate_applications = run_cgp(g, nodes);
  result.states.n_inputs = g.n_inputs;
  result.states.rows.assign(nodes.begin() + static_cast<std::ptrdiff_t>(n), nodes.end());
  result.phenotype = Phenotype(g.n_inputs, result.states.rows.back());
  return result;
}

Evaluation evaluate_lgp(const LgpGenotype& g, const GateSet& gates) {
  validate(g, gates);
  std::vector<BitRow> regs(static_cast<std::size_t>(g.register_count()));
  Evaluation result;
  result.states.n_inputs = g.n_inputs;
  result.states.rows.reserve(g.instructions.size());
  run_lgp(g, regs, [&](std::size_t, const BitRow& value) {
    result.states.rows.push_back(value);
    ++result.gate_applications;
  });
  result.phenotype = Phenotype(g.n_inputs, regs[0]);
  return result;
}

Evaluation evaluate(const Genotype& g, const GateSet& gates) {
  if (const auto* c = std::get_if<CgpGenotype>(&g)) return evaluate_cgp(*c, gates);
  return evaluate_lgp(std::get<LgpGenotype>(g), gates);
}

Phenotype phenotype_of(const CgpGenotype& g) {
  auto& nodes = cgp_scratch(static_cast<std::size_t>(g.n_inputs) + g.nodes.size());
  run_cgp(g, nodes);
  return Phenotype(g.n_inputs, nodes[static_cast<std::size_t>(g.n_inputs) + g.nodes.size() - 1]);
}

Phenotype phenotype_of(const LgpGenotype& g) {
  auto& regs = lgp_scratch(static_cast<std::size_t>(g.register_count()));
  run_lgp(g, regs, [](std::size_t, const BitRow&) {});
  return Phenotype(g.n_inputs, regs[0]);
}

Phenotype phenotype_of(const Genotype& g) {
  if (const auto* c = std::get_if<CgpGenotype>(&g)) return phenotype_of(*c);
  return phenotype_of(std::get<LgpGenotype>(g));
}

std::vector<std::size_t> active_gates(const CgpGenotype& g) {
  const auto n = g.n_inputs;
  std::vector<bool> live(g.nodes.size(), false);
  if (!g.nodes.empty()) live.back() = true;
  for (std::size_t p = g.nodes.size(); p-- > 0;) {
    if (!live[p]) continue;
    for (const int in : {g.nodes[p].in1, g.nodes[p].in2}) {
      if (in > n) live[static_cast<std::size_t>(in - n - 1)] = true;
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t p = 0; p < live.size(); ++p) {
    if (live[p]) out.push_back(p);
  }
  return out;
}

std::vector<std::size_t> active_gates(const LgpGenotype& g) {
  std::vector<bool> needed(static_cast<std::size_t>(g.register_count()), false);
  needed[0] = true;
  std::vector<std::size_t> out;
  for (std::size_t p = g.instructions.size(); p-- > 0;) {
    const auto& ins = g.instructions[p];
    if (!needed[static_cast<std::size_t>(ins.out - 1)]) continue;
    out.push_back(p);
    needed[static_cast<std::size_t>(ins.out - 1)] = false;
    needed[static_cast<std::size_t>(ins.in1 - 1)] = true;
    needed[static_cast<std::size_t>(ins.in2 - 1)] = true;
  }
  return {out.rbegin(), out.rend()};
}

std::vector<std::size_t> active_gates(const Genotype& g) {
  return std::visit([](const auto& x) { return active_gates(x); }, g);
}

GateStateMatrix select_rows(const GateStateMatrix& x, std::span<const std::size_t> rows) {
  GateStateMatrix out;
  out.n_inputs = x.n_inputs;
  out.rows.reserve(rows.size());
  for (const auto r : rows) out.rows.push_back(x.rows.at(r));
  return out;
}

}  // namespace gpmap
