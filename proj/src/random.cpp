#include "gpmap/random.hpp"

namespace gpmap {

namespace {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

void fill(CgpGenotype& g, const ChromosomeParams& params, Rng& rng) {
  g.n_inputs = params.n_inputs;
  g.levels_back = params.effective_levels_back();
  g.nodes.resize(static_cast<std::size_t>(params.n_gates));
  const int n_functions = static_cast<int>(params.gate_set.size());
  for (std::size_t p = 0; p < g.nodes.size(); ++p) {
    const auto range = cgp_input_range(g.n_inputs, g.levels_back, p);
    auto& node = g.nodes[p];
    node.function = params.gate_set[static_cast<std::size_t>(uniform_int(rng, 0, n_functions - 1))];
    node.in1 = uniform_int(rng, range.lo, range.hi);
    node.in2 = uniform_int(rng, range.lo, range.hi);
  }
}

void fill(LgpGenotype& g, const ChromosomeParams& params, Rng& rng) {
  g.n_inputs = params.n_inputs;
  g.n_calc_registers = params.n_calc_registers;
  g.instructions.resize(static_cast<std::size_t>(params.n_gates));
  const int n_functions = static_cast<int>(params.gate_set.size());
  const int registers = g.register_count();
  for (auto& ins : g.instructions) {
    ins.function = params.gate_set[static_cast<std::size_t>(uniform_int(rng, 0, n_functions - 1))];
    ins.out = uniform_int(rng, 1, g.n_calc_registers);
    ins.in1 = uniform_int(rng, 1, registers);
    ins.in2 = uniform_int(rng, 1, registers);
  }
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632be59bd9b4e019ull));
}

CgpGenotype random_cgp(const ChromosomeParams& params, Rng& rng) {
  CgpGenotype g;
  fill(g, params, rng);
  return g;
}

LgpGenotype random_lgp(const ChromosomeParams& params, Rng& rng) {
  LgpGenotype g;
  fill(g, params, rng);
  return g;
}

Genotype random_genotype(const ChromosomeParams& params, Rng& rng) {
  params.validate();
  if (params.repr == Representation::Cgp) return random_cgp(params, rng);
  return random_lgp(params, rng);
}

void randomize(Genotype& g, const ChromosomeParams& params, Rng& rng) {
  if (params.repr == Representation::Cgp) {
    if (!std::holds_alternative<CgpGenotype>(g)) g = CgpGenotype{};
    fill(std::get<CgpGenotype>(g), params, rng);
  } else {
    if (!std::holds_alternative<LgpGenotype>(g)) g = LgpGenotype{};
    fill(std::get<LgpGenotype>(g), params, rng);
  }
}

}  // namespace gpmap
