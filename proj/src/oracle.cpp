#include "gpmap/oracle.hpp"

#include "gpmap/error.hpp"
#include "gpmap/evaluate.hpp"
#include "gpmap/evolution.hpp"
#include "gpmap/parallel.hpp"
#include "gpmap/phenotype_set.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace gpmap {

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

class DisjointSets {
public:
  explicit DisjointSets(std::uint64_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0u); }

  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

private:
  std::vector<std::uint32_t> parent_;
};

struct Partial {
  std::vector<std::uint64_t> counts;
  std::vector<std::uint64_t> neutral;
  std::vector<std::optional<PhenotypeSet>> adjacent;
};

void check_cap(const EnumerationSpec& spec, std::uint64_t cap) {
  if (spec.predicted_space_size > cap) {
    throw ResourceError("genotype space of " + std::to_string(spec.predicted_space_size) + " exceeds the cap of " +
                        std::to_string(cap));
  }
}

}  // namespace

EnumerationSpec make_enumeration_spec(const ChromosomeParams& params) {
  params.validate();
  EnumerationSpec spec{params, 1};
  const auto fns = static_cast<std::uint64_t>(params.gate_set.size());
  if (params.repr == Representation::Cgp) {
    for (std::size_t j = 0; j < static_cast<std::size_t>(params.n_gates); ++j) {
      const auto r = static_cast<std::uint64_t>(cgp_input_range(params.n_inputs, params.effective_levels_back(), j).size());
      spec.predicted_space_size = saturating_mul(spec.predicted_space_size, saturating_mul(fns, r * r));
    }
  } else {
    const auto regs = static_cast<std::uint64_t>(params.n_calc_registers + params.n_inputs);
    const std::uint64_t per = fns * static_cast<std::uint64_t>(params.n_calc_registers) * regs * regs;
    for (int j = 0; j < params.n_gates; ++j) spec.predicted_space_size = saturating_mul(spec.predicted_space_size, per);
  }
  return spec;
}

GenotypeSpace::GenotypeSpace(const ChromosomeParams& params) : params_(params) {
  params.validate();
  const int fns = static_cast<int>(params.gate_set.size());
  if (params.repr == Representation::Cgp) {
    for (std::size_t j = 0; j < static_cast<std::size_t>(params.n_gates); ++j) {
      const auto r = cgp_input_range(params.n_inputs, params.effective_levels_back(), j);
      digits_.push_back({0, fns});
      digits_.push_back({r.lo, r.size()});
      digits_.push_back({r.lo, r.size()});
    }
  } else {
    const int regs = params.n_calc_registers + params.n_inputs;
    for (int j = 0; j < params.n_gates; ++j) {
      digits_.push_back({0, fns});
      digits_.push_back({1, params.n_calc_registers});
      digits_.push_back({1, regs});
      digits_.push_back({1, regs});
    }
  }
  for (const auto& d : digits_) size_ = saturating_mul(size_, static_cast<std::uint64_t>(d.radix));
}

void GenotypeSpace::decode_into(std::uint64_t index, Genotype& g) const {
  std::vector<int> values(digits_.size());
  for (std::size_t i = digits_.size(); i-- > 0;) {
    const auto radix = static_cast<std::uint64_t>(digits_[i].radix);
    values[i] = digits_[i].lo + static_cast<int>(index % radix);
    index /= radix;
  }
  if (params_.repr == Representation::Cgp) {
    if (!std::holds_alternative<CgpGenotype>(g)) g = CgpGenotype{};
    auto& c = std::get<CgpGenotype>(g);
    c.n_inputs = params_.n_inputs;
    c.levels_back = params_.effective_levels_back();
    c.nodes.resize(static_cast<std::size_t>(params_.n_gates));
    for (std::size_t j = 0; j < c.nodes.size(); ++j) {
      c.nodes[j] = {params_.gate_set[static_cast<std::size_t>(values[3 * j])], values[3 * j + 1], values[3 * j + 2]};
    }
  } else {
    if (!std::holds_alternative<LgpGenotype>(g)) g = LgpGenotype{};
    auto& l = std::get<LgpGenotype>(g);
    l.n_inputs = params_.n_inputs;
    l.n_calc_registers = params_.n_calc_registers;
    l.instructions.resize(static_cast<std::size_t>(params_.n_gates));
    for (std::size_t j = 0; j < l.instructions.size(); ++j) {
      l.instructions[j] = {params_.gate_set[static_cast<std::size_t>(values[4 * j])], values[4 * j + 1],
                           values[4 * j + 2], values[4 * j + 3]};
    }
  }
}

Genotype GenotypeSpace::decode(std::uint64_t index) const {
  Genotype g;
  decode_into(index, g);
  return g;
}

std::uint64_t GenotypeSpace::encode(const Genotype& g) const {
  const auto& fns = params_.gate_set.gates();
  auto fn_index = [&](Gate f) { return static_cast<int>(std::find(fns.begin(), fns.end(), f) - fns.begin()); };
  std::vector<int> values;
  values.reserve(digits_.size());
  if (const auto* c = std::get_if<CgpGenotype>(&g)) {
    for (const auto& node : c->nodes) values.insert(values.end(), {fn_index(node.function), node.in1, node.in2});
  } else {
    for (const auto& ins : std::get<LgpGenotype>(g).instructions) {
      values.insert(values.end(), {fn_index(ins.function), ins.out, ins.in1, ins.in2});
    }
  }
  std::uint64_t index = 0;
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    index = index * static_cast<std::uint64_t>(digits_[i].radix) + static_cast<std::uint64_t>(values[i] - digits_[i].lo);
  }
  return index;
}

void enumerate_space(const EnumerationSpec& spec, const std::function<void(const Genotype&)>& visit, std::uint64_t cap) {
  check_cap(spec, cap);
  const GenotypeSpace space(spec.params);
  Genotype g;
  for (std::uint64_t i = 0; i < space.size(); ++i) {
    space.decode_into(i, g);
    visit(g);
  }
}

ExactMapSummary exact_map_summary(const EnumerationSpec& spec, const SummaryOptions& options) {
  check_cap(spec, options.cap);
  const auto& params = spec.params;
  if (params.n_inputs > 4) throw ResourceError("exact summaries cover at most 4 inputs");
  const int n = params.n_inputs;
  const auto n_phenotypes = static_cast<std::size_t>(phenotype_count(n));
  const GenotypeSpace space(params);

  ExactMapSummary summary;
  summary.params = params;
  summary.space_size = space.size();
  summary.neighbors_per_genotype = Mutator(space.decode(0), params.gate_set).neighbor_count();

  const unsigned workers = std::max(1u, options.workers);
  const std::uint64_t per_part = (space.size() + workers - 1) / workers;
  std::vector<Partial> parts(workers);
  parallel_for(workers, workers, [&](std::size_t w) {
    auto& part = parts[w];
    part.counts.assign(n_phenotypes, 0);
    part.neutral.assign(n_phenotypes, 0);
    part.adjacent.resize(n_phenotypes);
    const std::uint64_t begin = std::min(space.size(), w * per_part);
    const std::uint64_t end = std::min(space.size(), begin + per_part);
    Genotype g;
    space.decode_into(0, g);
    const Mutator mutator(g, params.gate_set);
    for (std::uint64_t i = begin; i < end; ++i) {
      space.decode_into(i, g);
      const Phenotype self = phenotype_of(g);
      const auto v = static_cast<std::size_t>(self.value());
      ++part.counts[v];
      auto& adjacent = part.adjacent[v];
      if (!adjacent) adjacent.emplace(n);
      mutator.for_each_neighbor(g, [&](const Genotype& nb) {
        const Phenotype p = phenotype_of(nb);
        if (p == self) ++part.neutral[v];
        adjacent->insert(p);
      });
    }
  });

  summary.phenotypes.resize(n_phenotypes);
  for (std::size_t v = 0; v < n_phenotypes; ++v) {
    auto& entry = summary.phenotypes[v];
    entry.phenotype = Phenotype::from_value(n, v);
    std::uint64_t neutral = 0;
    std::optional<PhenotypeSet> adjacent;
    for (auto& part : parts) {
      entry.count += part.counts[v];
      neutral += part.neutral[v];
      if (!part.adjacent[v]) continue;
      if (!adjacent) {
        adjacent = std::move(part.adjacent[v]);
      } else {
        adjacent->merge(*part.adjacent[v]);
      }
    }
    if (entry.count == 0) continue;
    entry.robustness = static_cast<double>(neutral) /
                       (static_cast<double>(entry.count) * static_cast<double>(summary.neighbors_per_genotype));
    entry.evolvability = adjacent->size() - (adjacent->contains(entry.phenotype) ? 1 : 0);
  }

  if (options.components) {
    if (space.size() > std::numeric_limits<std::uint32_t>::max()) throw ResourceError("space too large for components");
    DisjointSets sets(space.size());
    std::vector<std::uint32_t> phenotype_of_index(space.size());
    Genotype g;
    space.decode_into(0, g);
    const Mutator mutator(g, params.gate_set);
    for (std::uint64_t i = 0; i < space.size(); ++i) {
      space.decode_into(i, g);
      phenotype_of_index[i] = static_cast<std::uint32_t>(phenotype_of(g).value());
    }
    for (std::uint64_t i = 0; i < space.size(); ++i) {
      space.decode_into(i, g);
      mutator.for_each_neighbor(g, [&](const Genotype& nb) {
        const std::uint64_t j = space.encode(nb);
        if (phenotype_of_index[j] == phenotype_of_index[i]) {
          sets.unite(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
        }
      });
    }
    std::vector<std::uint64_t> component_size(space.size(), 0);
    for (std::uint64_t i = 0; i < space.size(); ++i) ++component_size[sets.find(static_cast<std::uint32_t>(i))];
    for (auto& entry : summary.phenotypes) {
      if (entry.count > 0) {
        entry.components = 0;
        entry.largest_component = 0;
      }
    }
    for (std::uint64_t i = 0; i < space.size(); ++i) {
      if (sets.find(static_cast<std::uint32_t>(i)) != i) continue;
      auto& entry = summary.phenotypes[phenotype_of_index[i]];
      ++*entry.components;
      entry.largest_component = std::max(*entry.largest_component, component_size[i]);
    }
  }
  return summary;
}

}  // namespace gpmap
