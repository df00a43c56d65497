#include "gpmap/evolution.hpp"

#include "gpmap/error.hpp"

#include <algorithm>

namespace gpmap {

namespace {

int gate_index(const GateSet& gates, Gate g) {
  const auto& all = gates.gates();
  return static_cast<int>(std::find(all.begin(), all.end(), g) - all.begin());
}

}  // namespace

std::vector<MutationLocus> mutable_loci(const Genotype& g, const GateSet& gates) {
  std::vector<MutationLocus> loci;
  const IndexRange functions{0, static_cast<int>(gates.size()) - 1};
  auto add = [&](std::size_t p, LocusField f, IndexRange r) {
    if (r.size() > 1) loci.push_back({p, f, r});
  };
  if (const auto* c = std::get_if<CgpGenotype>(&g)) {
    for (std::size_t p = 0; p < c->nodes.size(); ++p) {
      const auto inputs = cgp_input_range(c->n_inputs, c->levels_back, p);
      add(p, LocusField::Function, functions);
      add(p, LocusField::In1, inputs);
      add(p, LocusField::In2, inputs);
    }
  } else {
    const auto& l = std::get<LgpGenotype>(g);
    const IndexRange outs{1, l.n_calc_registers};
    const IndexRange ins{1, l.register_count()};
    for (std::size_t p = 0; p < l.instructions.size(); ++p) {
      add(p, LocusField::Function, functions);
      add(p, LocusField::Out, outs);
      add(p, LocusField::In1, ins);
      add(p, LocusField::In2, ins);
    }
  }
  return loci;
}

Mutator::Mutator(const Genotype& shape, const GateSet& gates) : gates_(gates), loci_(mutable_loci(shape, gates)) {
  for (const auto& l : loci_) neighbor_count_ += static_cast<std::size_t>(l.range.size() - 1);
}

int Mutator::get(const Genotype& g, const MutationLocus& locus) const {
  if (const auto* c = std::get_if<CgpGenotype>(&g)) {
    const auto& node = c->nodes[locus.position];
    switch (locus.field) {
      case LocusField::Function: return gate_index(gates_, node.function);
      case LocusField::In1: return node.in1;
      case LocusField::In2: return node.in2;
      case LocusField::Out: break;
    }
    return 0;
  }
  const auto& ins = std::get<LgpGenotype>(g).instructions[locus.position];
  switch (locus.field) {
    case LocusField::Function: return gate_index(gates_, ins.function);
    case LocusField::Out: return ins.out;
    case LocusField::In1: return ins.in1;
    case LocusField::In2: return ins.in2;
  }
  return 0;
}

void Mutator::set(Genotype& g, const MutationLocus& locus, int value) const {
  if (auto* c = std::get_if<CgpGenotype>(&g)) {
    auto& node = c->nodes[locus.position];
    switch (locus.field) {
      case LocusField::Function: node.function = gates_[static_cast<std::size_t>(value)]; break;
      case LocusField::In1: node.in1 = value; break;
      case LocusField::In2: node.in2 = value; break;
      case LocusField::Out: break;
    }
    return;
  }
  auto& ins = std::get<LgpGenotype>(g).instructions[locus.position];
  switch (locus.field) {
    case LocusField::Function: ins.function = gates_[static_cast<std::size_t>(value)]; break;
    case LocusField::Out: ins.out = value; break;
    case LocusField::In1: ins.in1 = value; break;
    case LocusField::In2: ins.in2 = value; break;
  }
}

void Mutator::mutate(Genotype& g, Rng& rng) const {
  if (loci_.empty()) throw ValidationError("genotype has no mutable loci");
  const auto& locus = loci_[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(loci_.size()) - 1))];
  const int current = get(g, locus);
  int value = uniform_int(rng, locus.range.lo, locus.range.hi - 1);
  if (value >= current) ++value;
  set(g, locus, value);
}

Genotype point_mutate(const Genotype& g, const GateSet& gates, Rng& rng) {
  Genotype out = g;
  Mutator(g, gates).mutate(out, rng);
  return out;
}

std::vector<Genotype> enumerate_neighbors(const Genotype& g, const GateSet& gates) {
  const Mutator mutator(g, gates);
  std::vector<Genotype> out;
  out.reserve(mutator.neighbor_count());
  Genotype work = g;
  mutator.for_each_neighbor(work, [&](const Genotype& n) { out.push_back(n); });
  return out;
}

WalkResult neutral_walk(const Genotype& start, const GateSet& gates, std::uint64_t max_steps, Rng& rng,
                        const WalkOptions& options) {
  WalkResult result{start, 0, 0, {}};
  if (max_steps == 0) return result;
  const Mutator mutator(start, gates);
  const Phenotype phenotype = phenotype_of(start);
  Genotype& current = result.final_genotype;
  Genotype mutant = current;
  for (std::uint64_t step = 1; step <= max_steps; ++step) {
    mutant = current;
    mutator.mutate(mutant, rng);
    const bool accepted = phenotype_of(mutant) == phenotype;
    if (accepted) {
      std::swap(current, mutant);
      ++result.accepted_steps;
      if (options.record_trace) result.trace.push_back(current);
    }
    result.steps_taken = step;
    if (options.on_step) options.on_step(step, accepted, current);
  }
  return result;
}

EpochalResult epochal_evolve_from(const Genotype& start, const Phenotype& target, const GateSet& gates,
                                  std::uint64_t max_steps, Rng& rng, bool record_trace) {
  if (n_inputs(start) != target.n_inputs()) throw ValidationError("target and genotype differ in input count");
  EpochalResult result;
  result.final_genotype = start;
  Genotype& current = result.final_genotype;
  Phenotype current_phenotype = phenotype_of(current);
  int distance = hamming_distance(current_phenotype, target);
  if (record_trace) result.distance_trace.push_back({0, distance, current_phenotype});
  if (distance == 0) {
    result.outcome = EpochalOutcome::Found;
    return result;
  }
  const Mutator mutator(start, gates);
  Genotype mutant = current;
  for (std::uint64_t step = 1; step <= max_steps; ++step) {
    mutant = current;
    mutator.mutate(mutant, rng);
    result.steps_taken = step;
    const Phenotype p = phenotype_of(mutant);
    if (p == current_phenotype) {
      std::swap(current, mutant);
      continue;
    }
    const int d = hamming_distance(p, target);
    if (d >= distance) continue;
    std::swap(current, mutant);
    current_phenotype = p;
    distance = d;
    if (record_trace) result.distance_trace.push_back({step, distance, current_phenotype});
    if (distance == 0) {
      result.outcome = EpochalOutcome::Found;
      return result;
    }
  }
  result.outcome = EpochalOutcome::StepLimit;
  return result;
}

EpochalResult epochal_evolve(const Phenotype& target, const ChromosomeParams& params, std::uint64_t max_steps, Rng& rng,
                             bool record_trace) {
  if (target.n_inputs() != params.n_inputs) throw ValidationError("target and parameters differ in input count");
  const Genotype start = random_genotype(params, rng);
  return epochal_evolve_from(start, target, params.gate_set, max_steps, rng, record_trace);
}

}  // namespace gpmap
