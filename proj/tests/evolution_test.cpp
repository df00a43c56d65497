#include "gpmap/error.hpp"
#include "gpmap/evolution.hpp"
#include "gpmap/metrics.hpp"
#include "gpmap/oracle.hpp"
#include "gpmap/text_format.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

using namespace gpmap;

namespace {

ChromosomeParams cgp(int n, int gates, int lb) {
  ChromosomeParams p;
  p.n_inputs = n;
  p.n_gates = gates;
  p.levels_back = lb;
  return p;
}

ChromosomeParams lgp(int n, int instructions, int regs = 2) {
  ChromosomeParams p;
  p.repr = Representation::Lgp;
  p.n_inputs = n;
  p.n_gates = instructions;
  p.n_calc_registers = regs;
  return p;
}

int differing_fields(const CgpGenotype& a, const CgpGenotype& b) {
  int d = 0;
  for (std::size_t j = 0; j < a.nodes.size(); ++j) {
    d += a.nodes[j].function != b.nodes[j].function;
    d += a.nodes[j].in1 != b.nodes[j].in1;
    d += a.nodes[j].in2 != b.nodes[j].in2;
  }
  return d;
}

}  // namespace

TEST(RandomGenotype, SameSeedSameGenotype) {
  const auto p = cgp(3, 11, 8);
  Rng a(99), b(99);
  EXPECT_EQ(random_genotype(p, a), random_genotype(p, b));
}

TEST(RandomGenotype, FunctionsUniform) {
  const auto p = cgp(2, 1, 1);
  Rng rng(1);
  std::map<Gate, int> seen;
  const int draws = 100'000;
  for (int i = 0; i < draws; ++i) ++seen[random_cgp(p, rng).nodes[0].function];
  ASSERT_EQ(seen.size(), 5u);
  for (const auto& [g, n] : seen) EXPECT_NEAR(n / double(draws), 0.2, 0.01) << gate_name(g);
}

TEST(RandomGenotype, PhenotypesFollowEnumeration) {
  const auto p = cgp(2, 1, 2);
  const auto exact = exact_map_summary(make_enumeration_spec(p));
  Rng rng(2);
  std::vector<double> observed(16, 0.0), probs(16, 0.0);
  for (int i = 0; i < 100'000; ++i) observed[phenotype_of(random_genotype(p, rng)).value()] += 1;
  for (std::size_t v = 0; v < 16; ++v) probs[v] = double(exact.phenotypes[v].count) / double(exact.space_size);
  EXPECT_TRUE(test_support::chi_square_fits(observed, probs));
}

TEST(RandomGenotype, FieldsStayInRange) {
  Rng rng(4);
  for (const auto& p : {cgp(3, 11, 8), cgp(4, 6, 2), lgp(3, 10), lgp(2, 4, 3)}) {
    for (int i = 0; i < 1000; ++i) EXPECT_NO_THROW(validate(random_genotype(p, rng), p.gate_set));
  }
}

TEST(Mutation, ChangesExactlyOneField) {
  const auto g = parse_cgp("circuit((1,2),((3,AND,1,2)))", 1);
  Rng rng(6);
  for (int i = 0; i < 1000; ++i) {
    const auto m = std::get<CgpGenotype>(point_mutate(g, GateSet::full(), rng));
    EXPECT_EQ(differing_fields(g, m), 1);
  }
}

TEST(Mutation, TwoStageUniformLaw) {
  const Genotype g = parse_cgp("circuit((1,2),((3,AND,1,2)))", 1);
  const auto neighbors = enumerate_neighbors(g, GateSet::full());
  ASSERT_EQ(neighbors.size(), 6u);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < neighbors.size(); ++i) index[format_circuit(neighbors[i])] = i;
  Rng rng(7);
  std::vector<double> observed(6, 0.0);
  for (int i = 0; i < 100'000; ++i) observed[index.at(format_circuit(point_mutate(g, GateSet::full(), rng)))] += 1;
  // four function alternatives share one locus; each input locus has a single alternative
  const std::vector<double> expected{1.0 / 12, 1.0 / 12, 1.0 / 12, 1.0 / 12, 1.0 / 3, 1.0 / 3};
  EXPECT_TRUE(test_support::chi_square_fits(observed, expected));
}

TEST(Mutation, RegisterProgramsNeverWriteInputs) {
  const auto p = lgp(3, 6);
  Rng rng(8);
  Genotype g = random_genotype(p, rng);
  const Mutator m(g, p.gate_set);
  for (int i = 0; i < 10'000; ++i) {
    m.mutate(g, rng);
    for (const auto& ins : std::get<LgpGenotype>(g).instructions) {
      EXPECT_GE(ins.out, 1);
      EXPECT_LE(ins.out, 2);
    }
  }
}

TEST(Mutation, NoMutableLociIsAnError) {
  const Genotype g = CgpGenotype{1, 1, {{Gate::And, 1, 1}}};
  const auto single = GateSet({Gate::And});
  Rng rng(0);
  EXPECT_THROW(point_mutate(g, single, rng), ValidationError);
  EXPECT_TRUE(enumerate_neighbors(g, single).empty());
}

TEST(Mutation, ClosureUnderFuzzing) {
  Rng rng(9);
  const std::vector<ChromosomeParams> shapes{cgp(2, 1, 1), cgp(3, 11, 8), cgp(4, 7, 2), cgp(5, 3, 1),
                                             lgp(2, 2), lgp(3, 10), lgp(4, 5, 4)};
  for (int i = 0; i < 100'000; ++i) {
    const auto& p = shapes[static_cast<std::size_t>(i) % shapes.size()];
    const auto g = random_genotype(p, rng);
    EXPECT_NO_THROW(validate(point_mutate(g, p.gate_set, rng), p.gate_set));
  }
}

TEST(Neighbors, SingleGateCount) {
  const Genotype g = parse_cgp("circuit((1,2),((3,AND,1,2)))", 1);
  const auto n = enumerate_neighbors(g, GateSet::full());
  EXPECT_EQ(n.size(), 6u);
  std::set<std::string> distinct;
  for (const auto& x : n) distinct.insert(format_circuit(x));
  EXPECT_EQ(distinct.size(), 6u);
  EXPECT_FALSE(distinct.contains(format_circuit(g)));
}

TEST(Neighbors, ReferenceCircuitCount) {
  const Genotype g = parse_cgp("circuit((1,2,3), ((4,OR,1,2), (5,AND,2,3), (6,XOR,4,5)))", 3);
  // each gate: 4 other functions, plus (range - 1) per input; gate j reads nodes 1..2+j
  const std::size_t expected = (4 + 2 + 2) + (4 + 3 + 3) + (4 + 4 + 4);
  EXPECT_EQ(enumerate_neighbors(g, GateSet::full()).size(), expected);
  EXPECT_EQ(Mutator(g, GateSet::full()).neighbor_count(), 30u);
}

TEST(Neighbors, EachVariantOnceAndValid) {
  Rng rng(10);
  const auto p = lgp(2, 3);
  for (int i = 0; i < 50; ++i) {
    const auto g = random_genotype(p, rng);
    const auto n = enumerate_neighbors(g, p.gate_set);
    std::set<std::string> distinct;
    for (const auto& x : n) {
      distinct.insert(format_circuit(x));
      validate(x, p.gate_set);
    }
    EXPECT_EQ(distinct.size(), n.size());
    EXPECT_FALSE(distinct.contains(format_circuit(g)));
  }
}

TEST(NeutralWalk, ZeroSteps) {
  Rng rng(11);
  const auto g = random_genotype(cgp(3, 11, 8), rng);
  const auto w = neutral_walk(g, GateSet::full(), 0, rng);
  EXPECT_EQ(w.final_genotype, g);
  EXPECT_EQ(w.accepted_steps, 0u);
  EXPECT_EQ(w.steps_taken, 0u);
}

TEST(NeutralWalk, PhenotypeNeverChanges) {
  Rng rng(12);
  const auto g = random_genotype(cgp(3, 11, 8), rng);
  const auto w = neutral_walk(g, GateSet::full(), 10'000, rng, {.record_trace = true});
  EXPECT_EQ(w.steps_taken, 10'000u);
  EXPECT_LE(w.accepted_steps, w.steps_taken);
  EXPECT_EQ(w.trace.size(), w.accepted_steps);
  const auto p = phenotype_of(g);
  for (const auto& x : w.trace) ASSERT_EQ(phenotype_of(x), p);
}

TEST(NeutralWalk, AcceptanceRateTracksRobustness) {
  Rng rng(13);
  const auto g = random_genotype(cgp(3, 11, 8), rng);
  double robustness_sum = genotype_robustness(g, GateSet::full());
  double before_last = 0.0;
  WalkOptions opts;
  opts.on_step = [&](std::uint64_t, bool, const Genotype& current) {
    before_last = genotype_robustness(current, GateSet::full());
    robustness_sum += before_last;
  };
  const std::uint64_t steps = 20'000;
  const auto w = neutral_walk(g, GateSet::full(), steps, rng, opts);
  // step t is accepted with probability equal to the robustness of the genotype it starts from
  const double mean_robustness = (robustness_sum - before_last) / double(steps);
  EXPECT_NEAR(double(w.accepted_steps) / double(steps), mean_robustness, 0.05);
}

TEST(Epochal, TargetAtStartIsFoundImmediately) {
  const auto p = cgp(3, 11, 8);
  Rng probe(14), rng(14);
  const auto target = phenotype_of(random_genotype(p, probe));
  const auto r = epochal_evolve(target, p, 1000, rng);
  EXPECT_TRUE(r.found());
  EXPECT_EQ(r.steps_taken, 0u);
}

TEST(Epochal, ReachesExampleTargetReliably) {
  const auto p = cgp(3, 11, 8);
  const auto target = Phenotype::from_value(3, 0x74);
  int found = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    Rng rng = make_rng(2024, i);
    const auto r = epochal_evolve(target, p, 1'000'000, rng);
    if (r.found()) {
      ++found;
      EXPECT_EQ(phenotype_of(r.final_genotype), target);
    }
  }
  EXPECT_GE(found, 99);
}

TEST(Epochal, ParityTraceIsMonotone) {
  const auto p = cgp(3, 11, 8);
  const auto target = Phenotype::from_value(3, 0x69);
  for (std::uint64_t i = 0; i < 20; ++i) {
    Rng rng = make_rng(77, i);
    const auto r = epochal_evolve(target, p, 200'000, rng, true);
    ASSERT_TRUE(r.found());
    ASSERT_FALSE(r.distance_trace.empty());
    EXPECT_EQ(r.distance_trace.back().hamming_distance, 0);
    for (std::size_t k = 1; k < r.distance_trace.size(); ++k) {
      const auto& a = r.distance_trace[k - 1];
      const auto& b = r.distance_trace[k];
      EXPECT_LT(b.hamming_distance, a.hamming_distance);
      EXPECT_LT(a.step, b.step);
      EXPECT_NE(a.phenotype, b.phenotype);
      EXPECT_EQ(hamming_distance(b.phenotype, target), b.hamming_distance);
    }
  }
}

TEST(Epochal, RegisterProgramsToo) {
  const auto p = lgp(3, 10);
  Rng rng(15);
  const auto r = epochal_evolve(Phenotype::from_value(3, 0x96), p, 200'000, rng);
  EXPECT_TRUE(r.found());
  EXPECT_EQ(phenotype_of(r.final_genotype).value(), 0x96u);
}

TEST(Epochal, Deterministic) {
  const auto p = cgp(3, 11, 8);
  const auto t = Phenotype::from_value(3, 0x69);
  Rng a(16), b(16);
  const auto ra = epochal_evolve(t, p, 50'000, a, true);
  const auto rb = epochal_evolve(t, p, 50'000, b, true);
  EXPECT_EQ(ra.final_genotype, rb.final_genotype);
  EXPECT_EQ(ra.steps_taken, rb.steps_taken);
}

TEST(Epochal, RejectsMismatchedTarget) {
  Rng rng(0);
  EXPECT_THROW(epochal_evolve(Phenotype::from_value(2, 0x6), cgp(3, 5, 5), 10, rng), ValidationError);
}
