#include "gpmap/error.hpp"
#include "gpmap/metrics.hpp"
#include "gpmap/oracle.hpp"
#include "gpmap/text_format.hpp"

#include <gtest/gtest.h>

#include <cmath>
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

const Genotype& and_gate() {
  static const Genotype g = parse_cgp("circuit((1,2),((3,AND,1,2)))", 1);
  return g;
}

}  // namespace

TEST(GenotypeRobustness, AndGate) {
  EXPECT_DOUBLE_EQ(genotype_robustness(and_gate(), GateSet::full()), 0.0);
  std::set<std::uint64_t> phenotypes;
  for (const auto& n : enumerate_neighbors(and_gate(), GateSet::full())) phenotypes.insert(phenotype_of(n).value());
  EXPECT_EQ(phenotypes, (std::set<std::uint64_t>{0xe, 0x7, 0x1, 0x6, 0xa, 0xc}));
  EXPECT_EQ(genotype_evolvability(and_gate(), GateSet::full()), 6u);
}

TEST(GenotypeRobustness, FullyNeutralGenotype) {
  // with only AND and OR, a gate reading the same input twice is the identity either way
  const Genotype g = CgpGenotype{1, 1, {{Gate::And, 1, 1}}};
  const GateSet gs{Gate::And, Gate::Or};
  EXPECT_DOUBLE_EQ(genotype_robustness(g, gs), 1.0);
  EXPECT_EQ(genotype_evolvability(g, gs), 0u);
  EXPECT_EQ(genotype_evolvability(g, gs, true), 1u);
}

TEST(GenotypeRobustness, ReferenceCircuitMatchesBruteForce) {
  const Genotype g = parse_cgp("circuit((1,2,3), ((4,OR,1,2), (5,AND,2,3), (6,XOR,4,5)))");
  const auto self = phenotype_of(g);
  int neutral = 0;
  const auto all = enumerate_neighbors(g, GateSet::full());
  for (const auto& n : all) neutral += phenotype_of(n) == self;
  const double r = genotype_robustness(g, GateSet::full());
  EXPECT_DOUBLE_EQ(r, double(neutral) / double(all.size()));
  EXPECT_GE(r, 0.0);
  EXPECT_LE(r, 1.0);
}

TEST(GenotypeRobustness, PartitionIdentity) {
  Rng rng(21);
  const auto p = cgp(3, 11, 8);
  for (int i = 0; i < 300; ++i) {
    const auto g = random_genotype(p, rng);
    const auto s = summarize_neighborhood(g, p.gate_set);
    const std::size_t evo = genotype_evolvability(g, p.gate_set);
    const double rob = genotype_robustness(g, p.gate_set);
    EXPECT_EQ(s.neutral + s.non_neutral(), s.neighbors);
    EXPECT_EQ(evo, s.distinct_other);
    EXPECT_NEAR(double(evo) + rob * double(s.neighbors) + double(s.duplicates()), double(s.neighbors), 1e-9);
  }
}

TEST(Redundancy, CountsSumToSamples) {
  const auto t = sample_redundancy(cgp(3, 11, 8), 1000, 1);
  std::uint64_t sum = 0;
  for (const auto& [p, c] : t.counts) sum += c;
  EXPECT_EQ(sum, 1000u);
  EXPECT_EQ(t.total_samples, 1000u);
}

TEST(Redundancy, IndependentOfWorkers) {
  const auto p = cgp(3, 11, 8);
  const auto a = sample_redundancy(p, 300'000, 5, 1);
  const auto b = sample_redundancy(p, 300'000, 5, 8);
  EXPECT_EQ(a.counts, b.counts);
}

TEST(Redundancy, ShardsMergeToSingleRun) {
  const auto p = cgp(3, 11, 8);
  const auto whole = sample_redundancy(p, 400'000, 6);
  RedundancyTable merged = sample_redundancy(p, 400'000, 6, 1, {2, 3});
  merged.merge(sample_redundancy(p, 400'000, 6, 1, {0, 3}));
  merged.merge(sample_redundancy(p, 400'000, 6, 1, {1, 3}));
  EXPECT_EQ(merged.counts, whole.counts);
  EXPECT_EQ(merged.total_samples, whole.total_samples);
  EXPECT_THROW(merged.merge(sample_redundancy(p, 10, 7)), ValidationError);
}

TEST(Redundancy, MatchesOracleForTinySpace) {
  const auto p = cgp(2, 2, 2);
  const auto exact = exact_map_summary(make_enumeration_spec(p));
  const auto t = sample_redundancy(p, 900'000, 8);
  for (const auto& e : exact.phenotypes) {
    const double expected = double(e.count) * 1000.0;
    EXPECT_NEAR(double(t.count(e.phenotype)), expected, 5.0 * std::sqrt(expected) + 1e-9) << e.phenotype.to_hex();
  }
}

TEST(Rank, OrderAndTies) {
  RedundancyTable t;
  t.params = cgp(2, 1, 1);
  t.counts = {{Phenotype::from_value(2, 0x8), 5}, {Phenotype::from_value(2, 0xe), 3}};
  auto r = rank_table(t);
  ASSERT_EQ(r.entries.size(), 2u);
  EXPECT_EQ(r.entries[0].rank, 1u);
  EXPECT_EQ(r.entries[0].phenotype.value(), 0x8u);
  EXPECT_EQ(r.entries[1].count, 3u);
  EXPECT_EQ(r.unrepresented, 14u);
  t.counts = {{Phenotype::from_value(2, 0xe), 4}, {Phenotype::from_value(2, 0x1), 4}, {Phenotype::from_value(2, 0x6), 4}};
  r = rank_table(t);
  EXPECT_EQ(r.entries[0].phenotype.value(), 0x1u);
  EXPECT_EQ(r.entries[1].phenotype.value(), 0x6u);
  EXPECT_EQ(r.entries[2].phenotype.value(), 0xeu);
}

TEST(Rank, ConstantsLead) {
  const auto r = rank_table(sample_redundancy(cgp(3, 11, 8), 1'000'000, 9));
  const auto top = r.entries.front().phenotype.value();
  EXPECT_TRUE(top == 0x00 || top == 0xff) << std::hex << top;
}

TEST(PhenotypeMetrics, EstimatesAreMeansOverTheSample) {
  const auto p = cgp(3, 6, 6);
  const auto target = Phenotype::from_value(3, 0x88);
  const auto sample = find_genotypes(target, p, {SourceKind::Sampling, 20, 1'000'000}, 3);
  ASSERT_TRUE(sample.complete());
  double sum = 0.0;
  for (const auto& g : sample.genotypes) {
    EXPECT_EQ(phenotype_of(g), target);
    sum += genotype_robustness(g, p.gate_set);
  }
  const auto est = robustness_estimate(sample, p.gate_set);
  EXPECT_DOUBLE_EQ(est.value, sum / 20.0);
  EXPECT_EQ(est.k_found, 20u);
  EXPECT_EQ(est.source, SourceKind::Sampling);
  EXPECT_EQ(neighborhood_union_size(std::span(sample.genotypes).first(1), p.gate_set, target),
            genotype_evolvability(sample.genotypes[0], p.gate_set));
}

TEST(PhenotypeMetrics, SamplingReportsShortfall) {
  const auto p = cgp(3, 11, 8);
  try {
    phenotype_robustness(Phenotype::from_value(3, 0x69), p, {SourceKind::Sampling, 50, 2000}, 1);
    FAIL();
  } catch (const PartialResultError& e) {
    EXPECT_EQ(e.requested(), 50u);
    EXPECT_LT(e.achieved(), 50u);
  }
}

TEST(PhenotypeMetrics, EvolutionSourceIndependentOfWorkers) {
  const auto p = cgp(3, 11, 8);
  const auto t = Phenotype::from_value(3, 0x69);
  const SourceSpec spec{SourceKind::Evolution, 12, 200'000, 500};
  const auto a = find_genotypes(t, p, spec, 4, 1);
  const auto b = find_genotypes(t, p, spec, 4, 4);
  EXPECT_EQ(a.genotypes, b.genotypes);
  EXPECT_EQ(a.work, b.work);
  const SourceSpec samp{SourceKind::Sampling, 30, 2'000'000};
  EXPECT_EQ(find_genotypes(Phenotype::from_value(3, 0x88), p, samp, 4, 1).genotypes,
            find_genotypes(Phenotype::from_value(3, 0x88), p, samp, 4, 3).genotypes);
}

TEST(PhenotypeMetrics, ConstantsMoreRobustThanParity) {
  const auto p = cgp(3, 11, 8);
  const SourceSpec spec{SourceKind::Evolution, 50, 200'000};
  const auto zero = phenotype_robustness(Phenotype::from_value(3, 0x00), p, spec, 10);
  const auto parity = phenotype_robustness(Phenotype::from_value(3, 0x69), p, spec, 10);
  EXPECT_GT(zero.value, parity.value);
}

TEST(PhenotypeMetrics, ParityMoreEvolvableThanConstant) {
  const auto p = cgp(3, 11, 8);
  const SourceSpec spec{SourceKind::Evolution, 600, 200'000, 1000};
  const auto zero = phenotype_evolvability(Phenotype::from_value(3, 0x00), p, spec, 11);
  const auto parity = phenotype_evolvability(Phenotype::from_value(3, 0x69), p, spec, 11);
  EXPECT_GT(parity.value, zero.value);
}

TEST(PhenotypeMetrics, SaturatedEvolvabilityMatchesOracle) {
  const auto p = cgp(2, 2, 2);
  const auto exact = exact_map_summary(make_enumeration_spec(p));
  for (const auto& e : exact.phenotypes) {
    if (e.count == 0) continue;
    const auto sample = find_genotypes(e.phenotype, p, {SourceKind::Evolution, 400, 100'000, 200}, 12);
    EXPECT_EQ(evolvability_estimate(sample, p.gate_set).value, *e.evolvability) << e.phenotype.to_hex();
  }
}
