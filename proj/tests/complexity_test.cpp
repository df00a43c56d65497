#include "gpmap/complexity.hpp"
#include "gpmap/error.hpp"
#include "gpmap/evolution.hpp"
#include "gpmap/stats.hpp"
#include "gpmap/text_format.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace gpmap;

namespace {

GateStateMatrix example_matrix() {
  return evaluate(parse_cgp("circuit((1,2,3), ((4,OR,1,2), (5,AND,2,3), (6,XOR,4,5)))"), GateSet::full()).states;
}

GateStateMatrix random_matrix(Rng& rng, int n, std::size_t rows) {
  GateStateMatrix x{n, {}};
  for (std::size_t i = 0; i < rows; ++i) {
    BitRow r{{rng(), rng()}};
    x.rows.push_back(r & column_mask(n));
  }
  return x;
}

using Rows = std::vector<std::size_t>;

}  // namespace

TEST(Entropy, ExampleMatrix) {
  const auto x = example_matrix();
  EXPECT_DOUBLE_EQ(matrix_entropy(x), 1.5);
  const Rows r13{0, 2};
  EXPECT_DOUBLE_EQ(matrix_entropy(x, r13), 1.5);
  const Rows r2{1};
  EXPECT_NEAR(matrix_entropy(x, r2), 0.811278, 1e-6);
}

TEST(Entropy, ConstantRowsHaveNone) {
  GateStateMatrix x{3, {BitRow{}, BitRow{}, column_mask(3)}};
  EXPECT_DOUBLE_EQ(matrix_entropy(x), 0.0);
}

TEST(Entropy, BoundedByInputCount) {
  Rng rng(1);
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + i % 5;
    const auto x = random_matrix(rng, n, 1 + i % 9);
    const double h = matrix_entropy(x);
    EXPECT_GE(h, 0.0);
    EXPECT_LE(h, n + 1e-12);
    Rows all(x.gate_count());
    std::iota(all.begin(), all.end(), std::size_t{0});
    EXPECT_NEAR(h, test_support::column_entropy(x, all), 1e-12);
  }
}

TEST(MutualInformation, ExampleTerm) {
  const auto x = example_matrix();
  const Rows a{1}, b{0, 2};
  EXPECT_NEAR(mutual_information(a, b, x), 0.8113, 1e-4);
}

TEST(MutualInformation, IndependentBlocks) {
  // gates over disjoint inputs
  const auto x = evaluate(parse_cgp("circuit((1,2,3,4),((5,AND,1,2),(6,XOR,3,4)))"), GateSet::full()).states;
  const Rows a{0}, b{1};
  EXPECT_NEAR(mutual_information(a, b, x), 0.0, 1e-12);
}

TEST(MutualInformation, CopiedRow) {
  const auto x = evaluate(parse_cgp("circuit((1,2),((3,XOR,1,2),(4,AND,3,3)))"), GateSet::full()).states;
  const Rows a{0}, b{1};
  EXPECT_DOUBLE_EQ(mutual_information(a, b, x), matrix_entropy(x, a));
}

TEST(MutualInformation, OverlapIsAnError) {
  const auto x = example_matrix();
  const Rows a{0, 1}, b{1, 2};
  EXPECT_THROW(mutual_information(a, b, x), ValidationError);
}

TEST(MutualInformation, SymmetricAndNonNegative) {
  Rng rng(2);
  for (int i = 0; i < 500; ++i) {
    const auto x = random_matrix(rng, 1 + i % 4, 2 + i % 7);
    Rows a, b;
    for (std::size_t r = 0; r < x.gate_count(); ++r) (rng() & 1 ? a : b).push_back(r);
    if (a.empty() || b.empty()) continue;
    const double ab = mutual_information(a, b, x);
    EXPECT_EQ(ab, mutual_information(b, a, x));
    EXPECT_GE(ab, -1e-9);
  }
}

TEST(SubsetCache, AgreesWithDirectEntropy) {
  Rng rng(3);
  const auto x = random_matrix(rng, 4, 10);
  SubsetEntropyCache cache(x);
  for (std::uint64_t mask = 0; mask < (1u << 10); mask += 7) {
    Rows rows;
    for (std::size_t r = 0; r < 10; ++r) {
      if (mask >> r & 1) rows.push_back(r);
    }
    EXPECT_NEAR(cache.entropy(mask), rows.empty() ? 0.0 : test_support::column_entropy(x, rows), 1e-12);
    EXPECT_EQ(cache.entropy(mask), cache.entropy(mask));
  }
}

TEST(Tononi, ExampleCircuit) {
  const auto r = tononi_complexity(example_matrix());
  EXPECT_NEAR(r.complexity, 0.8742, 1e-4);
  ASSERT_EQ(r.per_k_terms.size(), 3u);
  EXPECT_EQ(r.gate_count, 3u);
  EXPECT_FALSE(r.approximate);
  EXPECT_NEAR(test_support::tononi_left_form(example_matrix()), r.complexity, 1e-9);
}

TEST(Tononi, ConstantCircuitIsZero) {
  const auto g = parse_cgp("circuit((1,2),((3,XOR,1,1),(4,XOR,2,2),(5,NOR,3,4)))");
  EXPECT_NEAR(tononi_complexity(g, GateSet::full()).complexity, 0.0, 1e-12);
}

TEST(Tononi, SingleGateIsZero) {
  EXPECT_EQ(tononi_complexity(parse_cgp("circuit((1,2),((3,XOR,1,2)))"), GateSet::full()).complexity, 0.0);
}

TEST(Tononi, BothFormsAgree) {
  Rng rng(4);
  for (int i = 0; i < 300; ++i) {
    const auto x = random_matrix(rng, 1 + i % 4, 2 + i % 8);
    const auto r = tononi_complexity(x);
    EXPECT_NEAR(r.complexity, test_support::tononi_left_form(x), 1e-9);
    EXPECT_GE(r.complexity, -1e-9);
  }
}

TEST(Tononi, RandomThreeGateCircuits) {
  Rng rng(5);
  ChromosomeParams p;
  p.n_gates = 3;
  p.levels_back = 3;
  for (int i = 0; i < 200; ++i) {
    const auto g = random_genotype(p, rng);
    const auto x = evaluate(g, p.gate_set).states;
    EXPECT_NEAR(tononi_complexity(g, p.gate_set).complexity, test_support::tononi_left_form(x), 1e-9);
  }
}

TEST(Tononi, ActiveOnlyDropsDeadGates) {
  const auto g = parse_cgp("circuit((1,2,3), ((4,OR,1,2), (5,AND,2,3), (6,NAND,1,3), (7,XOR,4,5)))");
  TononiOptions opt;
  opt.active_only = true;
  EXPECT_NEAR(tononi_complexity(g, GateSet::full(), opt).complexity, 0.8742, 1e-4);
  EXPECT_EQ(tononi_complexity(g, GateSet::full(), opt).gate_count, 3u);
  EXPECT_EQ(tononi_complexity(g, GateSet::full()).gate_count, 4u);
}

TEST(Tononi, LargeMatricesNeedSampling) {
  Rng rng(6);
  const auto x = random_matrix(rng, 5, 26);
  EXPECT_THROW(tononi_complexity(x), ResourceError);
  TononiOptions opt;
  opt.allow_sampling = true;
  opt.samples_per_k = 64;
  const auto r = tononi_complexity(x, opt);
  EXPECT_TRUE(r.approximate);
  EXPECT_EQ(r.per_k_terms.size(), 26u);
  EXPECT_EQ(r.complexity, tononi_complexity(x, opt).complexity);
}

TEST(Tononi, NeighboursResembleTheirGenotype) {
  ChromosomeParams p;
  Rng rng(7);
  std::vector<double> own, around;
  for (int i = 0; i < 500; ++i) {
    auto g = random_genotype(p, rng);
    own.push_back(tononi_complexity(g, p.gate_set).complexity);
    double sum = 0.0;
    std::size_t n = 0;
    Mutator(g, p.gate_set).for_each_neighbor(g, [&](const Genotype& nb) {
      sum += tononi_complexity(nb, p.gate_set).complexity;
      ++n;
    });
    around.push_back(sum / double(n));
  }
  EXPECT_GE(pearson(own, around), 0.8);
}

TEST(Tononi, ParityCircuitsAreMoreComplexThanConstants) {
  ChromosomeParams p;
  const SourceSpec spec{SourceKind::Evolution, 30, 200'000};
  const auto zero = tononi_complexity_phenotype(Phenotype::from_value(3, 0x00), p, spec, 1);
  const auto parity = tononi_complexity_phenotype(Phenotype::from_value(3, 0x69), p, spec, 1);
  EXPECT_LT(zero.value, parity.value);
  EXPECT_EQ(parity.source, SourceKind::Evolution);
  const auto sampled = tononi_complexity_phenotype(Phenotype::from_value(3, 0x00), p, {SourceKind::Sampling, 30, 100'000}, 1);
  EXPECT_EQ(sampled.source, SourceKind::Sampling);
  EXPECT_EQ(sampled.k_found, 30u);
}

TEST(Kolmogorov, TwoInputPins) {
  ChromosomeParams p;
  p.n_inputs = 2;
  const auto eqv = kolmogorov_complexity(Phenotype::from_value(2, 0x9), p);
  EXPECT_EQ(eqv.value, 2);
  EXPECT_TRUE(eqv.exact);
  EXPECT_EQ(phenotype_of(eqv.witness).value(), 0x9u);
  EXPECT_EQ(gate_count(eqv.witness), 2u);
  for (std::uint64_t v : {0x8u, 0x6u, 0x0u}) {
    const auto k = kolmogorov_complexity(Phenotype::from_value(2, v), p);
    EXPECT_EQ(k.value, 1) << v;
    EXPECT_TRUE(k.exact);
    EXPECT_EQ(phenotype_of(k.witness).value(), v);
  }
}

TEST(Kolmogorov, NotFoundCarriesCap) {
  ChromosomeParams p;
  p.n_inputs = 2;
  KolmogorovOptions o;
  o.max_gates = 1;
  try {
    kolmogorov_complexity(Phenotype::from_value(2, 0x9), p, o);
    FAIL();
  } catch (const NotFoundError& e) {
    EXPECT_EQ(e.cap(), 1u);
  }
}

TEST(Kolmogorov, NoXorParityNeedsMoreGates) {
  ChromosomeParams p;
  p.n_inputs = 2;
  p.gate_set = GateSet::no_xor();
  const auto k = kolmogorov_complexity(Phenotype::from_value(2, 0x6), p);
  EXPECT_EQ(k.value, 3);
  EXPECT_TRUE(k.exact);
}

TEST(Kolmogorov, RegisterMachines) {
  ChromosomeParams p;
  p.repr = Representation::Lgp;
  p.n_inputs = 2;
  const auto k = kolmogorov_complexity(Phenotype::from_value(2, 0x9), p);
  EXPECT_EQ(k.value, 2);
  EXPECT_EQ(phenotype_of(k.witness).value(), 0x9u);
}

TEST(Kolmogorov, TableAgreesWithSingleSearches) {
  ChromosomeParams p;
  p.n_inputs = 2;
  const auto table = kolmogorov_table(p, {}, 2);
  ASSERT_EQ(table.size(), 16u);
  for (std::uint64_t v = 0; v < 16; ++v) {
    ASSERT_TRUE(table[v].has_value());
    const auto single = kolmogorov_complexity(Phenotype::from_value(2, v), p);
    EXPECT_EQ(table[v]->value, single.value) << v;
    EXPECT_EQ(phenotype_of(table[v]->witness).value(), v);
  }
}

TEST(Kolmogorov, WitnessesHoldAtThreeInputs) {
  ChromosomeParams p;
  const auto table = kolmogorov_table(p, {}, 1);
  for (std::uint64_t v = 0; v < 256; ++v) {
    ASSERT_TRUE(table[v].has_value()) << v;
    EXPECT_EQ(phenotype_of(table[v]->witness).value(), v);
    EXPECT_EQ(gate_count(table[v]->witness), static_cast<std::size_t>(table[v]->value));
  }
  EXPECT_EQ(table[0x96]->value, 2);
  EXPECT_EQ(table[0x69]->value, 3);
}

TEST(Kolmogorov, MoreBudgetNeverHurts) {
  ChromosomeParams p;
  for (std::uint64_t v : {0x17u, 0x69u, 0x1eu, 0xd8u, 0x96u}) {
    int last = 1 << 20;
    for (auto [attempts, steps] : {std::pair{1, 500}, {2, 500}, {2, 5000}, {6, 20000}}) {
      KolmogorovOptions o;
      o.exhaustive_limit = 0;
      o.attempts = attempts;
      o.step_budget = static_cast<std::uint64_t>(steps);
      o.seed = 3;
      int value = last;
      try {
        const auto k = kolmogorov_complexity(Phenotype::from_value(3, v), p, o);
        EXPECT_FALSE(k.exact);
        value = k.value;
      } catch (const NotFoundError&) {
      }
      EXPECT_LE(value, last) << v;
      last = value;
    }
  }
}
