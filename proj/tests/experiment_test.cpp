#include "gpmap/csv.hpp"
#include "gpmap/error.hpp"
#include "gpmap/experiment.hpp"
#include "gpmap/stats.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace gpmap;

namespace {

std::string body(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    if (!line.starts_with("#")) out += line + "\n";
  }
  return out;
}

ExperimentConfig small_config() {
  ExperimentConfig c;
  c.params.n_inputs = 2;
  c.params.n_gates = 3;
  c.params.levels_back = 3;
  c.kind = "phenotype-table";
  c.master_seed = 42;
  return c;
}

}  // namespace

TEST(Correlate, Linear) {
  std::vector<double> x, y;
  for (int i = 0; i < 10; ++i) {
    x.push_back(i * 0.7 - 2);
    y.push_back(2 * x.back() + 1);
  }
  EXPECT_NEAR(pearson(x, y), 1.0, 1e-12);
}

TEST(Correlate, MonotoneNonlinear) {
  std::vector<double> x, y;
  for (int i = -5; i <= 7; ++i) {
    x.push_back(i);
    y.push_back(-std::pow(i, 3));
  }
  const auto c = correlate(x, y);
  EXPECT_DOUBLE_EQ(c.spearman, -1.0);
  EXPECT_LT(std::abs(c.pearson), 1.0);
  EXPECT_EQ(c.n, x.size());
}

TEST(Correlate, Errors) {
  const std::vector<double> flat(5, 2.0), ramp{1, 2, 3, 4, 5};
  EXPECT_THROW(pearson(flat, ramp), ValidationError);
  EXPECT_THROW(spearman(ramp, flat), ValidationError);
  EXPECT_THROW(pearson(std::vector<double>{1, 2}, std::vector<double>{2, 3}), ValidationError);
}

TEST(Correlate, TiedRanksAreAveraged) {
  EXPECT_EQ(average_ranks(std::vector<double>{3, 1, 3, 2}), (std::vector<double>{3.5, 1, 3.5, 2}));
}

TEST(Density, SingleValue) {
  const std::vector<double> v(1000, 0.25);
  const auto h = histogram(v, 10);
  EXPECT_DOUBLE_EQ(h.density[0], 1.0);
  for (std::size_t b = 1; b < 10; ++b) EXPECT_EQ(h.density[b], 0.0);
}

TEST(Density, UniformRamp) {
  std::vector<double> v;
  for (int i = 0; i < 10; ++i) v.push_back(i / 9.0);
  const auto h = histogram(v, 10);
  for (double d : h.density) EXPECT_DOUBLE_EQ(d, 0.1);
  EXPECT_NEAR(h.centers[0], 0.05, 1e-12);
  EXPECT_THROW(histogram(std::vector<double>{}, 10), ValidationError);
}

TEST(Dingle, ExactPowerLaw) {
  std::vector<double> k, f;
  for (int i = 1; i <= 6; ++i) {
    k.push_back(i);
    f.push_back(std::pow(2.0, -2.0 * i - 1));
  }
  k.push_back(9);
  f.push_back(0.0);
  const auto fit = dingle_fit(k, f);
  EXPECT_NEAR(fit.slope, -2.0, 1e-12);
  EXPECT_NEAR(fit.intercept, -1.0, 1e-12);
  EXPECT_DOUBLE_EQ(fit.spearman, -1.0);
  EXPECT_EQ(fit.n_points, 6u);
}

TEST(Csv, PinnedHeaders) {
  auto join = [](const std::vector<std::string>& h) {
    std::string s;
    for (const auto& x : h) s += (s.empty() ? "" : ",") + x;
    return s;
  };
  EXPECT_EQ(join(redundancy_header()), "phenotype,count,total_samples");
  EXPECT_EQ(join(rank_header()), "rank,phenotype,count,log10_redundancy");
  EXPECT_EQ(join(pheno_header()),
            "phenotype,log10_redundancy,robustness,evolvability_evo,evolvability_samp,tononi,kolmogorov,k_exact");
  EXPECT_EQ(join(walk_header()), "step,accepted,phenotype");
  EXPECT_EQ(join(epochal_header()), "step,hamming_distance,phenotype");
}

TEST(Csv, RealsAndComments) {
  EXPECT_EQ(format_real(0.874185), "0.874185");
  EXPECT_EQ(format_real(1234567.0), "1.23457e+06");
  EXPECT_EQ(format_real(2.0), "2");
  EXPECT_EQ(format_real(std::nan("")), "");
  std::ostringstream out;
  CsvWriter w(out, {"abc", 7, {}}, {"a", "b"});
  w.row({"1", ""});
  EXPECT_THROW(w.row({"1"}), ValidationError);
  std::istringstream in(out.str());
  const auto t = read_csv(in);
  EXPECT_EQ(t.comment_value("config_hash"), "abc");
  EXPECT_EQ(t.comment_value("seed"), "7");
  EXPECT_EQ(t.header, (std::vector<std::string>{"a", "b"}));
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_TRUE(std::isnan(t.numeric("b")[0]));
  EXPECT_THROW(t.column("c"), ValidationError);
}

TEST(Config, HashIgnoresWorkersAndOutput) {
  auto a = small_config();
  auto b = a;
  b.workers = 8;
  b.output = "/elsewhere";
  EXPECT_EQ(a.hash(), b.hash());
  b.master_seed = 43;
  EXPECT_NE(a.hash(), b.hash());
  EXPECT_EQ(a.hash().size(), 16u);
  const auto round = ExperimentConfig::from_json(a.to_json());
  EXPECT_EQ(round.hash(), a.hash());
  EXPECT_EQ(round.params, a.params);
  EXPECT_THROW(ExperimentConfig::from_json("{\"params\": 3}"), ValidationError);
}

TEST(Config, DefaultSteps) {
  EXPECT_EQ(default_max_steps(3), 200'000u);
  EXPECT_EQ(default_max_steps(4), 1'000'000u);
}

TEST(PhenotypeTable, IndependentOfWorkers) {
  const auto c = small_config();
  PhenotypeTableOptions o;
  o.samples = 50'000;
  o.k_evolution = 8;
  o.k_sampling = 5;
  o.sampling_budget = 50'000;
  o.neutral_steps = 200;
  std::ostringstream one, eight;
  write_pheno_csv(one, build_phenotype_table(c.params, o, c.master_seed, 1).records, c.meta());
  write_pheno_csv(eight, build_phenotype_table(c.params, o, c.master_seed, 8).records, c.meta());
  EXPECT_EQ(one.str(), eight.str());
  std::istringstream in(one.str());
  const auto records = read_pheno_csv(read_csv(in), 2);
  ASSERT_EQ(records.size(), 16u);
  for (const auto& r : records) {
    if (r.robustness) {
      EXPECT_GE(*r.robustness, 0.0);
      EXPECT_LE(*r.robustness, 1.0);
    }
  }
  EXPECT_EQ(records[0x9].kolmogorov, 2.0);
}

TEST(PhenotypeTable, RandomSubsetIsSeeded) {
  const auto a = select_phenotypes(4, 500, 1);
  EXPECT_EQ(a.size(), 500u);
  EXPECT_EQ(a, select_phenotypes(4, 500, 1));
  EXPECT_NE(a, select_phenotypes(4, 500, 2));
  EXPECT_EQ(select_phenotypes(3, std::nullopt, 0).size(), 256u);
  EXPECT_THROW(select_phenotypes(2, 17, 0), ValidationError);
}

TEST(RedundancyCsv, ShardedRunsJoinByteIdentically) {
  ExperimentConfig c;
  c.kind = "redundancy";
  c.samples = 300'000;
  c.master_seed = 9;
  std::ostringstream whole;
  write_redundancy_csv(whole, sample_redundancy(c.params, c.samples, c.master_seed, 2), c.meta());
  RedundancyTable joined;
  for (std::uint64_t s = 0; s < 4; ++s) {
    std::ostringstream part;
    write_redundancy_csv(part, sample_redundancy(c.params, c.samples, c.master_seed, 1, {s, 4}), c.meta());
    std::istringstream in(part.str());
    auto t = read_redundancy_csv(read_csv(in), 3);
    t.params = c.params;
    t.seed = c.master_seed;
    if (s == 0) {
      joined = t;
    } else {
      joined.merge(t);
    }
  }
  std::ostringstream merged;
  write_redundancy_csv(merged, joined, c.meta());
  const std::string text = whole.str();
  EXPECT_EQ(merged.str(), text);
  // six comment lines, the header, one row per phenotype
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 6 + 1 + 256);
}

TEST(Density, GenotypesSimplerThanEvolvedPhenotypes) {
  ChromosomeParams p;
  Rng rng(3);
  std::vector<double> genotype_c;
  for (int i = 0; i < 500; ++i) genotype_c.push_back(tononi_complexity(random_genotype(p, rng), p.gate_set).complexity);
  PhenotypeTableOptions o;
  o.samples = 0;
  o.k_evolution = 10;
  o.kolmogorov = false;
  o.random_phenotypes = 60;
  std::vector<double> phenotype_c;
  for (const auto& r : build_phenotype_table(p, o, 5).records) {
    if (r.tononi) phenotype_c.push_back(*r.tononi);
  }
  EXPECT_LT(mean(genotype_c), mean(phenotype_c));
}
