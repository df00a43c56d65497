#pragma once

#include "gpmap/complexity.hpp"
#include "gpmap/csv.hpp"
#include "gpmap/evolution.hpp"
#include "gpmap/genotype.hpp"
#include "gpmap/metrics.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gpmap {

/// Step limit of an epochal run when none is given: 2e5 up to 3 inputs, 1e6 above.
std::uint64_t default_max_steps(int n_inputs) noexcept;

struct ExperimentConfig {
  ChromosomeParams params;
  std::string kind;
  std::uint64_t samples = 1'000'000;
  std::size_t k = 600;
  std::uint64_t max_steps = 200'000;
  int attempts = 20;
  std::uint64_t master_seed = 0;
  unsigned workers = 1;
  std::string output;
  /// Subcommand-specific settings, part of the hash.
  std::map<std::string, std::string> extra;

  /// Canonical JSON text (sorted keys).
  std::string to_json() const;
  static ExperimentConfig from_json(const std::string& text);
  /// FNV-1a of the JSON without `workers` and `output`, as 16 hex digits. Worker count and output
  /// location never change results.
  std::string hash() const;
  CsvMeta meta() const;
};

struct PhenotypeRecord {
  Phenotype phenotype;
  std::optional<double> log10_redundancy;
  std::optional<double> robustness;
  std::optional<double> evolvability_evo;
  std::optional<double> evolvability_samp;
  std::optional<double> tononi;
  std::optional<double> kolmogorov;
  std::optional<bool> k_exact;
  /// Sampled count; log10_redundancy is its logarithm. Not written to pheno.csv.
  std::uint64_t count = 0;
};

struct PhenotypeTableOptions {
  /// Redundancy samples; 0 skips the column.
  std::uint64_t samples = 1'000'000;
  /// Epochal runs per phenotype for robustness, evolution evolvability and Tononi; 0 skips them.
  std::size_t k_evolution = 50;
  std::uint64_t max_steps = 200'000;
  std::uint64_t neutral_steps = 10'000;
  /// Genotypes sought by sampling for the sampling evolvability; 0 skips the column.
  std::size_t k_sampling = 0;
  std::uint64_t sampling_budget = 1'000'000;
  bool tononi = true;
  TononiOptions tononi_options;
  bool kolmogorov = true;
  KolmogorovOptions kolmogorov_options;
  /// Draw this many phenotypes uniformly at random instead of taking all of them.
  std::optional<std::size_t> random_phenotypes;
};

struct PhenotypeTable {
  std::vector<PhenotypeRecord> records;
  RedundancyTable redundancy;
  /// Phenotypes whose genotype sources came back short of k (their columns use what was found).
  std::size_t partial = 0;
};

/// Phenotypes in ascending value order, or a seeded uniform draw without replacement.
std::vector<Phenotype> select_phenotypes(int n_inputs, std::optional<std::size_t> random_count, std::uint64_t seed);

/// Per-phenotype metrics with independent seed streams for each source, so every column is
/// reproducible on its own and independent of `workers`.
PhenotypeTable build_phenotype_table(const ChromosomeParams& params, const PhenotypeTableOptions& options,
                                     std::uint64_t seed, unsigned workers = 1);

const std::vector<std::string>& redundancy_header();
const std::vector<std::string>& rank_header();
const std::vector<std::string>& pheno_header();
const std::vector<std::string>& walk_header();
const std::vector<std::string>& epochal_header();

/// One row per phenotype of the space for n <= 4 (zero counts included), otherwise represented ones.
void write_redundancy_csv(std::ostream& out, const RedundancyTable& table, const CsvMeta& meta);
/// Inverse of write_redundancy_csv; parameters and seed are left to the caller.
RedundancyTable read_redundancy_csv(const CsvTable& csv, int n_inputs);
void write_rank_csv(std::ostream& out, const RankTable& table, const CsvMeta& meta);
void write_pheno_csv(std::ostream& out, const std::vector<PhenotypeRecord>& records, const CsvMeta& meta);
std::vector<PhenotypeRecord> read_pheno_csv(const CsvTable& csv, int n_inputs);

struct WalkRow {
  std::uint64_t step = 0;
  bool accepted = false;
  Phenotype phenotype;
};

void write_walk_csv(std::ostream& out, const std::vector<WalkRow>& rows, const CsvMeta& meta);
void write_epochal_csv(std::ostream& out, const std::vector<DistancePoint>& trace, const CsvMeta& meta);

}  // namespace gpmap
