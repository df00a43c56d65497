#include "gpmap/experiment.hpp"

#include "gpmap/error.hpp"
#include "gpmap/parallel.hpp"
#include "gpmap/random.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <set>

namespace gpmap {

namespace {

using nlohmann::json;

json params_json(const ChromosomeParams& p) {
  json j;
  j["repr"] = std::string(to_string(p.repr));
  j["inputs"] = p.n_inputs;
  j["gates"] = p.n_gates;
  if (p.repr == Representation::Cgp) {
    j["levels_back"] = p.levels_back;
  } else {
    j["registers"] = p.n_calc_registers;
  }
  j["gate_set"] = p.gate_set.to_string();
  return j;
}

ChromosomeParams params_from_json(const json& j) {
  ChromosomeParams p;
  p.repr = parse_representation(j.at("repr").get<std::string>());
  p.n_inputs = j.at("inputs").get<int>();
  p.n_gates = j.at("gates").get<int>();
  if (j.contains("levels_back")) p.levels_back = j.at("levels_back").get<int>();
  if (j.contains("registers")) p.n_calc_registers = j.at("registers").get<int>();
  p.gate_set = GateSet::parse(j.at("gate_set").get<std::string>());
  return p;
}

json config_json(const ExperimentConfig& c, bool with_runtime) {
  json j;
  j["params"] = params_json(c.params);
  j["kind"] = c.kind;
  j["samples"] = c.samples;
  j["k"] = c.k;
  j["max_steps"] = c.max_steps;
  j["attempts"] = c.attempts;
  j["master_seed"] = c.master_seed;
  j["extra"] = c.extra;
  if (with_runtime) {
    j["workers"] = c.workers;
    j["output"] = c.output;
  }
  return j;
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string field(const std::vector<std::string>& row, std::size_t i) { return i < row.size() ? row[i] : std::string{}; }

std::optional<double> optional_number(const std::string& text) {
  if (text.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size()) throw ValidationError("non-numeric value '" + text + "'");
  return v;
}

std::uint64_t parse_count(const std::string& text) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty() || text.front() == '-') throw ValidationError("invalid count '" + text + "'");
  return v;
}

}  // namespace

std::uint64_t default_max_steps(int n_inputs) noexcept { return n_inputs <= 3 ? 200'000 : 1'000'000; }

std::string ExperimentConfig::to_json() const { return config_json(*this, true).dump(); }

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  try {
    const json j = json::parse(text);
    ExperimentConfig c;
    c.params = params_from_json(j.at("params"));
    c.kind = j.value("kind", std::string{});
    c.samples = j.value("samples", c.samples);
    c.k = j.value("k", c.k);
    c.max_steps = j.value("max_steps", c.max_steps);
    c.attempts = j.value("attempts", c.attempts);
    c.master_seed = j.value("master_seed", c.master_seed);
    c.workers = j.value("workers", c.workers);
    c.output = j.value("output", c.output);
    if (j.contains("extra")) c.extra = j.at("extra").get<std::map<std::string, std::string>>();
    c.params.validate();
    return c;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("invalid configuration: ") + e.what());
  }
}

std::string ExperimentConfig::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(config_json(*this, false).dump())));
  return buf;
}

CsvMeta ExperimentConfig::meta() const {
  CsvMeta m{hash(), master_seed, {}};
  m.extra.emplace_back("params", params.describe());
  if (!kind.empty()) m.extra.emplace_back("experiment", kind);
  return m;
}

std::vector<Phenotype> select_phenotypes(int n_inputs, std::optional<std::size_t> random_count, std::uint64_t seed) {
  if (n_inputs < 1 || n_inputs > 6) throw ValidationError("phenotype selection needs 1 to 6 inputs");
  const bool enumerable = n_inputs <= 4;
  if (!random_count) {
    if (!enumerable) throw ResourceError("too many phenotypes to list; choose a random subset");
    std::vector<Phenotype> all;
    const auto count = phenotype_count(n_inputs);
    all.reserve(count);
    for (std::uint64_t v = 0; v < count; ++v) all.push_back(Phenotype::from_value(n_inputs, v));
    return all;
  }
  Rng rng = make_rng(domain_seed(seed, StreamDomain::Phenotypes), static_cast<std::uint64_t>(n_inputs));
  const std::uint64_t width = std::uint64_t{1} << n_inputs;
  const std::uint64_t mask = width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
  if (n_inputs <= 5 && *random_count > phenotype_count(n_inputs)) {
    throw ValidationError("more phenotypes requested than exist");
  }
  std::set<Phenotype> chosen;
  while (chosen.size() < *random_count) chosen.insert(Phenotype::from_value(n_inputs, rng() & mask));
  return {chosen.begin(), chosen.end()};
}

PhenotypeTable build_phenotype_table(const ChromosomeParams& params, const PhenotypeTableOptions& options,
                                     std::uint64_t seed, unsigned workers) {
  params.validate();
  PhenotypeTable out;
  const auto phenotypes = select_phenotypes(params.n_inputs, options.random_phenotypes, seed);
  out.records.resize(phenotypes.size());
  for (std::size_t i = 0; i < phenotypes.size(); ++i) out.records[i].phenotype = phenotypes[i];

  if (options.samples > 0) {
    out.redundancy = sample_redundancy(params, options.samples, seed, workers);
    for (auto& r : out.records) {
      r.count = out.redundancy.count(r.phenotype);
      if (r.count > 0) {
        r.log10_redundancy = std::log10(static_cast<double>(r.count));
      }
    }
  }

  std::vector<char> partial(phenotypes.size(), 0);
  if (options.k_evolution > 0 || options.k_sampling > 0) {
    parallel_for(phenotypes.size(), workers, [&](std::size_t i) {
      auto& r = out.records[i];
      if (options.k_evolution > 0) {
        const SourceSpec spec{SourceKind::Evolution, options.k_evolution, options.max_steps, options.neutral_steps};
        const auto sample = find_genotypes(r.phenotype, params, spec, seed, 1);
        if (!sample.complete()) partial[i] = 1;
        if (!sample.genotypes.empty()) {
          r.robustness = robustness_estimate(sample, params.gate_set).value;
          r.evolvability_evo = static_cast<double>(evolvability_estimate(sample, params.gate_set).value);
          if (options.tononi) r.tononi = tononi_estimate(sample, params.gate_set, options.tononi_options).value;
        }
      }
      if (options.k_sampling > 0) {
        const SourceSpec spec{SourceKind::Sampling, options.k_sampling, options.sampling_budget};
        const auto sample = find_genotypes(r.phenotype, params, spec, seed, 1);
        if (!sample.complete()) partial[i] = 1;
        if (!sample.genotypes.empty()) {
          r.evolvability_samp = static_cast<double>(evolvability_estimate(sample, params.gate_set).value);
        }
      }
    });
  }
  out.partial = static_cast<std::size_t>(std::count(partial.begin(), partial.end(), 1));

  if (options.kolmogorov) {
    auto kopts = options.kolmogorov_options;
    kopts.seed = seed;
    if (params.n_inputs <= 4 && !options.random_phenotypes) {
      const auto table = kolmogorov_table(params, kopts, workers);
      for (auto& r : out.records) {
        if (const auto& k = table[static_cast<std::size_t>(r.phenotype.value())]) {
          r.kolmogorov = k->value;
          r.k_exact = k->exact;
        }
      }
    } else {
      parallel_for(out.records.size(), workers, [&](std::size_t i) {
        auto& r = out.records[i];
        try {
          const auto k = kolmogorov_complexity(r.phenotype, params, kopts);
          r.kolmogorov = k.value;
          r.k_exact = k.exact;
        } catch (const NotFoundError&) {
        }
      });
    }
  }
  return out;
}

const std::vector<std::string>& redundancy_header() {
  static const std::vector<std::string> h{"phenotype", "count", "total_samples"};
  return h;
}

const std::vector<std::string>& rank_header() {
  static const std::vector<std::string> h{"rank", "phenotype", "count", "log10_redundancy"};
  return h;
}

const std::vector<std::string>& pheno_header() {
  static const std::vector<std::string> h{"phenotype", "log10_redundancy", "robustness", "evolvability_evo",
                                          "evolvability_samp", "tononi", "kolmogorov", "k_exact"};
  return h;
}

const std::vector<std::string>& walk_header() {
  static const std::vector<std::string> h{"step", "accepted", "phenotype"};
  return h;
}

const std::vector<std::string>& epochal_header() {
  static const std::vector<std::string> h{"step", "hamming_distance", "phenotype"};
  return h;
}

void write_redundancy_csv(std::ostream& out, const RedundancyTable& table, const CsvMeta& meta) {
  CsvMeta m = meta;
  std::uint64_t represented = table.counts.size();
  if (table.params.n_inputs <= 5) {
    m.extra.emplace_back("unrepresented", std::to_string(phenotype_count(table.params.n_inputs) - represented));
  }
  CsvWriter w(out, m, redundancy_header());
  const std::string total = std::to_string(table.total_samples);
  if (table.params.n_inputs <= 4) {
    for (std::uint64_t v = 0; v < phenotype_count(table.params.n_inputs); ++v) {
      const auto p = Phenotype::from_value(table.params.n_inputs, v);
      w.row({p.to_hex(), std::to_string(table.count(p)), total});
    }
  } else {
    for (const auto& [p, c] : table.counts) w.row({p.to_hex(), std::to_string(c), total});
  }
}

RedundancyTable read_redundancy_csv(const CsvTable& csv, int n_inputs) {
  RedundancyTable t;
  t.params.n_inputs = n_inputs;
  const auto pc = csv.column("phenotype");
  const auto cc = csv.column("count");
  const auto tc = csv.column("total_samples");
  bool first = true;
  for (const auto& row : csv.rows) {
    const std::uint64_t total = parse_count(field(row, tc));
    if (first) {
      t.total_samples = total;
      first = false;
    } else if (total != t.total_samples) {
      throw ValidationError("inconsistent total_samples in redundancy table");
    }
    const std::uint64_t c = parse_count(field(row, cc));
    if (c > 0) t.counts[Phenotype::from_hex(field(row, pc), n_inputs)] += c;
  }
  return t;
}

void write_rank_csv(std::ostream& out, const RankTable& table, const CsvMeta& meta) {
  CsvMeta m = meta;
  if (table.unrepresented) m.extra.emplace_back("unrepresented", std::to_string(*table.unrepresented));
  CsvWriter w(out, m, rank_header());
  for (const auto& e : table.entries) {
    w.row({std::to_string(e.rank), e.phenotype.to_hex(), std::to_string(e.count), format_real(e.log10_redundancy)});
  }
}

void write_pheno_csv(std::ostream& out, const std::vector<PhenotypeRecord>& records, const CsvMeta& meta) {
  CsvWriter w(out, meta, pheno_header());
  for (const auto& r : records) {
    w.row({r.phenotype.to_hex(), format_optional(r.log10_redundancy), format_optional(r.robustness),
           format_optional(r.evolvability_evo), format_optional(r.evolvability_samp), format_optional(r.tononi),
           format_optional(r.kolmogorov), r.k_exact ? (*r.k_exact ? "true" : "false") : ""});
  }
}

std::vector<PhenotypeRecord> read_pheno_csv(const CsvTable& csv, int n_inputs) {
  const auto& h = pheno_header();
  std::vector<std::size_t> idx;
  for (const auto& name : h) idx.push_back(csv.column(name));
  std::vector<PhenotypeRecord> out;
  for (const auto& row : csv.rows) {
    PhenotypeRecord r;
    r.phenotype = Phenotype::from_hex(field(row, idx[0]), n_inputs);
    r.log10_redundancy = optional_number(field(row, idx[1]));
    r.robustness = optional_number(field(row, idx[2]));
    r.evolvability_evo = optional_number(field(row, idx[3]));
    r.evolvability_samp = optional_number(field(row, idx[4]));
    r.tononi = optional_number(field(row, idx[5]));
    r.kolmogorov = optional_number(field(row, idx[6]));
    const auto exact = field(row, idx[7]);
    if (!exact.empty()) r.k_exact = exact == "true";
    out.push_back(r);
  }
  return out;
}

void write_walk_csv(std::ostream& out, const std::vector<WalkRow>& rows, const CsvMeta& meta) {
  CsvWriter w(out, meta, walk_header());
  for (const auto& r : rows) w.row({std::to_string(r.step), r.accepted ? "1" : "0", r.phenotype.to_hex()});
}

void write_epochal_csv(std::ostream& out, const std::vector<DistancePoint>& trace, const CsvMeta& meta) {
  CsvWriter w(out, meta, epochal_header());
  for (const auto& d : trace) w.row({std::to_string(d.step), std::to_string(d.hamming_distance), d.phenotype.to_hex()});
}

}  // namespace gpmap
