#include "gpmap/metrics.hpp"

#include "gpmap/error.hpp"
#include "gpmap/parallel.hpp"
#include "gpmap/phenotype_set.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <mutex>
#include <unordered_map>

namespace gpmap {

namespace {

constexpr std::uint64_t kSourceChunk = std::uint64_t{1} << 14;

std::uint64_t chunk_size(std::uint64_t chunk, std::uint64_t total, std::uint64_t per_chunk) {
  const std::uint64_t begin = chunk * per_chunk;
  return std::min(per_chunk, total - begin);
}

}  // namespace

std::uint64_t RedundancyTable::count(const Phenotype& p) const {
  const auto it = counts.find(p);
  return it == counts.end() ? 0 : it->second;
}

void RedundancyTable::merge(const RedundancyTable& other) {
  if (!(params == other.params)) throw ValidationError("cannot merge redundancy tables with different parameters");
  if (seed != other.seed) throw ValidationError("cannot merge redundancy tables with different seeds");
  total_samples += other.total_samples;
  for (const auto& [p, c] : other.counts) counts[p] += c;
}

RedundancyTable sample_redundancy(const ChromosomeParams& params, std::uint64_t n_samples, std::uint64_t seed,
                                  unsigned workers, Shard shard) {
  params.validate();
  if (n_samples < 1) throw ValidationError("sample count must be at least 1");
  if (shard.count < 1 || shard.index >= shard.count) throw ValidationError("invalid shard");

  RedundancyTable table;
  table.params = params;
  table.seed = seed;

  const std::uint64_t chunks = (n_samples + kSampleChunk - 1) / kSampleChunk;
  std::vector<std::uint64_t> mine;
  for (std::uint64_t c = shard.index; c < chunks; c += shard.count) mine.push_back(c);

  const std::uint64_t stream = domain_seed(seed, StreamDomain::Sampling);
  const bool dense = params.n_inputs <= 4;
  const std::size_t dense_size = dense ? std::size_t{1} << (std::size_t{1} << params.n_inputs) : 0;
  std::vector<std::uint64_t> dense_total(dense_size, 0);
  std::unordered_map<Phenotype, std::uint64_t> sparse_total;
  std::mutex merge_mutex;

  parallel_for(mine.size(), workers, [&](std::size_t task) {
    const std::uint64_t c = mine[task];
    const std::uint64_t n = chunk_size(c, n_samples, kSampleChunk);
    Rng rng = make_rng(stream, c);
    Genotype g = params.repr == Representation::Cgp ? Genotype{CgpGenotype{}} : Genotype{LgpGenotype{}};
    if (dense) {
      std::vector<std::uint64_t> local(dense_size, 0);
      for (std::uint64_t i = 0; i < n; ++i) {
        randomize(g, params, rng);
        ++local[static_cast<std::size_t>(phenotype_of(g).value())];
      }
      std::lock_guard lock(merge_mutex);
      for (std::size_t i = 0; i < dense_size; ++i) dense_total[i] += local[i];
    } else {
      std::unordered_map<Phenotype, std::uint64_t> local;
      for (std::uint64_t i = 0; i < n; ++i) {
        randomize(g, params, rng);
        ++local[phenotype_of(g)];
      }
      std::lock_guard lock(merge_mutex);
      for (const auto& [p, count] : local) sparse_total[p] += count;
    }
  });

  for (const auto c : mine) table.total_samples += chunk_size(c, n_samples, kSampleChunk);
  if (dense) {
    for (std::size_t v = 0; v < dense_size; ++v) {
      if (dense_total[v] != 0) table.counts.emplace(Phenotype::from_value(params.n_inputs, v), dense_total[v]);
    }
  } else {
    table.counts.insert(sparse_total.begin(), sparse_total.end());
  }
  return table;
}

RankTable rank_table(const RedundancyTable& table) {
  RankTable out;
  out.entries.reserve(table.counts.size());
  for (const auto& [p, c] : table.counts) {
    if (c == 0) continue;
    out.entries.push_back({0, p, c, std::log10(static_cast<double>(c))});
  }
  std::stable_sort(out.entries.begin(), out.entries.end(), [](const RankEntry& a, const RankEntry& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.phenotype < b.phenotype;
  });
  for (std::size_t i = 0; i < out.entries.size(); ++i) out.entries[i].rank = i + 1;
  if (table.params.n_inputs <= 5) {
    out.unrepresented = phenotype_count(table.params.n_inputs) - out.entries.size();
  }
  return out;
}

NeighborhoodSummary summarize_neighborhood(const Genotype& g, const GateSet& gates) {
  const Mutator mutator(g, gates);
  const Phenotype self = phenotype_of(g);
  PhenotypeSet others(self.n_inputs());
  NeighborhoodSummary s;
  Genotype work = g;
  mutator.for_each_neighbor(work, [&](const Genotype& n) {
    ++s.neighbors;
    const Phenotype p = phenotype_of(n);
    if (p == self) {
      ++s.neutral;
    } else {
      others.insert(p);
    }
  });
  s.distinct_other = others.size();
  return s;
}

double genotype_robustness(const Genotype& g, const GateSet& gates) {
  const auto s = summarize_neighborhood(g, gates);
  if (s.neighbors == 0) throw ValidationError("genotype has no mutable loci");
  return static_cast<double>(s.neutral) / static_cast<double>(s.neighbors);
}

std::size_t genotype_evolvability(const Genotype& g, const GateSet& gates, bool include_self) {
  const auto s = summarize_neighborhood(g, gates);
  if (s.neighbors == 0) throw ValidationError("genotype has no mutable loci");
  return s.distinct_other + (include_self && s.neutral > 0 ? 1 : 0);
}

std::string_view to_string(SourceKind kind) noexcept { return kind == SourceKind::Evolution ? "evolution" : "sampling"; }

SourceKind parse_source_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "evolution" || lower == "evo") return SourceKind::Evolution;
  if (lower == "sampling" || lower == "samp") return SourceKind::Sampling;
  throw ValidationError("unknown method '" + std::string(text) + "' (expected evolution or sampling)");
}

std::uint64_t phenotype_stream_key(const Phenotype& p) noexcept {
  return derive_seed(p.bits().words[0] ^ (static_cast<std::uint64_t>(p.n_inputs()) << 56), p.bits().words[1]);
}

GenotypeSample find_genotypes(const Phenotype& target, const ChromosomeParams& params, const SourceSpec& spec,
                              std::uint64_t seed, unsigned workers) {
  params.validate();
  if (target.n_inputs() != params.n_inputs) throw ValidationError("target and parameters differ in input count");
  if (spec.k < 1) throw ValidationError("k must be at least 1");

  GenotypeSample out;
  out.target = target;
  out.kind = spec.kind;
  out.requested = spec.k;

  if (spec.kind == SourceKind::Evolution) {
    const std::uint64_t stream = derive_seed(domain_seed(seed, StreamDomain::Evolution), phenotype_stream_key(target));
    std::vector<EpochalResult> runs(spec.k);
    parallel_for(spec.k, workers, [&](std::size_t i) {
      Rng rng = make_rng(stream, i);
      runs[i] = epochal_evolve(target, params, spec.budget, rng);
      if (runs[i].found() && spec.neutral_steps > 0) {
        auto walk = neutral_walk(runs[i].final_genotype, params.gate_set, spec.neutral_steps, rng);
        runs[i].final_genotype = std::move(walk.final_genotype);
        runs[i].steps_taken += walk.steps_taken;
      }
    });
    for (auto& run : runs) {
      out.work += run.steps_taken;
      if (run.found()) out.genotypes.push_back(std::move(run.final_genotype));
    }
    return out;
  }

  const std::uint64_t stream = derive_seed(domain_seed(seed, StreamDomain::SourceSampling), phenotype_stream_key(target));
  const std::uint64_t chunks = (spec.budget + kSourceChunk - 1) / kSourceChunk;
  const unsigned wave = std::max(1u, workers);
  for (std::uint64_t first = 0; first < chunks && out.genotypes.size() < spec.k; first += wave) {
    const std::uint64_t in_wave = std::min<std::uint64_t>(wave, chunks - first);
    // hits[i] holds (offset within chunk, genotype) for chunk first + i.
    std::vector<std::vector<std::pair<std::uint64_t, Genotype>>> hits(in_wave);
    parallel_for(in_wave, workers, [&](std::size_t i) {
      const std::uint64_t c = first + i;
      const std::uint64_t n = chunk_size(c, spec.budget, kSourceChunk);
      Rng rng = make_rng(stream, c);
      Genotype g = params.repr == Representation::Cgp ? Genotype{CgpGenotype{}} : Genotype{LgpGenotype{}};
      for (std::uint64_t s = 0; s < n; ++s) {
        randomize(g, params, rng);
        if (phenotype_of(g) == target) hits[i].emplace_back(s, g);
      }
    });
    for (std::uint64_t i = 0; i < in_wave; ++i) {
      const std::uint64_t c = first + i;
      for (auto& [offset, g] : hits[i]) {
        out.genotypes.push_back(std::move(g));
        if (out.genotypes.size() == spec.k) {
          out.work = c * kSourceChunk + offset + 1;
          return out;
        }
      }
    }
  }
  out.work = spec.budget;
  return out;
}

double mean_robustness(std::span<const Genotype> genotypes, const GateSet& gates) {
  if (genotypes.empty()) return std::numeric_limits<double>::quiet_NaN();
  double sum = 0.0;
  for (const auto& g : genotypes) sum += genotype_robustness(g, gates);
  return sum / static_cast<double>(genotypes.size());
}

std::size_t neighborhood_union_size(std::span<const Genotype> genotypes, const GateSet& gates, const Phenotype& focal,
                                    bool include_self) {
  PhenotypeSet seen(focal.n_inputs());
  for (const auto& g : genotypes) {
    const Mutator mutator(g, gates);
    Genotype work = g;
    mutator.for_each_neighbor(work, [&](const Genotype& n) { seen.insert(phenotype_of(n)); });
  }
  const bool has_self = seen.contains(focal);
  return seen.size() - (has_self && !include_self ? 1 : 0);
}

Estimate<double> robustness_estimate(const GenotypeSample& sample, const GateSet& gates) {
  return {mean_robustness(sample.genotypes, gates), sample.genotypes.size(), sample.requested, sample.kind};
}

Estimate<std::size_t> evolvability_estimate(const GenotypeSample& sample, const GateSet& gates, bool include_self) {
  return {neighborhood_union_size(sample.genotypes, gates, sample.target, include_self), sample.genotypes.size(),
          sample.requested, sample.kind};
}

namespace {

void require_complete(const GenotypeSample& sample, const char* what) {
  if (sample.complete()) return;
  throw PartialResultError(std::string(what) + ": found " + std::to_string(sample.genotypes.size()) + " of " +
                               std::to_string(sample.requested) + " genotypes for " + sample.target.to_hex() + " by " +
                               std::string(to_string(sample.kind)),
                           sample.genotypes.size(), sample.requested);
}

}  // namespace

Estimate<double> phenotype_robustness(const Phenotype& p, const ChromosomeParams& params, const SourceSpec& spec,
                                      std::uint64_t seed, unsigned workers) {
  const auto sample = find_genotypes(p, params, spec, seed, workers);
  require_complete(sample, "phenotype robustness");
  return robustness_estimate(sample, params.gate_set);
}

Estimate<std::size_t> phenotype_evolvability(const Phenotype& p, const ChromosomeParams& params, const SourceSpec& spec,
                                             std::uint64_t seed, unsigned workers, bool include_self) {
  const auto sample = find_genotypes(p, params, spec, seed, workers);
  require_complete(sample, "phenotype evolvability");
  return evolvability_estimate(sample, params.gate_set, include_self);
}

}  // namespace gpmap
