#pragma once

#include "gpmap/genotype.hpp"

#include <cstdint>
#include <random>

namespace gpmap {

using Rng = std::mt19937_64;

/// Seed of sub-stream `index` of `master`. Every parallel task draws from its own
/// sub-stream, so results never depend on scheduling or worker count.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

inline Rng make_rng(std::uint64_t master, std::uint64_t index) { return Rng{derive_seed(master, index)}; }

/// Top-level split of a master seed, one branch per kind of task.
enum class StreamDomain : std::uint64_t { Sampling = 1, Evolution = 2, SourceSampling = 3, Kolmogorov = 4, Phenotypes = 5 };

inline std::uint64_t domain_seed(std::uint64_t master, StreamDomain domain) noexcept {
  return derive_seed(master, static_cast<std::uint64_t>(domain));
}

/// Uniform integer in [lo, hi].
inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>{lo, hi}(rng); }

/// Uniform over the representable genotype space: every field independently uniform over its legal range.
Genotype random_genotype(const ChromosomeParams& params, Rng& rng);
CgpGenotype random_cgp(const ChromosomeParams& params, Rng& rng);
LgpGenotype random_lgp(const ChromosomeParams& params, Rng& rng);

/// Redraws every field of `g` in place with the same law as random_genotype (and the same draws
/// from `rng`), reusing its storage. `g` is reshaped to `params` when needed.
void randomize(Genotype& g, const ChromosomeParams& params, Rng& rng);

}  // namespace gpmap
