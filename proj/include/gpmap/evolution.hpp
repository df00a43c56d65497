#pragma once

#include "gpmap/evaluate.hpp"
#include "gpmap/genotype.hpp"
#include "gpmap/phenotype.hpp"
#include "gpmap/random.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace gpmap {

enum class LocusField : std::uint8_t { Function, Out, In1, In2 };

/// One mutable field of a genotype. For Function loci `range` indexes the gate set (0-based);
/// otherwise it is the legal node or register range.
struct MutationLocus {
  std::size_t position = 0;
  LocusField field = LocusField::Function;
  IndexRange range;

  friend bool operator==(const MutationLocus&, const MutationLocus&) = default;
};

/// Point mutation and neighbourhood enumeration for one genotype shape. Loci whose legal
/// range has a single value are left out. Mutation is locus-uniform, then value-uniform
/// among the alternatives to the current value.
class Mutator {
public:
  Mutator(const Genotype& shape, const GateSet& gates);

  const std::vector<MutationLocus>& loci() const noexcept { return loci_; }
  /// Sum over loci of (range size - 1).
  std::size_t neighbor_count() const noexcept { return neighbor_count_; }

  /// Changes exactly one locus of `g` in place. Throws ValidationError when there are no mutable loci.
  void mutate(Genotype& g, Rng& rng) const;

  /// Calls `visit(neighbor)` for every single-locus variant, locus-major and value-minor.
  /// `g` is modified during the walk and restored before returning.
  template <typename Visit>
  void for_each_neighbor(Genotype& g, Visit&& visit) const {
    for (const auto& locus : loci_) {
      const int current = get(g, locus);
      for (int v = locus.range.lo; v <= locus.range.hi; ++v) {
        if (v == current) continue;
        set(g, locus, v);
        visit(static_cast<const Genotype&>(g));
      }
      set(g, locus, current);
    }
  }

  int get(const Genotype& g, const MutationLocus& locus) const;
  void set(Genotype& g, const MutationLocus& locus, int value) const;

private:
  GateSet gates_;
  std::vector<MutationLocus> loci_;
  std::size_t neighbor_count_ = 0;
};

std::vector<MutationLocus> mutable_loci(const Genotype& g, const GateSet& gates);

Genotype point_mutate(const Genotype& g, const GateSet& gates, Rng& rng);

/// Every distinct single-locus variant of `g`, each once, locus-major then value-minor.
std::vector<Genotype> enumerate_neighbors(const Genotype& g, const GateSet& gates);

struct WalkOptions {
  bool record_trace = false;
  /// Called after every step with the step number (1-based), whether the mutant was accepted, and the current genotype.
  std::function<void(std::uint64_t, bool, const Genotype&)> on_step;
};

struct WalkResult {
  Genotype final_genotype;
  std::uint64_t steps_taken = 0;
  std::uint64_t accepted_steps = 0;
  /// Accepted genotypes in order, when requested.
  std::vector<Genotype> trace;
};

/// (1+1) neutral walk: mutate, accept iff the phenotype is unchanged. Runs exactly `max_steps` steps.
WalkResult neutral_walk(const Genotype& start, const GateSet& gates, std::uint64_t max_steps, Rng& rng,
                        const WalkOptions& options = {});

enum class EpochalOutcome { Found, StepLimit };

struct DistancePoint {
  std::uint64_t step = 0;
  int hamming_distance = 0;
  Phenotype phenotype;
};

struct EpochalResult {
  EpochalOutcome outcome = EpochalOutcome::StepLimit;
  Genotype final_genotype;
  std::uint64_t steps_taken = 0;
  /// The starting point and every accepted change of phenotype, when requested.
  std::vector<DistancePoint> distance_trace;

  bool found() const noexcept { return outcome == EpochalOutcome::Found; }
};

/// Epochal evolution from a random genotype of `params`: neutral mutants are accepted, mutants
/// whose phenotype is strictly Hamming-closer to `target` start a new epoch, everything else is
/// rejected. Stops when the target is reached (including at step 0) or after `max_steps`.
EpochalResult epochal_evolve(const Phenotype& target, const ChromosomeParams& params, std::uint64_t max_steps, Rng& rng,
                             bool record_trace = false);

/// Same search from a given starting genotype.
EpochalResult epochal_evolve_from(const Genotype& start, const Phenotype& target, const GateSet& gates,
                                  std::uint64_t max_steps, Rng& rng, bool record_trace = false);

}  // namespace gpmap
