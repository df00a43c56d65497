#include "gpmap/complexity.hpp"

#include "gpmap/error.hpp"
#include "gpmap/parallel.hpp"
#include "gpmap/phenotype_set.hpp"

#include <limits>

namespace gpmap {

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

ChromosomeParams search_params(const ChromosomeParams& params, int gates, bool unrestricted) {
  return params.with_gates(gates, unrestricted);
}

// Depth-first enumeration of every m-gate CGP circuit with incremental gate evaluation.
class CgpEnumerator {
public:
  explicit CgpEnumerator(const ChromosomeParams& p)
      : n_(p.n_inputs), m_(static_cast<std::size_t>(p.n_gates)), levels_back_(p.effective_levels_back()),
        gates_(p.gate_set), mask_(column_mask(p.n_inputs)), nodes_(static_cast<std::size_t>(n_) + m_), choice_(m_) {
    const auto& ctx = standard_contexts(n_);
    for (std::size_t i = 0; i < static_cast<std::size_t>(n_); ++i) nodes_[i] = ctx.rows[i];
  }

  /// Number of top-level partitions (choices of the first gate).
  std::size_t partitions() const {
    const auto r = cgp_input_range(n_, levels_back_, 0);
    return gates_.size() * static_cast<std::size_t>(r.size()) * static_cast<std::size_t>(r.size());
  }

  /// Visits every circuit whose first gate is choice `part`; `visit(output)` returns true to stop.
  template <typename Visit>
  bool run_partition(std::size_t part, Visit& visit) {
    const auto r = cgp_input_range(n_, levels_back_, 0);
    const auto rs = static_cast<std::size_t>(r.size());
    const Gate f = gates_[part / (rs * rs)];
    const int a = r.lo + static_cast<int>((part / rs) % rs);
    const int b = r.lo + static_cast<int>(part % rs);
    set_gate(0, f, a, b);
    if (m_ == 1) return visit(nodes_[static_cast<std::size_t>(n_)]);
    return descend(1, visit);
  }

  CgpGenotype current() const {
    return CgpGenotype{n_, levels_back_, choice_};
  }

private:
  void set_gate(std::size_t p, Gate f, int a, int b) {
    nodes_[static_cast<std::size_t>(n_) + p] =
        apply(f, nodes_[static_cast<std::size_t>(a - 1)], nodes_[static_cast<std::size_t>(b - 1)]) & mask_;
    choice_[p] = {f, a, b};
  }

  template <typename Visit>
  bool descend(std::size_t p, Visit& visit) {
    const auto r = cgp_input_range(n_, levels_back_, p);
    const bool last = p + 1 == m_;
    for (const Gate f : gates_.gates()) {
      for (int a = r.lo; a <= r.hi; ++a) {
        for (int b = r.lo; b <= r.hi; ++b) {
          set_gate(p, f, a, b);
          if (last ? visit(nodes_[static_cast<std::size_t>(n_) + p]) : descend(p + 1, visit)) return true;
        }
      }
    }
    return false;
  }

  int n_;
  std::size_t m_;
  int levels_back_;
  GateSet gates_;
  BitRow mask_;
  std::vector<BitRow> nodes_;
  std::vector<CgpNode> choice_;
};

// Depth-first enumeration of every m-instruction LGP program; registers are copied per depth.
class LgpEnumerator {
public:
  explicit LgpEnumerator(const ChromosomeParams& p)
      : n_(p.n_inputs), c_(p.n_calc_registers), m_(static_cast<std::size_t>(p.n_gates)), gates_(p.gate_set),
        mask_(column_mask(p.n_inputs)), regs_(m_ + 1, std::vector<BitRow>(static_cast<std::size_t>(c_ + n_))),
        choice_(m_) {
    const auto& ctx = standard_contexts(n_);
    for (std::size_t i = 0; i < static_cast<std::size_t>(n_); ++i) regs_[0][static_cast<std::size_t>(c_) + i] = ctx.rows[i];
  }

  std::size_t partitions() const {
    const auto regs = static_cast<std::size_t>(c_ + n_);
    return gates_.size() * static_cast<std::size_t>(c_) * regs * regs;
  }

  template <typename Visit>
  bool run_partition(std::size_t part, Visit& visit) {
    const auto regs = static_cast<std::size_t>(c_ + n_);
    const Gate f = gates_[part / (static_cast<std::size_t>(c_) * regs * regs)];
    const int out = 1 + static_cast<int>((part / (regs * regs)) % static_cast<std::size_t>(c_));
    const int a = 1 + static_cast<int>((part / regs) % regs);
    const int b = 1 + static_cast<int>(part % regs);
    step(0, f, out, a, b);
    if (m_ == 1) return visit(regs_[1][0]);
    return descend(1, visit);
  }

  LgpGenotype current() const { return LgpGenotype{n_, c_, choice_}; }

private:
  void step(std::size_t p, Gate f, int out, int a, int b) {
    auto& next = regs_[p + 1];
    next = regs_[p];
    next[static_cast<std::size_t>(out - 1)] =
        apply(f, regs_[p][static_cast<std::size_t>(a - 1)], regs_[p][static_cast<std::size_t>(b - 1)]) & mask_;
    choice_[p] = {f, out, a, b};
  }

  template <typename Visit>
  bool descend(std::size_t p, Visit& visit) {
    const int regs = c_ + n_;
    const bool last = p + 1 == m_;
    for (const Gate f : gates_.gates()) {
      for (int out = 1; out <= c_; ++out) {
        for (int a = 1; a <= regs; ++a) {
          for (int b = 1; b <= regs; ++b) {
            step(p, f, out, a, b);
            if (last ? visit(regs_[p + 1][0]) : descend(p + 1, visit)) return true;
          }
        }
      }
    }
    return false;
  }

  int n_;
  int c_;
  std::size_t m_;
  GateSet gates_;
  BitRow mask_;
  std::vector<std::vector<BitRow>> regs_;
  std::vector<LgpInstruction> choice_;
};

// Calls `fn(enumerator)` with the enumerator matching the representation.
template <typename Fn>
auto with_enumerator(const ChromosomeParams& p, Fn&& fn) {
  if (p.repr == Representation::Cgp) {
    CgpEnumerator e(p);
    return fn(e);
  }
  LgpEnumerator e(p);
  return fn(e);
}

std::optional<Genotype> evolve_witness(const Phenotype& target, const ChromosomeParams& sized,
                                       const KolmogorovOptions& options, int gates) {
  const std::uint64_t stream = derive_seed(
      derive_seed(domain_seed(options.seed, StreamDomain::Kolmogorov), phenotype_stream_key(target)),
      static_cast<std::uint64_t>(gates));
  for (int a = 0; a < options.attempts; ++a) {
    Rng rng = make_rng(stream, static_cast<std::uint64_t>(a));
    auto run = epochal_evolve(target, sized, options.step_budget, rng);
    if (run.found()) return std::move(run.final_genotype);
  }
  return std::nullopt;
}

}  // namespace

std::uint64_t kolmogorov_space_size(const ChromosomeParams& params, int gates, bool unrestricted_levels_back) {
  const auto p = search_params(params, gates, unrestricted_levels_back);
  std::uint64_t size = 1;
  const auto fns = static_cast<std::uint64_t>(p.gate_set.size());
  if (p.repr == Representation::Cgp) {
    for (std::size_t j = 0; j < static_cast<std::size_t>(gates); ++j) {
      const auto r = static_cast<std::uint64_t>(cgp_input_range(p.n_inputs, p.effective_levels_back(), j).size());
      size = saturating_mul(size, saturating_mul(fns, r * r));
    }
  } else {
    const auto regs = static_cast<std::uint64_t>(p.n_calc_registers + p.n_inputs);
    const std::uint64_t per = fns * static_cast<std::uint64_t>(p.n_calc_registers) * regs * regs;
    for (int j = 0; j < gates; ++j) size = saturating_mul(size, per);
  }
  return size;
}

KolmogorovResult kolmogorov_complexity(const Phenotype& p, const ChromosomeParams& params,
                                       const KolmogorovOptions& options) {
  params.validate();
  if (p.n_inputs() != params.n_inputs) throw ValidationError("phenotype and parameters differ in input count");
  bool all_exhausted = true;
  for (int m = 1; m <= options.max_gates; ++m) {
    const auto sized = search_params(params, m, options.unrestricted_levels_back);
    KolmogorovResult result;
    result.value = m;
    result.attempts_per_size = options.attempts;
    result.step_budget = options.step_budget;
    if (kolmogorov_space_size(params, m, options.unrestricted_levels_back) <= options.exhaustive_limit) {
      const auto witness = with_enumerator(sized, [&](auto& e) -> std::optional<Genotype> {
        auto visit = [&](const BitRow& out) { return Phenotype(p.n_inputs(), out) == p; };
        for (std::size_t part = 0; part < e.partitions(); ++part) {
          if (e.run_partition(part, visit)) return Genotype{e.current()};
        }
        return std::nullopt;
      });
      if (witness) {
        result.exact = all_exhausted;
        result.witness = *witness;
        return result;
      }
    } else {
      if (auto witness = evolve_witness(p, sized, options, m)) {
        result.exact = all_exhausted;
        result.witness = std::move(*witness);
        return result;
      }
      all_exhausted = false;
    }
  }
  throw NotFoundError("no circuit computing " + p.to_hex() + " found with up to " + std::to_string(options.max_gates) +
                          " gates",
                      static_cast<std::size_t>(options.max_gates));
}

std::vector<std::optional<KolmogorovResult>> kolmogorov_table(const ChromosomeParams& params,
                                                              const KolmogorovOptions& options, unsigned workers) {
  params.validate();
  if (params.n_inputs > 4) throw ResourceError("the Kolmogorov table covers at most 4 inputs");
  const int n = params.n_inputs;
  const auto count = static_cast<std::size_t>(phenotype_count(n));
  std::vector<std::optional<KolmogorovResult>> table(count);
  std::size_t remaining = count;
  bool all_exhausted = true;

  for (int m = 1; m <= options.max_gates && remaining > 0; ++m) {
    const auto sized = search_params(params, m, options.unrestricted_levels_back);
    auto fresh = [&](int gates, bool exact, Genotype witness) {
      KolmogorovResult r;
      r.value = gates;
      r.exact = exact;
      r.attempts_per_size = options.attempts;
      r.step_budget = options.step_budget;
      r.witness = std::move(witness);
      return r;
    };

    if (kolmogorov_space_size(params, m, options.unrestricted_levels_back) <= options.exhaustive_limit) {
      const std::size_t parts = with_enumerator(sized, [](auto& e) { return e.partitions(); });
      // Per partition: newly reached phenotypes with their first witness, in enumeration order.
      std::vector<std::vector<std::pair<std::uint64_t, Genotype>>> hits(parts);
      parallel_for(parts, workers, [&](std::size_t part) {
        with_enumerator(sized, [&](auto& e) {
          std::vector<bool> seen(count, false);
          auto visit = [&](const BitRow& out) {
            const auto v = static_cast<std::size_t>(out.words[0]);
            if (!seen[v] && !table[v]) {
              seen[v] = true;
              hits[part].emplace_back(v, Genotype{e.current()});
            }
            return false;
          };
          e.run_partition(part, visit);
          return 0;
        });
      });
      for (auto& part_hits : hits) {
        for (auto& [v, g] : part_hits) {
          if (table[v]) continue;
          table[v] = fresh(m, all_exhausted, std::move(g));
          --remaining;
        }
      }
    } else {
      std::vector<std::size_t> open;
      for (std::size_t v = 0; v < count; ++v) {
        if (!table[v]) open.push_back(v);
      }
      std::vector<std::optional<Genotype>> found(open.size());
      parallel_for(open.size(), workers, [&](std::size_t i) {
        found[i] = evolve_witness(Phenotype::from_value(n, open[i]), sized, options, m);
      });
      for (std::size_t i = 0; i < open.size(); ++i) {
        if (!found[i]) continue;
        table[open[i]] = fresh(m, all_exhausted, std::move(*found[i]));
        --remaining;
      }
      all_exhausted = false;
    }
  }
  return table;
}

}  // namespace gpmap
