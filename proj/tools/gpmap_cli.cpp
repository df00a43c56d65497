#include "gpmap/complexity.hpp"
#include "gpmap/csv.hpp"
#include "gpmap/error.hpp"
#include "gpmap/evolution.hpp"
#include "gpmap/experiment.hpp"
#include "gpmap/metrics.hpp"
#include "gpmap/oracle.hpp"
#include "gpmap/parallel.hpp"
#include "gpmap/stats.hpp"
#include "gpmap/text_format.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

using namespace gpmap;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitPartial = 2;
constexpr int kExitResource = 3;

// Budgets above these need --paper-scale.
constexpr std::uint64_t kDeskSamples = 1'000'000'000;
constexpr std::size_t kDeskK = 10'000;

struct Common {
  std::string repr = "cgp";
  int inputs = 3;
  std::optional<int> gates;
  int levels_back = 8;
  int registers = 2;
  std::string gate_set = "full";
  std::uint64_t seed = 0;
  unsigned workers = default_workers();
  std::string out = "-";
  bool paper_scale = false;

  ChromosomeParams params() const {
    ChromosomeParams p;
    p.repr = parse_representation(repr);
    if (paper_scale) {
      p = p.repr == Representation::Cgp ? ChromosomeParams::paper_cgp_4in() : ChromosomeParams::paper_lgp_4in();
    } else {
      p.n_inputs = inputs;
      p.levels_back = levels_back;
      p.n_calc_registers = registers;
    }
    if (gates) p.n_gates = *gates;
    p.gate_set = GateSet::parse(gate_set);
    p.validate();
    return p;
  }

  ExperimentConfig config(const std::string& kind) const {
    ExperimentConfig c;
    c.params = params();
    c.kind = kind;
    c.master_seed = seed;
    c.workers = workers;
    c.output = out;
    return c;
  }
};

void add_common(CLI::App* cmd, Common& c, bool with_params = true) {
  if (with_params) {
    cmd->add_option("--repr", c.repr, "cgp or lgp")->capture_default_str();
    cmd->add_option("--inputs", c.inputs, "input count n")->capture_default_str();
    cmd->add_option("--gates,--instructions", c.gates, "gate (CGP) or instruction (LGP) count [11 CGP, 10 LGP]");
    cmd->add_option("--levels-back", c.levels_back, "CGP levels back")->capture_default_str();
    cmd->add_option("--registers", c.registers, "LGP computational registers")->capture_default_str();
    cmd->add_option("--gate-set", c.gate_set, "full, no-xor, or a list such as and,or,xor")->capture_default_str();
    cmd->add_flag("--paper-scale", c.paper_scale, "4-input presets and unbounded budgets");
  }
  cmd->add_option("--seed", c.seed, "master seed")->capture_default_str();
  cmd->add_option("--workers", c.workers, "worker threads [GPMAP_WORKERS or hardware]");
  cmd->add_option("--out", c.out, "output file, - for stdout")->capture_default_str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ValidationError("cannot write " + path);
  f << text;
}

void require_desk_scale(const Common& c, std::uint64_t samples, std::size_t k) {
  if (!c.paper_scale && (samples > kDeskSamples || k > kDeskK)) {
    throw ResourceError("budget beyond desk scale; pass --paper-scale to run it");
  }
}

ChromosomeParams with_default_gates(ChromosomeParams p, const Common& c) {
  if (!c.gates && !c.paper_scale && p.repr == Representation::Lgp) p.n_gates = 10;
  return p;
}

Phenotype phenotype_arg(const std::string& text, int n) { return Phenotype::from_hex(text, n); }

struct SourceArgs {
  std::string method = "evolution";
  std::size_t k = 600;
  std::optional<std::uint64_t> budget;
  std::uint64_t neutral_steps = SourceSpec{}.neutral_steps;

  SourceSpec spec(int n_inputs) const {
    const auto kind = parse_source_kind(method);
    const std::uint64_t b = budget ? *budget : (kind == SourceKind::Evolution ? default_max_steps(n_inputs) : 10'000'000);
    return {kind, k, b, neutral_steps};
  }
};

void add_source(CLI::App* cmd, SourceArgs& s) {
  cmd->add_option("--method", s.method, "evolution or sampling")->capture_default_str();
  cmd->add_option("--k", s.k, "genotypes per phenotype")->capture_default_str();
  cmd->add_option("--budget,--max-steps", s.budget, "evolution: steps per run; sampling: genotypes drawn");
  cmd->add_option("--neutral-steps", s.neutral_steps, "neutral drift after each evolution hit")->capture_default_str();
}

void note_partial(const std::string& what, std::size_t found, std::size_t requested) {
  std::cerr << "warning: " << what << " used " << found << " of " << requested << " genotypes\n";
}

// join helpers

std::map<std::string, PhenotypeRecord> records_by_hex(const std::vector<PhenotypeRecord>& rs) {
  std::map<std::string, PhenotypeRecord> m;
  for (const auto& r : rs) m[r.phenotype.to_hex()] = r;
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Genotype-phenotype maps of Boolean circuits"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  // redundancy
  Common red;
  std::uint64_t red_samples = 1'000'000;
  std::uint64_t shard = 0, shards = 1;
  auto* cmd_red = app.add_subcommand("redundancy", "sample random genotypes and count phenotypes");
  add_common(cmd_red, red);
  cmd_red->add_option("--samples", red_samples)->capture_default_str();
  cmd_red->add_option("--shard", shard, "this process's shard index")->capture_default_str();
  cmd_red->add_option("--shards", shards, "number of shards")->capture_default_str();

  // rank
  Common rk;
  std::string rank_in;
  std::uint64_t rank_samples = 1'000'000;
  auto* cmd_rank = app.add_subcommand("rank", "rank phenotypes by redundancy");
  add_common(cmd_rank, rk);
  cmd_rank->add_option("--in", rank_in, "redundancy.csv to rank (otherwise sample)");
  cmd_rank->add_option("--samples", rank_samples)->capture_default_str();

  // robustness / evolvability
  Common rob, evo;
  SourceArgs rob_src, evo_src;
  std::string rob_pheno, rob_circuit, evo_pheno, evo_circuit;
  bool evo_self = false;
  auto* cmd_rob = app.add_subcommand("robustness", "genotype or phenotype robustness");
  add_common(cmd_rob, rob);
  add_source(cmd_rob, rob_src);
  auto* rob_target = cmd_rob->add_option("--phenotype", rob_pheno, "phenotype in hex");
  cmd_rob->add_option("--circuit", rob_circuit, "circuit text")->excludes(rob_target);
  auto* cmd_evo = app.add_subcommand("evolvability", "genotype or phenotype evolvability");
  add_common(cmd_evo, evo);
  add_source(cmd_evo, evo_src);
  auto* evo_target = cmd_evo->add_option("--phenotype", evo_pheno, "phenotype in hex");
  cmd_evo->add_option("--circuit", evo_circuit, "circuit text")->excludes(evo_target);
  cmd_evo->add_flag("--include-self", evo_self, "count the focal phenotype when a neighbour is neutral");

  // tononi
  Common ton;
  SourceArgs ton_src;
  std::string ton_pheno, ton_circuit;
  bool active_only = false;
  auto* cmd_ton = app.add_subcommand("tononi", "Tononi complexity of a circuit or phenotype");
  add_common(cmd_ton, ton);
  add_source(cmd_ton, ton_src);
  auto* ton_target = cmd_ton->add_option("--phenotype", ton_pheno, "phenotype in hex");
  cmd_ton->add_option("--circuit", ton_circuit, "circuit text")->excludes(ton_target);
  cmd_ton->add_flag("--active-only", active_only, "use only gates the output depends on");

  // kolmogorov
  Common kol;
  KolmogorovOptions kopt;
  std::string kol_pheno;
  bool kol_all = false, kol_restricted = false;
  auto* cmd_kol = app.add_subcommand("kolmogorov", "minimum gate count of a phenotype");
  add_common(cmd_kol, kol);
  auto* kol_target = cmd_kol->add_option("--phenotype", kol_pheno, "phenotype in hex");
  cmd_kol->add_flag("--all", kol_all, "every phenotype (n <= 4), as CSV")->excludes(kol_target);
  cmd_kol->add_option("--attempts", kopt.attempts)->capture_default_str();
  cmd_kol->add_option("--step-budget", kopt.step_budget)->capture_default_str();
  cmd_kol->add_option("--exhaustive-limit", kopt.exhaustive_limit)->capture_default_str();
  cmd_kol->add_option("--max-gates", kopt.max_gates)->capture_default_str();
  cmd_kol->add_flag("--restricted", kol_restricted, "keep the configured levels back");

  // neutral-walk
  Common walk;
  std::string walk_circuit;
  std::uint64_t walk_steps = 10'000;
  auto* cmd_walk = app.add_subcommand("neutral-walk", "neutral walk, one row per step");
  add_common(cmd_walk, walk);
  cmd_walk->add_option("--circuit", walk_circuit, "start circuit (random if absent)");
  cmd_walk->add_option("--steps", walk_steps)->capture_default_str();

  // epochal
  Common epo;
  std::string epo_target;
  std::optional<std::uint64_t> epo_steps;
  auto* cmd_epo = app.add_subcommand("epochal", "epochal evolution toward a target");
  add_common(cmd_epo, epo);
  cmd_epo->add_option("--target", epo_target, "target phenotype in hex")->required();
  cmd_epo->add_option("--max-steps", epo_steps, "step limit [2e5 for n<=3, 1e6 above]");

  // oracle-enumerate
  Common orc;
  bool orc_components = false;
  std::uint64_t orc_cap = kDefaultEnumerationCap;
  auto* cmd_orc = app.add_subcommand("oracle-enumerate", "exact summary of a small genotype space");
  add_common(cmd_orc, orc);
  cmd_orc->add_flag("--components", orc_components, "count neutral components");
  cmd_orc->add_option("--cap", orc_cap, "largest space to enumerate")->capture_default_str();

  // phenotype-table
  Common tab;
  PhenotypeTableOptions topt;
  std::optional<std::size_t> tab_random;
  bool no_tononi = false, no_kolmogorov = false, tab_active = false;
  auto* cmd_tab = app.add_subcommand("phenotype-table", "every per-phenotype metric as pheno.csv");
  add_common(cmd_tab, tab);
  cmd_tab->add_option("--samples", topt.samples, "redundancy samples (0 skips)")->capture_default_str();
  cmd_tab->add_option("--k", topt.k_evolution, "evolution runs per phenotype (0 skips)")->capture_default_str();
  cmd_tab->add_option("--max-steps", topt.max_steps)->capture_default_str();
  cmd_tab->add_option("--neutral-steps", topt.neutral_steps)->capture_default_str();
  cmd_tab->add_option("--k-sampling", topt.k_sampling, "sampled genotypes per phenotype (0 skips)")->capture_default_str();
  cmd_tab->add_option("--sampling-budget", topt.sampling_budget)->capture_default_str();
  cmd_tab->add_option("--random", tab_random, "random phenotypes instead of all");
  cmd_tab->add_flag("--no-tononi", no_tononi);
  cmd_tab->add_flag("--no-kolmogorov", no_kolmogorov);
  cmd_tab->add_flag("--active-only", tab_active);

  // join
  Common jn;
  std::vector<std::string> join_in;
  int join_inputs = 3;
  auto* cmd_join = app.add_subcommand("join", "sum redundancy shards, or join per-phenotype CSVs into pheno.csv");
  add_common(cmd_join, jn, false);
  cmd_join->add_option("--inputs", join_inputs, "input count n")->capture_default_str();
  cmd_join->add_option("files", join_in, "CSV files")->required()->check(CLI::ExistingFile);

  // correlate
  std::string cor_in, cor_x, cor_y;
  auto* cmd_cor = app.add_subcommand("correlate", "Pearson and Spearman between two columns");
  cmd_cor->add_option("--in", cor_in)->required()->check(CLI::ExistingFile);
  cmd_cor->add_option("--x", cor_x)->required();
  cmd_cor->add_option("--y", cor_y)->required();

  // density
  Common den;
  std::string den_in, den_column = "tononi";
  std::size_t den_bins = 20, den_genotypes = 0;
  auto* cmd_den = app.add_subcommand("density", "histogram of a column, optionally against random genotypes");
  add_common(cmd_den, den);
  cmd_den->add_option("--in", den_in)->required()->check(CLI::ExistingFile);
  cmd_den->add_option("--column", den_column)->capture_default_str();
  cmd_den->add_option("--bins", den_bins)->capture_default_str();
  cmd_den->add_option("--genotype-samples", den_genotypes, "random genotypes whose complexity forms a second population");

  // dingle-fit
  std::string dg_in, dg_red;
  int dg_inputs = 3;
  auto* cmd_dg = app.add_subcommand("dingle-fit", "least-squares log2 frequency against Kolmogorov value");
  cmd_dg->add_option("--in", dg_in, "pheno.csv with a kolmogorov column")->required()->check(CLI::ExistingFile);
  cmd_dg->add_option("--redundancy", dg_red, "redundancy.csv with the sampled counts")->required()->check(CLI::ExistingFile);
  cmd_dg->add_option("--inputs", dg_inputs)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  int status = 0;
  try {
    if (cmd_red->parsed()) {
      require_desk_scale(red, red_samples, 0);
      auto c = red.config("redundancy");
      c.params = with_default_gates(c.params, red);
      c.samples = red_samples;
      auto meta = c.meta();
      if (shards > 1) meta.extra.emplace_back("shard", std::to_string(shard) + "/" + std::to_string(shards));
      std::ostringstream out;
      write_redundancy_csv(out, sample_redundancy(c.params, red_samples, red.seed, red.workers, {shard, shards}), meta);
      emit(red.out, out.str());
    } else if (cmd_rank->parsed()) {
      auto c = rk.config("rank");
      c.params = with_default_gates(c.params, rk);
      RedundancyTable t;
      if (!rank_in.empty()) {
        t = read_redundancy_csv(read_csv_file(rank_in), c.params.n_inputs);
        t.params = c.params;
        c.extra["source"] = rank_in;
      } else {
        require_desk_scale(rk, rank_samples, 0);
        c.samples = rank_samples;
        t = sample_redundancy(c.params, rank_samples, rk.seed, rk.workers);
      }
      std::ostringstream out;
      write_rank_csv(out, rank_table(t), c.meta());
      emit(rk.out, out.str());
    } else if (cmd_rob->parsed() || cmd_evo->parsed()) {
      const bool is_rob = cmd_rob->parsed();
      Common& c = is_rob ? rob : evo;
      const auto& circuit = is_rob ? rob_circuit : evo_circuit;
      const auto& pheno = is_rob ? rob_pheno : evo_pheno;
      const auto params = with_default_gates(c.params(), c);
      if (!circuit.empty()) {
        const auto g = parse_circuit(circuit, params.repr, {std::nullopt, params.n_inputs, params.n_calc_registers});
        if (is_rob) {
          std::printf("%s\n", format_real(genotype_robustness(g, params.gate_set)).c_str());
        } else {
          std::printf("%zu\n", genotype_evolvability(g, params.gate_set, evo_self));
        }
      } else {
        if (pheno.empty()) throw ValidationError("give --phenotype or --circuit");
        const auto spec = (is_rob ? rob_src : evo_src).spec(params.n_inputs);
        require_desk_scale(c, 0, spec.k);
        const auto sample = find_genotypes(phenotype_arg(pheno, params.n_inputs), params, spec, c.seed, c.workers);
        if (sample.genotypes.empty()) throw PartialResultError("no genotypes found", 0, spec.k);
        if (is_rob) {
          std::printf("%s\n", format_real(robustness_estimate(sample, params.gate_set).value).c_str());
        } else {
          std::printf("%zu\n", evolvability_estimate(sample, params.gate_set, evo_self).value);
        }
        if (!sample.complete()) {
          note_partial(is_rob ? "robustness" : "evolvability", sample.genotypes.size(), spec.k);
          status = kExitPartial;
        }
      }
    } else if (cmd_ton->parsed()) {
      TononiOptions topts;
      topts.active_only = active_only;
      topts.seed = ton.seed;
      if (!ton_circuit.empty()) {
        const auto p = ton.params();
        const auto repr = ton_circuit.find("circuit") != std::string::npos || ton_circuit.find("((") != std::string::npos
                              ? Representation::Cgp
                              : p.repr;
        const auto g = parse_circuit(ton_circuit, repr, {std::nullopt, p.n_inputs, p.n_calc_registers});
        GateSet all = GateSet::full();
        std::printf("%.4f\n", tononi_complexity(g, all, topts).complexity);
      } else {
        if (ton_pheno.empty()) throw ValidationError("give --phenotype or --circuit");
        const auto params = with_default_gates(ton.params(), ton);
        const auto spec = ton_src.spec(params.n_inputs);
        require_desk_scale(ton, 0, spec.k);
        const auto sample = find_genotypes(phenotype_arg(ton_pheno, params.n_inputs), params, spec, ton.seed, ton.workers);
        if (sample.genotypes.empty()) throw PartialResultError("no genotypes found", 0, spec.k);
        std::printf("%.4f\n", tononi_estimate(sample, params.gate_set, topts).value);
        if (!sample.complete()) {
          note_partial("tononi", sample.genotypes.size(), spec.k);
          status = kExitPartial;
        }
      }
    } else if (cmd_kol->parsed()) {
      const auto params = with_default_gates(kol.params(), kol);
      kopt.unrestricted_levels_back = !kol_restricted;
      kopt.seed = kol.seed;
      if (kol_all) {
        auto c = kol.config("kolmogorov");
        c.params = params;
        c.attempts = kopt.attempts;
        c.max_steps = kopt.step_budget;
        c.extra["restricted"] = kol_restricted ? "1" : "0";
        c.extra["max_gates"] = std::to_string(kopt.max_gates);
        c.extra["exhaustive_limit"] = std::to_string(kopt.exhaustive_limit);
        const auto table = kolmogorov_table(params, kopt, kol.workers);
        std::ostringstream out;
        CsvWriter w(out, c.meta(), {"phenotype", "kolmogorov", "k_exact", "witness"});
        for (std::size_t v = 0; v < table.size(); ++v) {
          const auto p = Phenotype::from_value(params.n_inputs, v).to_hex();
          if (table[v]) {
            w.row({p, std::to_string(table[v]->value), table[v]->exact ? "true" : "false",
                   "\"" + format_circuit(table[v]->witness) + "\""});
          } else {
            w.row({p, "", "", ""});
            status = kExitPartial;
          }
        }
        emit(kol.out, out.str());
      } else {
        if (kol_pheno.empty()) throw ValidationError("give --phenotype or --all");
        const auto k = kolmogorov_complexity(phenotype_arg(kol_pheno, params.n_inputs), params, kopt);
        std::printf("%d %s %s\n", k.value, k.exact ? "exact" : "upper-bound", format_circuit(k.witness).c_str());
      }
    } else if (cmd_walk->parsed()) {
      auto c = walk.config("neutral-walk");
      c.params = with_default_gates(c.params, walk);
      c.max_steps = walk_steps;
      Rng rng = make_rng(walk.seed, 0);
      Genotype start;
      if (walk_circuit.empty()) {
        start = random_genotype(c.params, rng);
      } else {
        start = parse_circuit(walk_circuit, c.params.repr, {c.params.levels_back, c.params.n_inputs, c.params.n_calc_registers});
        validate(start, c.params.gate_set);
        c.extra["start"] = walk_circuit;
      }
      std::vector<WalkRow> rows;
      rows.push_back({0, true, phenotype_of(start)});
      WalkOptions opts;
      opts.on_step = [&](std::uint64_t step, bool accepted, const Genotype& g) {
        rows.push_back({step, accepted, phenotype_of(g)});
      };
      const auto result = neutral_walk(start, c.params.gate_set, walk_steps, rng, opts);
      auto meta = c.meta();
      meta.extra.emplace_back("start", format_circuit(start));
      meta.extra.emplace_back("accepted", std::to_string(result.accepted_steps));
      std::ostringstream out;
      write_walk_csv(out, rows, meta);
      emit(walk.out, out.str());
    } else if (cmd_epo->parsed()) {
      auto c = epo.config("epochal");
      c.params = with_default_gates(c.params, epo);
      c.max_steps = epo_steps ? *epo_steps : default_max_steps(c.params.n_inputs);
      const auto target = phenotype_arg(epo_target, c.params.n_inputs);
      c.extra["target"] = target.to_hex();
      Rng rng = make_rng(epo.seed, 0);
      const auto r = epochal_evolve(target, c.params, c.max_steps, rng, true);
      auto meta = c.meta();
      meta.extra.emplace_back("outcome", r.found() ? "found" : "step-limit");
      meta.extra.emplace_back("steps", std::to_string(r.steps_taken));
      meta.extra.emplace_back("final", format_circuit(r.final_genotype));
      std::ostringstream out;
      write_epochal_csv(out, r.distance_trace, meta);
      emit(epo.out, out.str());
      if (!r.found()) status = kExitPartial;
    } else if (cmd_orc->parsed()) {
      auto c = orc.config("oracle-enumerate");
      c.params = with_default_gates(c.params, orc);
      c.extra["components"] = orc_components ? "1" : "0";
      const auto spec = make_enumeration_spec(c.params);
      const auto s = exact_map_summary(spec, {orc_components, orc_cap, orc.workers});
      auto meta = c.meta();
      meta.extra.emplace_back("space_size", std::to_string(s.space_size));
      meta.extra.emplace_back("neighbors_per_genotype", std::to_string(s.neighbors_per_genotype));
      std::ostringstream out;
      CsvWriter w(out, meta, {"phenotype", "count", "robustness", "evolvability", "components", "largest_component"});
      auto opt_int = [](const auto& v) { return v ? std::to_string(*v) : std::string{}; };
      for (const auto& e : s.phenotypes) {
        w.row({e.phenotype.to_hex(), std::to_string(e.count), format_optional(e.robustness), opt_int(e.evolvability),
               opt_int(e.components), opt_int(e.largest_component)});
      }
      emit(orc.out, out.str());
    } else if (cmd_tab->parsed()) {
      auto c = tab.config("phenotype-table");
      c.params = with_default_gates(c.params, tab);
      require_desk_scale(tab, topt.samples, topt.k_evolution);
      topt.random_phenotypes = tab_random;
      topt.tononi = !no_tononi;
      topt.kolmogorov = !no_kolmogorov;
      topt.tononi_options.active_only = tab_active;
      c.samples = topt.samples;
      c.k = topt.k_evolution;
      c.max_steps = topt.max_steps;
      c.extra = {{"neutral_steps", std::to_string(topt.neutral_steps)},
                 {"k_sampling", std::to_string(topt.k_sampling)},
                 {"sampling_budget", std::to_string(topt.sampling_budget)},
                 {"random", tab_random ? std::to_string(*tab_random) : "all"},
                 {"tononi", topt.tononi ? (tab_active ? "active" : "all") : "off"},
                 {"kolmogorov", topt.kolmogorov ? "on" : "off"}};
      const auto t = build_phenotype_table(c.params, topt, tab.seed, tab.workers);
      auto meta = c.meta();
      meta.extra.emplace_back("total_samples", std::to_string(t.redundancy.total_samples));
      std::ostringstream out;
      write_pheno_csv(out, t.records, meta);
      emit(tab.out, out.str());
      if (t.partial > 0) {
        std::cerr << "warning: " << t.partial << " phenotypes used fewer genotypes than requested\n";
        status = kExitPartial;
      }
    } else if (cmd_join->parsed()) {
      std::vector<CsvTable> tables;
      for (const auto& f : join_in) tables.push_back(read_csv_file(f));
      const bool all_redundancy = std::all_of(tables.begin(), tables.end(), [](const CsvTable& t) {
        return t.has_column("count") && t.has_column("total_samples");
      });
      CsvMeta meta;
      meta.config_hash = tables.front().comment_value("config_hash").value_or("");
      meta.seed = std::stoull(tables.front().comment_value("seed").value_or("0"));
      for (const auto& t : tables) {
        if (t.comment_value("config_hash").value_or("") != meta.config_hash) {
          throw ValidationError("inputs come from different configurations");
        }
      }
      if (const auto p = tables.front().comment_value("params")) meta.extra.emplace_back("params", *p);
      std::ostringstream out;
      if (all_redundancy) {
        RedundancyTable joined;
        for (std::size_t i = 0; i < tables.size(); ++i) {
          auto t = read_redundancy_csv(tables[i], join_inputs);
          if (i == 0) {
            joined = std::move(t);
          } else {
            for (const auto& [p, n] : t.counts) joined.counts[p] += n;
            joined.total_samples += t.total_samples;
          }
        }
        joined.params.n_inputs = join_inputs;
        meta.extra.emplace_back("experiment", "redundancy");
        write_redundancy_csv(out, joined, meta);
      } else {
        std::map<std::string, PhenotypeRecord> merged;
        for (const auto& t : tables) {
          if (t.has_column("count") && t.has_column("total_samples")) {
            const auto r = read_redundancy_csv(t, join_inputs);
            for (const auto& [p, n] : r.counts) {
              auto& rec = merged[p.to_hex()];
              rec.phenotype = p;
              rec.log10_redundancy = std::log10(static_cast<double>(n));
            }
            continue;
          }
          const auto pc = t.column("phenotype");
          for (const auto& row : t.rows) {
            const auto p = Phenotype::from_hex(row.at(pc), join_inputs);
            auto& rec = merged[p.to_hex()];
            rec.phenotype = p;
            auto take = [&](const char* name, std::optional<double>& field) {
              if (!t.has_column(name)) return;
              const auto& text = row.at(t.column(name));
              if (!text.empty()) field = std::stod(text);
            };
            take("log10_redundancy", rec.log10_redundancy);
            take("robustness", rec.robustness);
            take("evolvability_evo", rec.evolvability_evo);
            take("evolvability_samp", rec.evolvability_samp);
            take("tononi", rec.tononi);
            take("kolmogorov", rec.kolmogorov);
            if (t.has_column("k_exact") && !row.at(t.column("k_exact")).empty()) {
              rec.k_exact = row.at(t.column("k_exact")) == "true";
            }
          }
        }
        std::vector<PhenotypeRecord> records;
        for (auto& [hex, r] : merged) records.push_back(r);
        std::sort(records.begin(), records.end(),
                  [](const PhenotypeRecord& a, const PhenotypeRecord& b) { return a.phenotype < b.phenotype; });
        meta.extra.emplace_back("experiment", "join");
        write_pheno_csv(out, records, meta);
      }
      emit(jn.out, out.str());
    } else if (cmd_cor->parsed()) {
      const auto t = read_csv_file(cor_in);
      const auto xs = t.numeric(cor_x);
      const auto ys = t.numeric(cor_y);
      std::vector<double> x, y;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!std::isnan(xs[i]) && !std::isnan(ys[i])) {
          x.push_back(xs[i]);
          y.push_back(ys[i]);
        }
      }
      const auto c = correlate(x, y);
      std::printf("pearson=%s spearman=%s n=%zu\n", format_real(c.pearson).c_str(), format_real(c.spearman).c_str(), c.n);
    } else if (cmd_den->parsed()) {
      const auto t = read_csv_file(den_in);
      std::vector<double> values;
      for (double v : t.numeric(den_column)) {
        if (!std::isnan(v)) values.push_back(v);
      }
      if (values.empty()) throw ValidationError("column '" + den_column + "' has no values");
      auto c = den.config("density");
      c.params = with_default_gates(c.params, den);
      c.extra = {{"column", den_column}, {"bins", std::to_string(den_bins)}, {"genotype_samples", std::to_string(den_genotypes)}};
      std::ostringstream out;
      if (den_genotypes == 0) {
        const auto h = histogram(values, den_bins);
        CsvWriter w(out, c.meta(), {"bin_center", "density"});
        for (std::size_t b = 0; b < den_bins; ++b) w.row({format_real(h.centers[b]), format_real(h.density[b])});
      } else {
        std::vector<double> genotype_values(den_genotypes);
        const std::uint64_t stream = domain_seed(den.seed, StreamDomain::Sampling);
        parallel_for(den_genotypes, den.workers, [&](std::size_t i) {
          Rng rng = make_rng(stream, i);
          genotype_values[i] = tononi_complexity(random_genotype(c.params, rng), c.params.gate_set).complexity;
        });
        const auto [lo1, hi1] = std::minmax_element(values.begin(), values.end());
        const auto [lo2, hi2] = std::minmax_element(genotype_values.begin(), genotype_values.end());
        const double lo = std::min(*lo1, *lo2), hi = std::max(*hi1, *hi2);
        const auto hp = histogram(values, den_bins, lo, hi);
        const auto hg = histogram(genotype_values, den_bins, lo, hi);
        auto meta = c.meta();
        meta.extra.emplace_back("genotype_mean", format_real(mean(genotype_values)));
        meta.extra.emplace_back("phenotype_mean", format_real(mean(values)));
        CsvWriter w(out, meta, {"bin_center", "genotype_density", "phenotype_density"});
        for (std::size_t b = 0; b < den_bins; ++b) {
          w.row({format_real(hp.centers[b]), format_real(hg.density[b]), format_real(hp.density[b])});
        }
      }
      emit(den.out, out.str());
    } else if (cmd_dg->parsed()) {
      const auto pheno = records_by_hex(read_pheno_csv(read_csv_file(dg_in), dg_inputs));
      const auto red_table = read_redundancy_csv(read_csv_file(dg_red), dg_inputs);
      std::vector<double> k, f;
      for (const auto& [hex, r] : pheno) {
        if (!r.kolmogorov) continue;
        k.push_back(*r.kolmogorov);
        f.push_back(static_cast<double>(red_table.count(r.phenotype)) / static_cast<double>(red_table.total_samples));
      }
      const auto fit = dingle_fit(k, f);
      std::printf("slope=%s intercept=%s spearman=%s n=%zu\n", format_real(fit.slope).c_str(),
                  format_real(fit.intercept).c_str(), format_real(fit.spearman).c_str(), fit.n_points);
    }
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const PartialResultError& e) {
    std::cerr << "partial result: " << e.what() << '\n';
    return kExitPartial;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return status;
}
