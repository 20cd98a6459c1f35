#include "cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "cli/output.hpp"
#include "rulebasis/basis.hpp"
#include "rulebasis/error.hpp"
#include "rulebasis/miner.hpp"
#include "rulebasis/oracle.hpp"
#include "rulebasis/relevance.hpp"
#include "rulebasis/synth.hpp"

namespace rulebasis::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SynthOptions {
  std::string study = "density";
  std::size_t rows = 20;
  std::size_t cols = 32;
  std::vector<double> densities{0.3, 0.5};
  std::size_t tables = 100;
  double density = 0.3;
  std::vector<double> noise_levels{0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  std::size_t trials = 20;
  std::vector<std::string> antecedent{"1", "2"};
  std::string target = "32";
  std::size_t coverage = 10;
  std::optional<std::size_t> flip_count;
  double flip_prob = 0.0;
  bool symmetric = false;
  std::string recovery_plan = "flipped";
};

std::string format_name(InputFormat f) { return f == InputFormat::fimi ? "fimi" : "csv"; }
std::string format_name(OutputFormat f) { return f == OutputFormat::json ? "json" : "csv"; }

bool sniff_header(const std::string& first_line) {
  std::stringstream ss(first_line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
    while (!field.empty() && field.front() == ' ') field.erase(field.begin());
    if (field != "0" && field != "1") return true;
  }
  return false;
}

BinaryTable load_table(const Config& cfg) {
  if (cfg.input.empty()) throw UsageError("--input is required");
  std::ifstream in(cfg.input);
  if (!in) throw UsageError("cannot open input file '" + cfg.input + "'");
  if (cfg.format == InputFormat::fimi) return load_fimi(in, cfg.max_rows);
  bool header = cfg.csv_header == "yes";
  if (cfg.csv_header == "auto") {
    std::string first;
    while (std::getline(in, first) && first.find_first_not_of(" \t\r") == std::string::npos) {
    }
    header = sniff_header(first);
    in.clear();
    in.seekg(0);
  }
  return load_csv(in, header);
}

ColumnIndex resolve_column(const BinaryTable& t, const std::string& label) {
  if (label.empty()) throw UsageError("--target is required");
  auto c = t.find_column(label);
  if (!c) throw UsageError("target '" + label + "' is not a column of the table");
  return *c;
}

std::uint64_t require_seed(const Config& cfg) {
  if (!cfg.seed) throw UsageError("--seed is required for this command");
  return *cfg.seed;
}

ordered_json config_json(const Config& cfg, const std::string& command) {
  ordered_json j;
  j["command"] = command;
  j["input"] = cfg.input;
  j["format"] = format_name(cfg.format);
  if (cfg.format == InputFormat::csv) j["csv_header"] = cfg.csv_header;
  j["max_rows"] = cfg.max_rows ? ordered_json(*cfg.max_rows) : ordered_json(nullptr);
  j["target"] = cfg.target;
  j["min_support"] = cfg.min_support;
  j["delete_count"] = cfg.delete_count;
  j["runs"] = cfg.runs;
  j["blockers"] = cfg.blockers.empty() ? ordered_json(nullptr) : ordered_json(cfg.blockers);
  j["seed"] = cfg.seed ? ordered_json(*cfg.seed) : ordered_json(nullptr);
  j["max_transversals"] = cfg.max_transversals;
  j["out_format"] = format_name(cfg.out_format);
  return j;
}

class Emitter {
 public:
  Emitter(const Config& cfg, std::ostream& fallback) : cfg_(cfg), fallback_(fallback) {
    if (!cfg.out.empty()) {
      file_.open(cfg.out);
      if (!file_) throw UsageError("cannot open output file '" + cfg.out + "'");
    }
  }
  std::ostream& stream() { return cfg_.out.empty() ? fallback_ : file_; }

 private:
  const Config& cfg_;
  std::ostream& fallback_;
  std::ofstream file_;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void finish_json(ordered_json& doc, const Config& cfg, Clock::time_point start, std::ostream& os) {
  if (cfg.timings) doc["timing"] = ordered_json{{"wall_seconds", seconds_since(start)}};
  os << doc.dump(2) << '\n';
}

ProgressHook progress_hook(const Config& cfg, std::ostream& err) {
  if (!cfg.progress) return {};
  return [&err](std::size_t done, std::size_t total) { err << "progress " << done << '/' << total << '\n'; };
}

int cmd_mine(const Config& cfg, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const auto t = load_table(cfg);
  const SectorRequest req{resolve_column(t, cfg.target), cfg.min_support, false, cfg.max_transversals};
  const auto sector = mine_sector(t, req);
  Emitter emit(cfg, out);
  const auto config = config_json(cfg, "mine");
  if (cfg.out_format == OutputFormat::csv) {
    write_csv_preamble(emit.stream(), config);
    write_rules_csv(emit.stream(), "base", sector, t, true);
  } else {
    ordered_json doc;
    doc["config"] = config;
    doc["table"] = table_json(t);
    doc["sector"] = ruleset_json(sector, t);
    finish_json(doc, cfg, start, emit.stream());
  }
  err << "mine: " << sector.size() << " rules in " << seconds_since(start) << " s\n";
  return kExitOk;
}

int cmd_ord(const Config& cfg, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  require_seed(cfg);
  const auto t = load_table(cfg);
  const SectorRequest req{resolve_column(t, cfg.target), cfg.min_support, false, cfg.max_transversals};
  const auto base = mine_sector(t, req);
  const auto reports = ord_scan(t, req, base, cfg.workers, progress_hook(cfg, err));
  const auto scores = blocker_scores(reports);
  std::optional<std::vector<RowId>> selected;
  if (!cfg.blockers.empty()) selected = select_blockers(scores, parse_blocker_policy(cfg.blockers));

  Emitter emit(cfg, out);
  const auto config = config_json(cfg, "ord");
  if (cfg.out_format == OutputFormat::csv) {
    write_csv_preamble(emit.stream(), config);
    write_scores_csv(emit.stream(), scores);
  } else {
    ordered_json doc;
    doc["config"] = config;
    doc["table"] = table_json(t);
    doc["base"] = ruleset_json(base, t);
    auto reps = ordered_json::array();
    for (const auto& r : reports) reps.push_back(report_json(r, t));
    doc["reports"] = std::move(reps);
    doc["blocker_scores"] = scores_json(scores);
    doc["selected_blockers"] = selected ? ordered_json(*selected) : ordered_json(nullptr);
    finish_json(doc, cfg, start, emit.stream());
  }
  err << "ord: " << reports.size() << " rows scanned in " << seconds_since(start) << " s\n";
  return kExitOk;
}

int cmd_mrd(const Config& cfg, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const auto seed = require_seed(cfg);
  const auto t = load_table(cfg);
  const SectorRequest req{resolve_column(t, cfg.target), cfg.min_support, false, cfg.max_transversals};
  MiningConfig mining;
  mining.min_support = cfg.min_support;
  mining.workers = cfg.workers;
  mining.max_transversals = cfg.max_transversals;
  if (!cfg.blockers.empty()) mining.blockers = parse_blocker_policy(cfg.blockers);
  const auto blockers = plan_blockers(t, req, mining);
  const RunPlan plan{blockers, cfg.delete_count, cfg.runs, seed};
  const auto result = mrd_run(t, req, plan, cfg.workers, progress_hook(cfg, err));

  Emitter emit(cfg, out);
  const auto config = config_json(cfg, "mrd");
  if (cfg.out_format == OutputFormat::csv) {
    write_csv_preamble(emit.stream(), config);
    write_rules_csv(emit.stream(), "base", result.base, t, true);
    write_rules_csv(emit.stream(), "new", result.aggregated_new, t, false);
  } else {
    ordered_json doc;
    doc["config"] = config;
    doc["table"] = table_json(t);
    doc["blockers"] = blockers;
    auto runs = ordered_json::array();
    for (const auto& r : result.runs)
      runs.push_back(ordered_json{{"deleted_rows", r.deleted_rows}, {"new_rules", r.new_rules.size()}});
    doc["runs"] = std::move(runs);
    doc["base"] = ruleset_json(result.base, t);
    doc["aggregated_new"] = ruleset_json(result.aggregated_new, t, cfg.delete_count);
    doc["bounds"] = ordered_json{{"estimate_confidence", estimate_confidence(t.n_rows(), cfg.delete_count)},
                                 {"delete_count", cfg.delete_count}};
    finish_json(doc, cfg, start, emit.stream());
  }
  err << "mrd: " << result.aggregated_new.size() << " new rules from " << result.runs.size() << " runs in "
      << seconds_since(start) << " s\n";
  return kExitOk;
}

int cmd_rank(const Config& cfg, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const auto seed = require_seed(cfg);
  const auto t = load_table(cfg);
  const ColumnIndex b = resolve_column(t, cfg.target);
  MiningConfig mining;
  mining.min_support = cfg.min_support;
  mining.delete_count = cfg.delete_count;
  mining.runs = cfg.runs;
  mining.seed = seed;
  mining.workers = cfg.workers;
  mining.max_transversals = cfg.max_transversals;
  if (!cfg.blockers.empty()) mining.blockers = parse_blocker_policy(cfg.blockers);
  const auto report = rank_attributes(t, b, mining);

  Emitter emit(cfg, out);
  const auto config = config_json(cfg, "rank");
  if (cfg.out_format == OutputFormat::csv) {
    write_csv_preamble(emit.stream(), config);
    write_relevance_csv(emit.stream(), report, t);
  } else {
    ordered_json doc;
    doc["config"] = config;
    doc["table"] = table_json(t);
    doc["target"] = t.col_labels()[b];
    doc["ranking"] = relevance_json(report, t);
    doc["delta_b"] = ruleset_json(report.delta_b.sector, t);
    doc["delta_neg"] = ruleset_json(report.delta_neg.sector, t);
    finish_json(doc, cfg, start, emit.stream());
  }
  err << "rank: " << report.ranking.size() << " attributes ranked in " << seconds_since(start) << " s\n";
  return kExitOk;
}

MiningConfig synth_mining(const Config& cfg) {
  MiningConfig m;
  m.min_support = cfg.min_support;
  m.delete_count = cfg.delete_count;
  m.runs = cfg.runs;
  m.seed = require_seed(cfg);
  m.workers = 1;
  m.max_transversals = cfg.max_transversals;
  if (!cfg.blockers.empty()) m.blockers = parse_blocker_policy(cfg.blockers);
  return m;
}

InjectedRule synth_rule(const SynthOptions& so) {
  auto column_of = [&](const std::string& label) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(label, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != label.size() || v < 1 || v > so.cols)
      throw UsageError("synthetic column '" + label + "' must be a number in 1.." + std::to_string(so.cols));
    return static_cast<ColumnIndex>(v - 1);
  };
  std::vector<ColumnIndex> x;
  for (const auto& l : so.antecedent) x.push_back(column_of(l));
  return InjectedRule{AttrSet(std::move(x)), column_of(so.target), so.coverage};
}

int cmd_synth(const Config& cfg, const SynthOptions& so, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  const auto seed = require_seed(cfg);
  auto config = config_json(cfg, "synth");
  config.erase("input");
  config.erase("format");
  config.erase("csv_header");
  config.erase("max_rows");
  config.erase("target");
  config["study"] = so.study;
  config["rows"] = so.rows;
  config["cols"] = so.cols;

  Emitter emit(cfg, out);
  auto& os = emit.stream();
  if (so.study == "density") {
    DensityStudyConfig dc;
    dc.rows = so.rows;
    dc.cols = so.cols;
    dc.densities = so.densities;
    dc.tables_per_density = so.tables;
    dc.seed = seed;
    dc.mining = synth_mining(cfg);
    dc.workers = cfg.workers;
    config["densities"] = so.densities;
    config["tables"] = so.tables;
    const auto rows = density_study(dc);
    if (cfg.out_format == OutputFormat::csv) {
      write_csv_preamble(os, config);
      write_density_csv(os, rows);
    } else {
      ordered_json doc{{"config", config}};
      auto arr = ordered_json::array();
      for (const auto& r : rows)
        arr.push_back(ordered_json{{"density", r.density}, {"tables", r.tables}, {"rel", summary_json(r.rel)}});
      doc["summary"] = std::move(arr);
      finish_json(doc, cfg, start, os);
    }
  } else if (so.study == "noise") {
    NoiseStudyConfig nc;
    nc.rows = so.rows;
    nc.cols = so.cols;
    nc.density = so.density;
    nc.rule = synth_rule(so);
    nc.noise_levels = so.noise_levels;
    nc.trials = so.trials;
    nc.seed = seed;
    nc.mining = synth_mining(cfg);
    nc.workers = cfg.workers;
    config["density"] = so.density;
    config["antecedent"] = so.antecedent;
    config["rule_target"] = so.target;
    config["coverage"] = so.coverage;
    config["noise_levels"] = so.noise_levels;
    config["trials"] = so.trials;
    const auto rows = noise_study(nc);
    if (cfg.out_format == OutputFormat::csv) {
      write_csv_preamble(os, config);
      write_noise_csv(os, rows);
    } else {
      ordered_json doc{{"config", config}};
      auto arr = ordered_json::array();
      for (const auto& r : rows)
        arr.push_back(ordered_json{{"noise", r.noise},
                                   {"trials", r.trials},
                                   {"recovery_rate", r.recovery_rate},
                                   {"mean_rel_injected", r.mean_rel_injected},
                                   {"mean_rel_other", r.mean_rel_other}});
      doc["summary"] = std::move(arr);
      finish_json(doc, cfg, start, os);
    }
  } else if (so.study == "recovery" || so.study == "table") {
    SynthSpec spec{so.rows, so.cols, so.density, seed, synth_rule(so), std::nullopt};
    if (so.flip_count)
      spec.noise = NoiseSpec{FlipCount{*so.flip_count}, false};
    else
      spec.noise = NoiseSpec{FlipProbability{so.flip_prob}, so.symmetric};
    config["density"] = so.density;
    config["antecedent"] = so.antecedent;
    config["rule_target"] = so.target;
    config["coverage"] = so.coverage;
    config["flip_count"] = so.flip_count ? ordered_json(*so.flip_count) : ordered_json(nullptr);
    config["flip_prob"] = so.flip_prob;
    if (so.study == "table") {
      const auto synth = synthesize(spec);
      write_csv(synth.table, os);
    } else {
      RecoveryOptions ro;
      ro.min_support = cfg.min_support;
      ro.workers = cfg.workers;
      if (so.recovery_plan == "mrd") {
        std::vector<RowId> all(so.rows);
        for (std::size_t i = 0; i < so.rows; ++i) all[i] = static_cast<RowId>(i + 1);
        ro.plan = RunPlan{all, cfg.delete_count, cfg.runs, seed};
      } else if (so.recovery_plan != "flipped") {
        throw UsageError("--recovery-plan must be 'flipped' or 'mrd'");
      }
      config["recovery_plan"] = so.recovery_plan;
      const auto synth = synthesize(spec);
      const auto rep = recovery_experiment(spec, ro);
      ordered_json doc{{"config", config}};
      doc["flipped"] = rep.flipped;
      doc["blocked_on_full_table"] = rep.blocked_on_full_table;
      doc["recovered"] = rep.recovered;
      doc["recovered_rule"] = rep.recovered_rule ? rule_json(*rep.recovered_rule, synth.table) : ordered_json(nullptr);
      doc["subtable_confidence"] = rep.subtable_confidence;
      doc["variants_before_aggregation"] = rep.variants_before;
      doc["variants_after_aggregation"] = rep.variants_after;
      doc["aggregated_sector"] = ruleset_json(rep.aggregated_sector, synth.table);
      finish_json(doc, cfg, start, os);
    }
  } else {
    throw UsageError("--study must be one of density, noise, recovery, table");
  }
  err << "synth: " << so.study << " study finished in " << seconds_since(start) << " s\n";
  return kExitOk;
}

int cmd_oracle(const Config& cfg, std::ostream& out, std::ostream&) {
  const auto t = load_table(cfg);
  const auto b = resolve_column(t, cfg.target);
  const auto rules = oracle::enumerate_antecedents(t, b, cfg.min_support);
  Emitter emit(cfg, out);
  ordered_json doc;
  doc["config"] = config_json(cfg, "oracle");
  doc["sector"] = ruleset_json(rules, t);
  emit.stream() << doc.dump(2) << '\n';
  return kExitOk;
}

void add_input_options(CLI::App& sub, Config& cfg) {
  sub.add_option("--input", cfg.input, "Input table path")->required();
  sub.add_option("--format", cfg.format, "Input format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, InputFormat>{{"fimi", InputFormat::fimi}, {"csv", InputFormat::csv}}));
  sub.add_option("--csv-header", cfg.csv_header, "CSV header row: auto, yes or no")
      ->check(CLI::IsMember({"auto", "yes", "no"}));
  sub.add_option("--max-rows", cfg.max_rows, "Read at most this many FIMI transactions");
  sub.add_option("--target", cfg.target, "Consequent column label")->required();
}

void add_mining_options(CLI::App& sub, Config& cfg) {
  sub.add_option("--min-support", cfg.min_support, "Minimum rule support sup(X ∪ {b})")->check(CLI::PositiveNumber);
  sub.add_option("--delete-count", cfg.delete_count, "Rows deleted per run");
  sub.add_option("--runs", cfg.runs, "Number of deletion sets");
  sub.add_option("--blockers", cfg.blockers, "Blocker selection: topk:K or minscore:T");
  sub.add_option("--seed", cfg.seed, "Random seed");
  sub.add_option("--max-transversals", cfg.max_transversals, "Cap on transversals per sector (0 = unlimited)");
}

void add_common_options(CLI::App& sub, Config& cfg) {
  sub.add_option("--workers", cfg.workers, "Worker threads")->envname("RULEBASIS_WORKERS")->check(CLI::PositiveNumber);
  sub.add_option("--out", cfg.out, "Output path (stdout when omitted)");
  sub.add_option("--out-format", cfg.out_format, "Output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, OutputFormat>{{"json", OutputFormat::json}, {"csv", OutputFormat::csv}}));
  sub.add_flag("--timings", cfg.timings, "Include wall time in the output document");
  sub.add_flag("--progress", cfg.progress, "Report completed runs on stderr");
}

}  // namespace

BlockerPolicy parse_blocker_policy(const std::string& text) {
  const auto colon = text.find(':');
  const auto kind = text.substr(0, colon);
  std::size_t value = 0;
  bool ok = colon != std::string::npos && colon + 1 < text.size();
  if (ok) {
    const auto digits = text.substr(colon + 1);
    ok = std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; });
    if (ok) value = std::stoull(digits);
  }
  if (ok && kind == "topk") return TopK{value};
  if (ok && kind == "minscore") return MinScore{value};
  throw InvalidArgument("blocker policy must be topk:K or minscore:T, got '" + text + "'");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Association rules of high confidence by row deletion", "rulebasis"};
  app.require_subcommand(1);
  Config cfg;
  SynthOptions so;

  auto* mine = app.add_subcommand("mine", "Mine the implication sector of a target column");
  auto* ord = app.add_subcommand("ord", "One-row deletion scan and blocker scores");
  auto* mrd = app.add_subcommand("mrd", "Multiple-row deletion batch");
  auto* rank = app.add_subcommand("rank", "Rank attributes by relevance to a target");
  auto* synth = app.add_subcommand("synth", "Synthetic table studies");
  auto* orc = app.add_subcommand("oracle", "Brute-force sector enumeration (debugging)");
  orc->group("");

  for (auto* sub : {mine, ord, mrd, rank, orc}) add_input_options(*sub, cfg);
  for (auto* sub : {mine, ord, mrd, rank, synth, orc}) {
    add_mining_options(*sub, cfg);
    add_common_options(*sub, cfg);
  }
  synth->add_option("--study", so.study, "density, noise, recovery or table")
      ->check(CLI::IsMember({"density", "noise", "recovery", "table"}));
  synth->add_option("--rows", so.rows, "Rows per table");
  synth->add_option("--cols", so.cols, "Columns per table");
  synth->add_option("--densities", so.densities, "Densities for the density study")->delimiter(',');
  synth->add_option("--tables", so.tables, "Tables per density");
  synth->add_option("--density", so.density, "Density for noise/recovery/table studies");
  synth->add_option("--noise-levels", so.noise_levels, "Flip probabilities for the noise study")->delimiter(',');
  synth->add_option("--trials", so.trials, "Trials per noise level");
  synth->add_option("--antecedent", so.antecedent, "Injected antecedent columns (1-based)")->delimiter(',');
  synth->add_option("--rule-target", so.target, "Injected consequent column (1-based)");
  synth->add_option("--coverage", so.coverage, "Rows forced to satisfy the injected rule");
  synth->add_option("--flip-count", so.flip_count, "Flip exactly this many antecedent rows");
  synth->add_option("--flip-prob", so.flip_prob, "Flip probability when --flip-count is absent");
  synth->add_flag("--symmetric", so.symmetric, "Also flip 0 -> 1 outside the antecedent rows");
  synth->add_option("--recovery-plan", so.recovery_plan, "flipped (delete exactly the flipped rows) or mrd");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (mine->parsed()) return cmd_mine(cfg, out, err);
    if (ord->parsed()) return cmd_ord(cfg, out, err);
    if (mrd->parsed()) return cmd_mrd(cfg, out, err);
    if (rank->parsed()) return cmd_rank(cfg, out, err);
    if (synth->parsed()) return cmd_synth(cfg, so, out, err);
    if (orc->parsed()) return cmd_oracle(cfg, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace rulebasis::cli
