#include "atree/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "atree/analysis.hpp"
#include "atree/catalog.hpp"
#include "atree/dsl.hpp"
#include "atree/error.hpp"
#include "atree/ingest.hpp"
#include "atree/report.hpp"
#include "atree/risk.hpp"
#include "atree/tree.hpp"

namespace atree {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& payload) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot write '" + path + "'");
  out << payload;
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::BadSpec:
    case Errc::UnknownCatalog:
    case Errc::UnknownEvent:
      return 2;
    default:
      return 1;
  }
}

std::vector<double> parse_number_list(const std::string& text, const char* what) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    try {
      std::size_t used = 0;
      double v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      if (v < 0.0) throw Error(Errc::BadSpec, std::string(what) + " values must be >= 0");
      values.push_back(v);
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      throw Error(Errc::BadSpec, "malformed " + std::string(what) + " value '" + item + "'");
    }
  }
  if (values.empty()) throw Error(Errc::BadSpec, std::string(what) + " list is empty");
  return values;
}

std::vector<std::pair<double, double>> parse_settings_list(const std::string& text) {
  std::vector<std::pair<double, double>> settings;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    std::size_t colon = item.find(':');
    if (colon == std::string::npos) {
      throw Error(Errc::BadSpec, "setting '" + item + "' is not of the form d:f");
    }
    std::vector<double> d = parse_number_list(item.substr(0, colon), "duration");
    std::vector<double> f = parse_number_list(item.substr(colon + 1), "frequency");
    if (d.size() != 1 || f.size() != 1) {
      throw Error(Errc::BadSpec, "setting '" + item + "' is not of the form d:f");
    }
    settings.emplace_back(d[0], f[0]);
  }
  if (settings.empty()) throw Error(Errc::BadSpec, "settings list is empty");
  return settings;
}

std::vector<std::string> split_paths(const std::string& text) {
  std::vector<std::string> paths;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (!item.empty()) paths.push_back(item);
  }
  return paths;
}

struct CommonFlags {
  double window_min = 1440.0;
  std::string impact_policy = "hi";
  std::optional<double> dur;
  std::optional<double> freq;
  std::string format = "table";
  std::string out_path;

  EvalSettings settings() const {
    EvalSettings s;
    s.window_min = window_min;
    if (impact_policy == "hi") s.impact_policy = ImpactPolicy::Hi;
    else if (impact_policy == "lo") s.impact_policy = ImpactPolicy::Lo;
    else s.impact_policy = ImpactPolicy::Mid;
    s.override_duration_min = dur;
    s.override_frequency_per_day = freq;
    return s;
  }

  ReportFormat report_format() const {
    return format == "csv" ? ReportFormat::Csv : ReportFormat::Table;
  }
};

// Adds the shared evaluation/report flags to a subcommand.
void add_settings_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--window", flags.window_min, "observation window in minutes")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--impact-policy", flags.impact_policy,
                  "how impact ranges collapse to a scalar")
      ->check(CLI::IsMember({"hi", "lo", "mid"}))
      ->capture_default_str();
  auto* dur = cmd->add_option("--dur", [&flags](const CLI::results_t& res) {
        flags.dur = std::stod(res[0]);
        return true;
      }, "uniform duration override, minutes");
  dur->check(CLI::NonNegativeNumber)->type_name("FLOAT");
  auto* freq = cmd->add_option("--freq", [&flags](const CLI::results_t& res) {
        flags.freq = std::stod(res[0]);
        return true;
      }, "uniform frequency override, occurrences/day");
  freq->check(CLI::NonNegativeNumber)->type_name("FLOAT");
}

void add_report_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--format", flags.format, "report format")
      ->check(CLI::IsMember({"table", "csv"}))
      ->capture_default_str();
  cmd->add_option("--out", flags.out_path, "also write the output to a file");
}

// Emits the payload to stdout, optionally to --out, and footnotes to the
// right stream (table: inline; csv: stderr, keeping stdout valid CSV).
void emit(const Report& report, const CommonFlags& flags, std::ostream& out,
          std::ostream& err) {
  std::string payload = render(report, flags.report_format());
  out << payload;
  if (flags.report_format() == ReportFormat::Csv) {
    for (const std::string& note : report.footnotes) err << "note: " << note << "\n";
  }
  if (!flags.out_path.empty()) write_file(flags.out_path, payload);
}

void emit_text(const std::string& payload, const CommonFlags& flags, std::ostream& out) {
  out << payload;
  if (!flags.out_path.empty()) write_file(flags.out_path, payload);
}

int cmd_validate(const std::string& file, const CommonFlags& flags, std::ostream& out,
                 std::ostream& err) {
  std::vector<Violation> violations;
  parse_tree(read_file(file), violations);
  Report report;
  report.header = {"path", "rule", "message"};
  for (const Violation& v : violations) {
    report.rows.push_back({v.path_id, std::string(to_string(v.rule)), v.message});
  }
  if (violations.empty()) {
    report.footnotes.push_back("no violations");
    emit(report, flags, out, err);
    return 0;
  }
  emit(report, flags, out, err);
  err << "validation failed: " << violations.size() << " violation"
      << (violations.size() == 1 ? "" : "s") << "\n";
  return 1;
}

int cmd_eval(const std::string& file, const CommonFlags& flags, std::ostream& out,
             std::ostream& err) {
  AttackTree tree = parse_tree(read_file(file));
  Evaluation eval = evaluate(tree, flags.settings());
  Report report;
  report.header = {"path", "component", "probability", "impact", "risk"};
  for (const Node* node : preorder(tree)) {
    const NodeScore& score = eval.nodes.at(node->path_id);
    std::string component =
        node->is_gate() ? node->gate().component : node->leaf().component;
    report.rows.push_back({node->path_id, component, format_number(score.probability),
                           format_number(score.impact), format_number(score.risk)});
  }
  report.footnotes.push_back("root risk: " + format_number(eval.root_risk));
  for (const auto& [tag, risk] : eval.component_scores) {
    report.footnotes.push_back("component " + tag + ": " + format_number(risk));
  }
  emit(report, flags, out, err);
  return 0;
}

int cmd_rank(const std::string& file, const CommonFlags& flags, std::ostream& out,
             std::ostream& err) {
  AttackTree tree = parse_tree(read_file(file));
  Report report;
  report.header = {"path", "probability", "impact", "risk", "marginal"};
  for (const RankEntry& entry : rank_threats(tree, flags.settings())) {
    report.rows.push_back({entry.path_id, format_number(entry.probability),
                           format_number(entry.impact), format_number(entry.risk),
                           format_number(entry.marginal)});
  }
  emit(report, flags, out, err);
  return 0;
}

int cmd_sweep(const std::string& file, const std::string& durations,
              const std::string& freqs, const CommonFlags& flags, std::ostream& out,
              std::ostream& err) {
  AttackTree tree = parse_tree(read_file(file));
  SweepSpec spec;
  spec.durations_min = parse_number_list(durations, "duration");
  spec.frequencies_per_day = parse_number_list(freqs, "frequency");
  spec.settings = flags.settings();
  SweepResult result = sweep(tree, spec);
  Report report;
  report.header = {"duration_min", "freq_per_day", "root_risk"};
  for (const SweepCell& cell : result.cells) {
    report.rows.push_back({format_number(cell.duration_min),
                           format_number(cell.frequency_per_day),
                           format_number(cell.root_risk)});
  }
  emit(report, flags, out, err);
  return 0;
}

int cmd_compare(const std::string& file, const std::string& settings_text,
                const std::vector<std::string>& prune_args, const CommonFlags& flags,
                std::ostream& out, std::ostream& err) {
  AttackTree tree = parse_tree(read_file(file));
  std::vector<VariantSpec> variants;
  variants.push_back({"complete", {}});
  for (std::size_t i = 0; i < prune_args.size(); ++i) {
    variants.push_back({"adhoc" + std::to_string(i + 1), split_paths(prune_args[i])});
  }
  VariantComparison comparison = compare_variants(
      tree, variants, parse_settings_list(settings_text), flags.settings());
  Report report;
  report.header = {"setting", "variant", "root_risk"};
  for (const VariantCell& cell : comparison.cells) {
    report.rows.push_back({format_number(cell.duration_min) + ":" +
                               format_number(cell.frequency_per_day),
                           cell.variant, format_number(cell.root_risk)});
  }
  for (const std::string& label : comparison.and_prune_warnings) {
    report.footnotes.push_back("variant " + label +
                               " prunes a child of an AND gate; dominance not guaranteed");
  }
  emit(report, flags, out, err);
  return 0;
}

int cmd_simulate(const std::string& file, long long trials, std::uint64_t seed, double z,
                 const CommonFlags& flags, std::ostream& out, std::ostream& err) {
  AttackTree tree = parse_tree(read_file(file));
  OracleReport oracle = oracle_check(tree, flags.settings(), trials, seed, z);
  Report report;
  report.header = {"trials", "seed", "analytic", "estimate", "stderr", "z", "delta", "pass"};
  report.rows.push_back({std::to_string(oracle.sim.trials), std::to_string(oracle.sim.seed),
                         format_number(oracle.analytic), format_number(oracle.sim.estimate),
                         format_number(oracle.sim.stderr_value), format_number(oracle.z),
                         format_number(oracle.delta), oracle.pass ? "yes" : "no"});
  report.footnotes.push_back("generator: " + oracle.sim.generator);
  emit(report, flags, out, err);
  if (!oracle.pass) {
    err << "oracle check failed: |analytic - estimate| = " << format_number(oracle.delta)
        << " > " << format_number(oracle.z * oracle.sim.stderr_value) << "\n";
    return 3;
  }
  return 0;
}

int cmd_ingest(const std::string& tree_file, const std::string& csv_file, bool emit_tree,
               const CommonFlags& flags, std::ostream& out, std::ostream& err) {
  AttackTree tree = parse_tree(read_file(tree_file));
  IngestResult ingest = ingest_measurements(parse_measurements_csv(read_file(csv_file)));
  AttackTree updated = apply_overrides(tree, ingest.overrides);

  if (emit_tree) {
    for (const std::string& warning : ingest.warnings) err << "note: " << warning << "\n";
    emit_text(serialize_tree(updated), flags, out);
    return 0;
  }
  Report report;
  report.header = {"leaf", "duration_min", "freq_per_day"};
  for (const ParameterOverride& override_ : ingest.overrides) {
    report.rows.push_back(
        {override_.leaf,
         override_.duration_min ? format_number(*override_.duration_min) : std::string(),
         format_number(override_.frequency_per_day)});
  }
  report.footnotes = ingest.warnings;
  emit(report, flags, out, err);
  return 0;
}

int cmd_catalog(const std::string& name, const CommonFlags& flags, std::ostream& out) {
  emit_text(std::string(builtin_tree_text(name)), flags, out);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Attack-tree risk assessment toolkit for SPS threat models", "atree"};
  app.require_subcommand(1);

  std::string file;
  std::string csv_file;
  std::string durations;
  std::string freqs;
  std::string settings_text;
  std::vector<std::string> prune_args;
  std::string catalog_name;
  long long trials = 100000;
  std::uint64_t seed = 42;
  double z = 3.0;
  bool emit_tree = false;
  CommonFlags flags;

  auto* validate = app.add_subcommand("validate", "Check a tree document against the format invariants");
  validate->add_option("file", file, "tree document (.atree)")->required();
  add_report_flags(validate, flags);

  auto* eval = app.add_subcommand("eval", "Evaluate probabilities, impacts and risk scores");
  eval->add_option("file", file, "tree document (.atree)")->required();
  add_settings_flags(eval, flags);
  add_report_flags(eval, flags);

  auto* rank = app.add_subcommand("rank", "Rank leaf threats by risk");
  rank->add_option("file", file, "tree document (.atree)")->required();
  add_settings_flags(rank, flags);
  add_report_flags(rank, flags);

  auto* sweep_cmd = app.add_subcommand("sweep", "Root risk over a duration x frequency grid");
  sweep_cmd->add_option("file", file, "tree document (.atree)")->required();
  sweep_cmd->add_option("--durations", durations, "comma-separated durations, minutes")->required();
  sweep_cmd->add_option("--freqs", freqs, "comma-separated frequencies, per day")->required();
  add_settings_flags(sweep_cmd, flags);
  add_report_flags(sweep_cmd, flags);

  auto* compare = app.add_subcommand("compare", "Complete tree vs pruned adhoc variants");
  compare->add_option("file", file, "tree document (.atree)")->required();
  compare->add_option("--settings", settings_text, "comma-separated d:f pairs")->required();
  compare->add_option("--prune", prune_args,
                      "comma-separated paths to prune; repeat for more variants")
      ->take_all();
  add_settings_flags(compare, flags);
  add_report_flags(compare, flags);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo check of the analytic root probability");
  simulate->add_option("file", file, "tree document (.atree)")->required();
  simulate->add_option("--trials", trials, "simulation trials")->check(CLI::PositiveNumber)->capture_default_str();
  simulate->add_option("--seed", seed, "RNG seed")->capture_default_str();
  simulate->add_option("--z", z, "acceptance band in standard errors")->check(CLI::PositiveNumber)->capture_default_str();
  add_settings_flags(simulate, flags);
  add_report_flags(simulate, flags);

  auto* ingest = app.add_subcommand("ingest", "Turn measurement CSV rows into leaf parameter overrides");
  ingest->add_option("file", file, "tree document (.atree)")->required();
  ingest->add_option("csv", csv_file, "measurement CSV")->required();
  ingest->add_flag("--emit-tree", emit_tree, "print the updated tree document instead of the override report");
  add_report_flags(ingest, flags);

  auto* catalog = app.add_subcommand("catalog", "Extract a bundled tree document");
  catalog->add_option("name", catalog_name, "one of: sample-dos, security, privacy, safety")->required();
  add_report_flags(catalog, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (validate->parsed()) return cmd_validate(file, flags, out, err);
    if (eval->parsed()) return cmd_eval(file, flags, out, err);
    if (rank->parsed()) return cmd_rank(file, flags, out, err);
    if (sweep_cmd->parsed()) return cmd_sweep(file, durations, freqs, flags, out, err);
    if (compare->parsed()) return cmd_compare(file, settings_text, prune_args, flags, out, err);
    if (simulate->parsed()) return cmd_simulate(file, trials, seed, z, flags, out, err);
    if (ingest->parsed()) return cmd_ingest(file, csv_file, emit_tree, flags, out, err);
    if (catalog->parsed()) return cmd_catalog(catalog_name, flags, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace atree
