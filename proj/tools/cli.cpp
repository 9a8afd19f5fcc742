#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "beliefnet/beliefnet.hpp"
#include "beliefnet/parallel.hpp"

namespace beliefnet::cli {
namespace {

const char* yes_no(bool value) { return value ? "yes" : "no"; }

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Inputs {
  Network network;
  FunctionFamily family;
};

Network load_network_from(const std::string& path, std::ostream& err) {
  auto parsed = load_network(path);
  for (const auto& warning : parsed.warnings) err << "warning: " << warning << '\n';
  return std::move(parsed.network);
}

FunctionFamily family_for(const ExperimentConfig& config, const Network& network) {
  if (!config.functions_file.empty()) return load_family(config.functions_file, network);
  return FunctionFamily::uniform(network, config.function);
}

Inputs load_inputs(const ExperimentConfig& config, std::ostream& err) {
  if (config.network.empty()) throw UsageError("--network is required");
  Inputs in;
  in.network = load_network_from(config.network, err);
  in.family = family_for(config, in.network);
  return in;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + path + "'");
  file << content;
}

// Monotonic families converge almost surely once every group is possible.
bool convergence_expected(const FunctionFamily& family, std::span<const double> probabilities) {
  if (!every_group_possible(probabilities)) return false;
  return std::all_of(family.functions().begin(), family.functions().end(), [](const auto& f) {
    return f.kind() == EvolutionFunction::Kind::majority ||
           f.kind() == EvolutionFunction::Kind::stubborn;
  });
}

// Mode-specific inputs resolved against one network.
struct RunPlan {
  std::string mode;
  Schedule schedule;
  std::vector<double> probabilities;
  std::size_t max_steps = 0;
};

void resolve_defaults(ExperimentConfig& config) {
  if (config.mode == "random" && config.probs_file.empty() && !config.prob) config.prob = 0.5;
}

RunPlan plan_for(const ExperimentConfig& config, const Inputs& in, std::ostream& err) {
  RunPlan plan;
  plan.mode = config.mode;
  plan.max_steps = config.max_steps.value_or(default_max_steps(in.network.size()));
  if (plan.mode == "sync") {
    if (plan.max_steps < 1) throw UsageError("--max-steps must be at least 1");
  } else if (plan.mode == "scheduled") {
    if (config.schedule.empty()) throw UsageError("--mode scheduled needs --schedule");
    plan.schedule = load_schedule(config.schedule, in.network);
  } else if (plan.mode == "random") {
    if (!config.probs_file.empty()) {
      plan.probabilities = load_probabilities(config.probs_file, in.network);
    } else {
      const double p = config.prob.value_or(0.5);
      if (!(p >= 0.0 && p <= 1.0)) throw UsageError("--prob must lie in [0,1]");
      plan.probabilities.assign(in.network.size(), p);
    }
    if (!every_group_possible(plan.probabilities)) {
      err << "warning: some activation probability is 0 or 1; not every group can be drawn, "
             "so convergence is not guaranteed\n";
    }
  } else {
    throw UsageError("--mode must be sync, scheduled or random");
  }
  return plan;
}

Trace run_plan(const RunPlan& plan, const Inputs& in, const BeliefProfile& initial,
               std::uint64_t seed) {
  if (plan.mode == "sync") return run_synchronous(in.network, in.family, initial, plan.max_steps);
  if (plan.mode == "scheduled") return run_scheduled(in.network, in.family, initial, plan.schedule);
  return run_random(in.network, in.family, initial, RandomActivation{plan.probabilities, seed},
                    plan.max_steps);
}

bool failed_expected_convergence(const RunPlan& plan, const Inputs& in, const Trace& trace) {
  return plan.mode == "random" && convergence_expected(in.family, plan.probabilities) &&
         !trace.converged();
}

void print_config(std::ostream& out, const ExperimentConfig& config) {
  out << "config: " << to_json(config) << '\n';
}

int cmd_simulate(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  if (config.initial.empty()) throw UsageError("--initial is required");
  const Inputs in = load_inputs(config, err);
  const auto initial = parse_profile_for(in.network, config.initial);
  const RunPlan plan = plan_for(config, in, err);
  const Trace trace = run_plan(plan, in, initial, config.seed);

  ExperimentConfig resolved = config;
  resolved.max_steps = plan.max_steps;
  print_config(out, resolved);
  out << "outcome: " << describe_outcome(trace.outcome) << '\n';
  out << "steps: " << trace.steps.size() << '\n';
  out << "final: " << trace.final_profile().to_string() << '\n';
  out << "equilibrium: " << yes_no(is_equilibrium(in.network, in.family, trace.final_profile()))
      << '\n';
  out << "consensus: " << yes_no(is_consensus(trace.final_profile())) << '\n';

  if (!config.trace.empty()) {
    TraceHeader header{plan.mode,
                       config.network,
                       in.network,
                       in.family,
                       initial,
                       plan.mode == "random" ? std::optional<std::uint64_t>(config.seed)
                                             : std::nullopt,
                       plan.probabilities,
                       plan.max_steps};
    write_file(config.trace, format_trace(header, trace));
  }
  return failed_expected_convergence(plan, in, trace) ? kExitVerificationFailed : kExitOk;
}

int cmd_verify(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  const Inputs in = load_inputs(config, err);
  const auto axioms = parse_axiom_list(config.axioms);
  const auto reports = check_axioms(in.network, in.family, axioms);
  print_config(out, config);
  out << std::left << std::setw(13) << "axiom" << std::setw(7) << "holds" << "witness\n";
  std::size_t holding = 0;
  for (const auto& report : reports) {
    holding += report.holds ? 1 : 0;
    out << std::left << std::setw(13) << to_string(report.axiom) << std::setw(7)
        << yes_no(report.holds) << render_witness(in.network, in.family, report) << '\n';
  }
  out << "summary: " << holding << '/' << reports.size() << " hold\n";
  return holding == reports.size() ? kExitOk : kExitVerificationFailed;
}

void print_sequence(std::ostream& out, const Network& network, const ConvergingSequence& seq,
                    PhaseOrder order) {
  const char* first = order == PhaseOrder::increasing_first ? "increasing" : "decreasing";
  const char* second = order == PhaseOrder::increasing_first ? "decreasing" : "increasing";
  out << "initial: " << seq.profiles.front().to_string() << '\n';
  for (std::size_t i = 0; i < seq.schedule.groups.size(); ++i) {
    out << "round: " << i + 1 << " phase=" << (i < seq.first_phase_rounds ? first : second)
        << " group={" << seq.schedule.groups[i].to_string(network) << "} profile="
        << seq.profiles[i + 1].to_string() << '\n';
  }
  out << "schedule_length: " << seq.schedule.groups.size() << '\n';
  out << "result: " << seq.result.to_string() << '\n';
  out << "equilibrium: " << yes_no(seq.verified) << '\n';
  out << "consensus: " << yes_no(is_consensus(seq.result)) << '\n';
}

int cmd_construct_sequence(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  if (config.initial.empty()) throw UsageError("--initial is required");
  const Inputs in = load_inputs(config, err);
  const auto initial = parse_profile_for(in.network, config.initial);
  const auto order =
      config.decreasing_first ? PhaseOrder::decreasing_first : PhaseOrder::increasing_first;
  const auto seq = construct_converging_sequence(in.network, in.family, initial, order);
  print_config(out, config);
  print_sequence(out, in.network, seq, order);
  if (!seq.verified) err << "warning: the constructed sequence did not reach an equilibrium\n";
  return seq.verified ? kExitOk : kExitVerificationFailed;
}

int cmd_analyze(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  const Inputs in = load_inputs(config, err);
  print_config(out, config);
  const bool any = config.equilibria || !config.transition_graph.empty() ||
                   !config.condensation.empty() || !config.reachable_from.empty() ||
                   !config.construct_sequence.empty();
  if (config.equilibria || !any) {
    const auto equilibria = enumerate_equilibria(in.network, in.family);
    out << "equilibria: " << equilibria.size() << '\n';
    for (const auto& p : equilibria) {
      out << "equilibrium: " << p.to_string() << " consensus=" << yes_no(is_consensus(p)) << '\n';
    }
  }
  if (!config.transition_graph.empty() || !config.condensation.empty()) {
    const auto graph = build_transition_graph(in.network, in.family);
    if (!config.transition_graph.empty()) {
      write_file(config.transition_graph, transition_graph_dot(in.network, graph));
      out << "transition_graph: " << config.transition_graph << " nodes=" << graph.node_count()
          << " edges=" << graph.edge_count() << '\n';
    }
    if (!config.condensation.empty()) {
      const auto condensation = condense(graph);
      write_file(config.condensation, condensation_dot(graph, condensation));
      const auto summary = summarize_leaves(in.network, in.family);
      out << "condensation: " << config.condensation
          << " components=" << condensation.component_count()
          << " leaves=" << condensation.leaves.size()
          << " leaves_are_equilibria=" << yes_no(summary.leaves_are_equilibria) << '\n';
    }
  }
  if (!config.reachable_from.empty()) {
    const auto start = parse_profile_for(in.network, config.reachable_from);
    const auto reachable = reachable_equilibria(in.network, in.family, start);
    out << "reachable_from: " << start.to_string() << " equilibria=" << reachable.size() << '\n';
    for (const auto& p : reachable) {
      out << "reachable: " << p.to_string() << " consensus=" << yes_no(is_consensus(p)) << '\n';
    }
  }
  if (!config.construct_sequence.empty()) {
    const auto start = parse_profile_for(in.network, config.construct_sequence);
    const auto order =
        config.decreasing_first ? PhaseOrder::decreasing_first : PhaseOrder::increasing_first;
    print_sequence(out, in.network,
                   construct_converging_sequence(in.network, in.family, start, order), order);
  }
  return kExitOk;
}

struct SweepRow {
  std::string label;
  std::string error;
  std::string outcome;
  std::size_t steps = 0;
  std::string final_profile;
  bool converged = false;
  bool consensus = false;
  bool missed_expected = false;
};

int cmd_sweep(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  if (config.mode.empty()) throw UsageError("--mode is required");
  std::vector<std::string> labels;
  std::vector<std::function<SweepRow()>> cells;

  if (config.axis == "seeds" || config.axis == "profiles") {
    auto in = std::make_shared<const Inputs>(load_inputs(config, err));
    auto plan = std::make_shared<const RunPlan>(plan_for(config, *in, err));
    auto run_one = [in, plan](BeliefProfile initial, std::uint64_t seed) {
      SweepRow row;
      const Trace trace = run_plan(*plan, *in, initial, seed);
      row.outcome = describe_outcome(trace.outcome);
      row.steps = trace.steps.size();
      row.final_profile = trace.final_profile().to_string();
      row.converged = trace.converged();
      row.consensus = is_consensus(trace.final_profile());
      row.missed_expected = failed_expected_convergence(*plan, *in, trace);
      return row;
    };
    if (config.axis == "seeds") {
      if (config.initial.empty()) throw UsageError("--initial is required for the seeds axis");
      const auto initial = parse_profile_for(in->network, config.initial);
      for (std::size_t i = 0; i < config.seed_count; ++i) {
        const std::uint64_t seed = config.seed_start + i;
        labels.push_back("seed=" + std::to_string(seed));
        cells.push_back([=] { return run_one(initial, seed); });
      }
    } else {
      const std::size_t n = in->network.size();
      if (n > kDefaultEquilibriumLimit) {
        throw InfeasibleError("profile sweep", n, kDefaultEquilibriumLimit);
      }
      for (std::uint64_t index = 0; index < (std::uint64_t{1} << n); ++index) {
        auto initial = BeliefProfile::from_index(n, index);
        labels.push_back("initial=" + initial.to_string());
        cells.push_back([=, seed = config.seed] { return run_one(initial, seed); });
      }
    }
  } else if (config.axis == "networks") {
    if (config.network_dir.empty()) throw UsageError("--network-dir is required");
    if (config.initial.empty()) throw UsageError("--initial is required for the networks axis");
    std::vector<std::string> paths;
    for (const auto& entry : std::filesystem::directory_iterator(config.network_dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".net") {
        paths.push_back(entry.path().string());
      }
    }
    std::sort(paths.begin(), paths.end());
    for (const auto& path : paths) {
      labels.push_back("network=" + std::filesystem::path(path).filename().string());
      cells.push_back([path, config] {
        ExperimentConfig cell = config;
        cell.network = path;
        std::ostringstream quiet;
        const Inputs in = load_inputs(cell, quiet);
        const RunPlan plan = plan_for(cell, in, quiet);
        const auto initial = parse_profile_for(in.network, cell.initial);
        const Trace trace = run_plan(plan, in, initial, cell.seed);
        SweepRow row;
        row.outcome = describe_outcome(trace.outcome);
        row.steps = trace.steps.size();
        row.final_profile = trace.final_profile().to_string();
        row.converged = trace.converged();
        row.consensus = is_consensus(trace.final_profile());
        row.missed_expected = failed_expected_convergence(plan, in, trace);
        return row;
      });
    }
  } else {
    throw UsageError("--axis must be seeds, profiles or networks");
  }

  std::vector<SweepRow> rows(cells.size());
  const std::size_t workers = config.workers ? config.workers : default_worker_count();
  parallel_for(cells.size(), workers, [&](std::size_t i) {
    try {
      rows[i] = cells[i]();
    } catch (const std::exception& e) {
      rows[i].error = e.what();
    }
    rows[i].label = labels[i];
  });

  ExperimentConfig resolved = config;
  print_config(out, resolved);
  out << "cell\tlabel\toutcome\tsteps\tfinal\tconsensus\n";
  std::size_t converged = 0;
  std::size_t errors = 0;
  bool missed = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (!row.error.empty()) {
      ++errors;
      out << i << '\t' << row.label << "\terror\t-\t-\t-\t" << row.error << '\n';
      continue;
    }
    converged += row.converged ? 1 : 0;
    missed = missed || row.missed_expected;
    out << i << '\t' << row.label << '\t' << row.outcome << '\t' << row.steps << '\t'
        << row.final_profile << '\t' << yes_no(row.consensus) << '\n';
  }
  const std::size_t ran = rows.size() - errors;
  std::ostringstream rate;
  rate << std::fixed << std::setprecision(2)
       << (ran ? 100.0 * static_cast<double>(converged) / static_cast<double>(ran) : 0.0);
  out << "summary: cells=" << rows.size() << " converged=" << converged << '/' << ran
      << " rate=" << rate.str() << "% errors=" << errors << '\n';
  if (errors) return kExitUsage;
  return missed ? kExitVerificationFailed : kExitOk;
}

int cmd_replay(const ExperimentConfig& config, std::ostream& out, std::ostream&) {
  if (config.trace.empty()) throw UsageError("--trace is required");
  const TraceFile file = load_trace(config.trace);
  const auto issues = verify_trace(file.header.network, file.header.family, file.trace);
  print_config(out, config);
  out << "mode: " << file.header.mode << '\n';
  out << "steps: " << file.trace.steps.size() << '\n';
  out << "outcome: " << describe_outcome(file.trace.outcome) << '\n';
  if (file.header.mode == "sync") {
    const auto rerun = run_synchronous(file.header.network, file.header.family,
                                       file.header.initial, file.header.max_steps);
    out << "rerun_identical: " << yes_no(rerun == file.trace) << '\n';
  } else if (file.header.mode == "random" && file.header.seed) {
    const auto rerun =
        run_random(file.header.network, file.header.family, file.header.initial,
                   RandomActivation{file.header.probabilities, *file.header.seed},
                   file.header.max_steps);
    out << "rerun_identical: " << yes_no(rerun == file.trace) << '\n';
  }
  out << "issues: " << issues.size() << '\n';
  for (const auto& issue : issues) out << "issue: step=" << issue.step << ' ' << issue.message << '\n';
  return issues.empty() ? kExitOk : kExitVerificationFailed;
}

void add_inputs(CLI::App& app, ExperimentConfig& c) {
  app.add_option("--network", c.network, "Network file");
  auto* fn = app.add_option("--function", c.function,
                            "majority | stubborn | flipper | threshold:K");
  app.add_option("--functions", c.functions_file, "Per-agent assignment file (agent: selector)")
      ->excludes(fn);
}

void add_run_options(CLI::App& app, ExperimentConfig& c, bool mode_required) {
  auto* mode = app.add_option("--mode", c.mode, "sync | scheduled | random")
                   ->check(CLI::IsMember({"sync", "scheduled", "random"}));
  if (mode_required) mode->required();
  app.add_option("--schedule", c.schedule, "Schedule file, one group per line");
  auto* prob = app.add_option("--prob", c.prob, "Activation probability for every agent");
  app.add_option("--probs", c.probs_file, "Per-agent activation file (agent: p)")->excludes(prob);
  app.add_option("--seed", c.seed, "Random seed");
  app.add_option("--max-steps", c.max_steps, "Step limit (default max(1000, 4*2^n))");
}

}  // namespace

int run_config(const ExperimentConfig& input, std::ostream& out, std::ostream& err) {
  ExperimentConfig config = input;
  resolve_defaults(config);
  try {
    if (config.command == "simulate") return cmd_simulate(config, out, err);
    if (config.command == "verify") return cmd_verify(config, out, err);
    if (config.command == "analyze") return cmd_analyze(config, out, err);
    if (config.command == "construct-sequence") return cmd_construct_sequence(config, out, err);
    if (config.command == "sweep") return cmd_sweep(config, out, err);
    if (config.command == "replay") return cmd_replay(config, out, err);
    err << "error: unknown command '" << config.command << "'\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  ExperimentConfig config;
  CLI::App app{"Belief evolution on social networks under the majority rule", "beliefnet"};
  app.set_version_flag("--version", std::string("beliefnet ") + kVersion);
  app.require_subcommand(1);

  auto* simulate = app.add_subcommand("simulate", "Run one belief evolution");
  add_inputs(*simulate, config);
  simulate->add_option("--initial", config.initial, "Initial profile bitstring");
  add_run_options(*simulate, config, true);
  simulate->add_option("--trace", config.trace, "Write a JSON Lines trace");

  auto* verify = app.add_subcommand("verify", "Exhaustively check the rationality axioms");
  add_inputs(*verify, config);
  verify->add_option("--axioms", config.axioms, "all | comma-separated axiom names");

  auto* analyze = app.add_subcommand("analyze", "Equilibria, transition graph, reachability");
  add_inputs(*analyze, config);
  analyze->add_flag("--equilibria", config.equilibria, "List all equilibria");
  analyze->add_option("--transition-graph", config.transition_graph, "Write DOT transition graph");
  analyze->add_option("--condensation", config.condensation, "Write DOT condensation");
  analyze->add_option("--reachable-from", config.reachable_from, "Reachable equilibria");
  analyze->add_option("--construct-sequence", config.construct_sequence,
                      "Build a converging schedule from this profile");
  analyze->add_flag("--decreasing-first", config.decreasing_first,
                    "Run the decreasing phase first");

  auto* construct = app.add_subcommand("construct-sequence", "Build a converging schedule");
  add_inputs(*construct, config);
  construct->add_option("--initial", config.initial, "Initial profile bitstring");
  construct->add_flag("--decreasing-first", config.decreasing_first,
                      "Run the decreasing phase first");

  auto* sweep = app.add_subcommand("sweep", "Batch runs over seeds, profiles or networks");
  add_inputs(*sweep, config);
  sweep->add_option("--network-dir", config.network_dir, "Directory of .net files");
  sweep->add_option("--axis", config.axis, "seeds | profiles | networks")
      ->required()
      ->check(CLI::IsMember({"seeds", "profiles", "networks"}));
  sweep->add_option("--initial", config.initial, "Initial profile bitstring");
  add_run_options(*sweep, config, true);
  sweep->add_option("--seed-start", config.seed_start, "First seed of the seeds axis");
  sweep->add_option("--seed-count", config.seed_count, "Number of seeds on the seeds axis");
  sweep->add_option("--workers", config.workers,
                    "Worker threads (default BELIEFNET_WORKERS or hardware concurrency)");

  auto* replay = app.add_subcommand("replay", "Verify a trace file step by step");
  replay->add_option("--trace", config.trace, "Trace file")->required();

  std::vector<const char*> argv{"beliefnet"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }
  config.command = app.get_subcommands().front()->get_name();
  return run_config(config, out, err);
}

}  // namespace beliefnet::cli
