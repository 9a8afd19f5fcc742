// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "beliefnet/beliefnet.hpp"
#include "cli.hpp"
#include "support/oracles.hpp"

using namespace beliefnet;

namespace {

// Wall-clock budget for the exhaustive axiom and sequence suites.
constexpr double kSuiteBudgetSeconds = 60.0;
constexpr std::size_t kTrialsPerStart = 100;
constexpr std::size_t kK22Seeds = 1000;
constexpr std::size_t kK22MaxSteps = 1000;

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  std::function<Verdict()> check;
};

BeliefProfile bits(const char* s) { return BeliefProfile::parse(s); }

FunctionFamily majority(const Network& net) { return FunctionFamily::uniform(net, "majority"); }

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

template <class F>
double timed(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool min_out_degree_at_least(const Network& net, std::size_t k) {
  for (AgentIndex a = 0; a < net.size(); ++a) {
    if (net.out_degree(a) < k) return false;
  }
  return true;
}

Verdict majority_axioms() {
  std::size_t networks = 0, counterexamples = 0, non_slavish_mismatch = 0, replay_failures = 0;
  const double secs = timed([&] {
    for (std::size_t n = 2; n <= 4; ++n) {
      families::for_each_network(n, [&](const Network& net) {
        ++networks;
        const auto fam = majority(net);
        for (const auto& r : check_axioms(net, fam, kAllAxioms)) {
          if (!r.holds && !reproduces_violation(net, fam, r)) ++replay_failures;
          if (r.axiom == Axiom::non_slavish) {
            if (r.holds != min_out_degree_at_least(net, 3)) ++non_slavish_mismatch;
          } else if (!r.holds) {
            ++counterexamples;
          }
        }
      });
    }
  });
  std::ostringstream d;
  d << "networks=" << networks << " counterexamples=" << counterexamples
    << " non_slavish_mismatches=" << non_slavish_mismatch
    << " unreplayable_witnesses=" << replay_failures << " time=" << fmt_seconds(secs)
    << " budget=" << fmt_seconds(kSuiteBudgetSeconds);
  return {networks == 4 + 64 + 4096 && counterexamples == 0 && non_slavish_mismatch == 0 &&
              replay_failures == 0 && secs < kSuiteBudgetSeconds,
          d.str()};
}

Verdict converging_sequences() {
  std::size_t runs = 0, failures = 0, max_len = 0, too_long = 0;
  const double secs = timed([&] {
    for (std::size_t n = 2; n <= 4; ++n) {
      families::for_each_network(n, [&](const Network& net) {
        const auto fam = majority(net);
        for (const auto& p : oracle::all_profiles(n)) {
          ++runs;
          const auto seq = construct_converging_sequence(net, fam, p);
          // Re-check independently of the builder's own flag.
          const bool ok = apply_all(net, fam, seq.result) == seq.result &&
                          run_scheduled(net, fam, p, seq.schedule).final_profile() == seq.result;
          failures += ok ? 0 : 1;
          max_len = std::max(max_len, seq.schedule.groups.size());
          too_long += seq.schedule.groups.size() > 2 * n ? 1 : 0;
        }
      });
    }
  });
  std::ostringstream d;
  d << "runs=" << runs << " non_equilibrium=" << failures << " over_2n=" << too_long
    << " longest=" << max_len << " time=" << fmt_seconds(secs)
    << " budget=" << fmt_seconds(kSuiteBudgetSeconds);
  return {failures == 0 && too_long == 0 && secs < kSuiteBudgetSeconds, d.str()};
}

Verdict subset_equivalence() {
  std::size_t cases = 0, discrepancies = 0;
  const double secs = timed([&] {
    for (std::size_t n = 1; n <= 4; ++n) {
      const auto subsets = oracle::all_subsets(n);
      const auto profiles = oracle::all_profiles(n);
      families::for_each_network(n, [&](const Network& net) {
        for (const char* sel : {"majority", "flipper", "threshold:1"}) {
          const auto fam = FunctionFamily::uniform(net, sel);
          for (const auto& p : profiles) {
            ++cases;
            bool fixed_by_all = true;
            for (const auto& s : subsets) {
              fixed_by_all = fixed_by_all && oracle::apply_subset(net, fam, p, s) == p;
            }
            const bool eq = is_equilibrium(net, fam, p);
            if (eq != fixed_by_all || eq != equilibrium_subset_equivalence(net, fam, p)) {
              ++discrepancies;
            }
          }
        }
      });
    }
  });
  std::ostringstream d;
  d << "profile_cases=" << cases << " (each against every subset) discrepancies=" << discrepancies
    << " time=" << fmt_seconds(secs);
  return {discrepancies == 0, d.str()};
}

Verdict transition_structure() {
  std::size_t networks = 0, leaf_failures = 0, successor_mismatches = 0;
  const double secs = timed([&] {
    for (std::size_t n = 1; n <= 4; ++n) {
      families::for_each_network(n, [&](const Network& net) {
        ++networks;
        const auto fam = majority(net);
        if (!leaves_are_equilibria(net, fam)) ++leaf_failures;
        const auto graph = build_transition_graph(net, fam);
        const auto reference = oracle::definitional_graph(net, fam);
        for (std::uint64_t v = 0; v < graph.node_count(); ++v) {
          std::set<std::uint64_t> targets;
          for (const auto& t : graph.successors[v]) targets.insert(t.target);
          if (targets != reference[v]) ++successor_mismatches;
        }
      });
    }
  });
  std::ostringstream d;
  d << "networks=" << networks << " leaf_failures=" << leaf_failures
    << " successor_mismatches=" << successor_mismatches << " time=" << fmt_seconds(secs);
  return {leaf_failures == 0 && successor_mismatches == 0, d.str()};
}

Verdict random_convergence() {
  std::size_t starts = 0, trials = 0, converged = 0;
  std::string first_miss;
  bool k22_ok = false, sync_cycles = false;
  std::size_t k22_converged = 0;
  const double secs = timed([&] {
    for (std::size_t n = 1; n <= 4; ++n) {
      const std::size_t limit = std::size_t{4} << n;  // 4 * 2^n
      const auto profiles = oracle::all_profiles(n);
      families::for_each_network(n, [&](const Network& net) {
        const auto fam = majority(net);
        auto act = RandomActivation::uniform(net, 0.5, 0);
        for (const auto& p : profiles) {
          ++starts;
          for (std::uint64_t seed = 0; seed < kTrialsPerStart; ++seed) {
            ++trials;
            act.seed = seed;
            if (run_random(net, fam, p, act, limit).converged()) {
              ++converged;
            } else if (first_miss.empty()) {
              first_miss = " first_miss=[n=" + std::to_string(n) + " initial=" + p.to_string() +
                           " seed=" + std::to_string(seed) + "]";
            }
          }
        }
      });
    }
    const auto k22 = families::complete_bipartite(2, 2);
    const auto fam = majority(k22);
    for (std::uint64_t seed = 0; seed < kK22Seeds; ++seed) {
      const auto trace = run_random(k22, fam, bits("1100"),
                                    RandomActivation::uniform(k22, 0.5, seed), kK22MaxSteps);
      k22_converged += trace.converged() ? 1 : 0;
    }
    k22_ok = k22_converged == kK22Seeds;
    sync_cycles = run_synchronous(k22, fam, bits("1100"), kK22MaxSteps).outcome ==
                  Outcome(Cycled{0, 2});
  });
  std::ostringstream d;
  d << "starts=" << starts << " trials=" << trials << " converged=" << converged << '/' << trials
    << first_miss << " k22_random=" << k22_converged << '/' << kK22Seeds
    << " k22_sync=" << (sync_cycles ? "cycled(period 2)" : "unexpected") << " time="
    << fmt_seconds(secs);
  return {converged == trials && k22_ok && sync_cycles, d.str()};
}

Verdict fixed_instances() {
  std::vector<std::string> failures;
  // Path of three: brute-force equilibria from the tally oracle.
  const auto path = families::path(3);
  std::vector<BeliefProfile> oracle_eq;
  for (const auto& p : oracle::all_profiles(3)) {
    bool fixed = true;
    for (AgentIndex a = 0; a < 3; ++a) fixed = fixed && oracle::majority(path, p, a) == p[a];
    if (fixed) oracle_eq.push_back(p);
  }
  std::vector<BeliefProfile> expected;
  for (const char* s : {"000", "001", "011", "100", "110", "111"}) expected.push_back(bits(s));
  if (oracle_eq != expected) failures.push_back("path3-oracle");
  if (enumerate_equilibria(path, majority(path)) != expected) failures.push_back("path3");

  const auto star = families::star(3);
  if (run_synchronous(star, majority(star), bits("0111"), 100).outcome !=
      Outcome(Converged{1, bits("1111")})) {
    failures.push_back("star3");
  }

  const auto k22 = families::complete_bipartite(2, 2);
  auto schedule = [&](const char* g1, const char* g2) {
    return Schedule{{AgentGroup::parse(g1, k22), AgentGroup::parse(g2, k22)}};
  };
  if (run_scheduled(k22, majority(k22), bits("1100"), schedule("b1", "b2")).outcome !=
      Outcome(Converged{2, bits("1111")})) {
    failures.push_back("k22-b-first");
  }
  if (run_scheduled(k22, majority(k22), bits("1100"), schedule("a1", "a2")).outcome !=
      Outcome(Converged{2, bits("0000")})) {
    failures.push_back("k22-a-first");
  }
  std::string d = "path3_equilibria=" + std::to_string(oracle_eq.size()) +
                  " star3_sync=1111@1 k22_b_first=1111 k22_a_first=0000";
  for (const auto& f : failures) d += " failed:" + f;
  return {failures.empty(), d};
}

Verdict negative_functions() {
  std::size_t flipper_equilibria = 0, flipper_unfailed = 0, unreplayable = 0, stubborn_bad = 0;
  std::size_t networks = 0;
  for (std::size_t n = 1; n <= 3; ++n) {
    families::for_each_network(n, [&](const Network& net) {
      ++networks;
      const auto flipper = FunctionFamily::uniform(net, "flipper");
      flipper_equilibria += enumerate_equilibria(net, flipper).size();
      for (auto axiom : {Axiom::bounded, Axiom::monotonic}) {
        const auto r = check_axiom(axiom, net, flipper);
        if (r.holds) {
          ++flipper_unfailed;
        } else if (!reproduces_violation(net, flipper, r)) {
          ++unreplayable;
        }
      }
      const auto stubborn = FunctionFamily::uniform(net, "stubborn");
      for (const auto& r : check_axioms(net, stubborn, kAllAxioms)) {
        if (r.holds != (r.axiom != Axiom::non_slavish)) ++stubborn_bad;
        if (!r.holds && !reproduces_violation(net, stubborn, r)) ++unreplayable;
      }
    });
  }
  // Search stars of growing size for a threshold(3) monotonicity failure.
  std::string found = "none";
  bool threshold_ok = false;
  for (std::size_t leaves = 1; leaves <= 8 && !threshold_ok; ++leaves) {
    const auto star = families::star(leaves);
    const auto fam = FunctionFamily::uniform(star, "threshold:3");
    const auto r = check_monotonic(star, fam);
    if (!r.holds && reproduces_violation(star, fam, r)) {
      threshold_ok = true;
      found = "star(" + std::to_string(leaves) + ") " + render_witness(star, fam, r);
    }
  }
  std::ostringstream d;
  d << "networks=" << networks << " flipper_equilibria=" << flipper_equilibria
    << " flipper_passing_bounded_or_monotonic=" << flipper_unfailed
    << " stubborn_mismatches=" << stubborn_bad << " unreplayable=" << unreplayable
    << " threshold3_witness=" << found;
  return {flipper_equilibria == 0 && flipper_unfailed == 0 && stubborn_bad == 0 &&
              unreplayable == 0 && threshold_ok,
          d.str()};
}

int run_tool(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  return cli::run_cli(args, out, err);
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Verdict reproducibility() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "beliefnet_acceptance";
  fs::create_directories(dir);
  const std::string data = BELIEFNET_DATA_DIR;
  struct Invocation {
    std::string label;
    std::vector<std::string> args;
  };
  std::vector<Invocation> invocations;
  for (const char* n : {"k22.net", "cycle4.net", "star3.net"}) {
    for (const char* seed : {"0", "1", "99"}) {
      invocations.push_back({std::string("random ") + n + " seed " + seed,
                             {"simulate", "--network", data + "/networks/" + n, "--initial",
                              "1100", "--mode", "random", "--seed", seed}});
    }
    invocations.push_back({std::string("sync ") + n,
                           {"simulate", "--network", data + "/networks/" + n, "--initial", "1100",
                            "--mode", "sync"}});
  }
  invocations.push_back({"scheduled k22",
                         {"simulate", "--network", data + "/networks/k22.net", "--initial", "1100",
                          "--mode", "scheduled", "--schedule", data + "/k22_b_first.schedule"}});

  std::size_t identical = 0, replay_issues = 0, failed_runs = 0;
  for (std::size_t i = 0; i < invocations.size(); ++i) {
    std::string texts[2];
    for (int k = 0; k < 2; ++k) {
      const auto path = dir / ("run" + std::to_string(i) + "_" + std::to_string(k) + ".jsonl");
      auto args = invocations[i].args;
      args.push_back("--trace");
      args.push_back(path.string());
      if (run_tool(args) != cli::kExitOk) ++failed_runs;
      texts[k] = slurp(path);
      try {
        const auto file = load_trace(path.string());
        replay_issues += verify_trace(file.header.network, file.header.family, file.trace).size();
      } catch (const std::exception&) {
        ++replay_issues;
      }
    }
    if (!texts[0].empty() && texts[0] == texts[1]) ++identical;
  }
  std::ostringstream d;
  d << "invocations=" << invocations.size() << " byte_identical=" << identical << '/'
    << invocations.size() << " replay_issues=" << replay_issues << " failed_runs=" << failed_runs;
  return {identical == invocations.size() && replay_issues == 0 && failed_runs == 0, d.str()};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "majority-axioms", majority_axioms},
      {2, "converging-sequence", converging_sequences},
      {3, "subset-equilibrium-equivalence", subset_equivalence},
      {4, "transition-graph-leaves", transition_structure},
      {5, "random-asynchronous-convergence", random_convergence},
      {6, "fixed-instances", fixed_instances},
      {7, "negative-functions", negative_functions},
      {8, "reproducibility", reproducibility},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += v.pass ? 0 : 1;
    std::cout << (v.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << v.detail
              << std::endl;
  }
  std::cout << (criteria.size() - failures) << '/' << criteria.size() << " criteria passed"
            << std::endl;
  return failures == 0 ? 0 : 1;
}
