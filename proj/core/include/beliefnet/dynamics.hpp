#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "beliefnet/evolution.hpp"
#include "beliefnet/network.hpp"
#include "beliefnet/profile.hpp"

namespace beliefnet {

// A finite sequence of updating groups.
struct Schedule {
  std::vector<AgentGroup> groups;

  bool operator==(const Schedule&) const = default;
};

// One group per line as comma-separated agent ids; an empty line is an
// empty group; lines starting with '#' are ignored. Throws ParseError.
Schedule parse_schedule(std::string_view text, const Network& network,
                        const std::string& source = "<schedule>");
Schedule load_schedule(const std::string& path, const Network& network);
std::string format_schedule(const Schedule& schedule, const Network& network);

// Independent per-agent activation coins, redrawn every step.
struct RandomActivation {
  std::vector<double> probabilities;  // per agent, canonical order
  std::uint64_t seed = 0;

  static RandomActivation uniform(const Network& network, double probability,
                                  std::uint64_t seed);
};

// Throws ConfigError for a size mismatch or a probability outside [0,1].
void validate_activation(const Network& network, const RandomActivation& activation);

// Every subset of agents can be drawn at every step iff all probabilities
// lie strictly inside (0,1); almost-sure convergence is only claimed then.
bool every_group_possible(std::span<const double> probabilities);

// `agent: probability` lines covering every agent exactly once.
std::vector<double> parse_probabilities(std::string_view text, const Network& network,
                                        const std::string& source = "<probabilities>");
std::vector<double> load_probabilities(const std::string& path, const Network& network);

// Draws activation groups from a seeded mt19937_64. Each agent consumes one
// 64-bit draw per step, in canonical order, whatever its probability, so a
// seed fixes the whole sequence independently of the probability values.
class ActivationSampler {
 public:
  explicit ActivationSampler(std::uint64_t seed) : engine_(seed) {}

  AgentGroup draw(std::span<const double> probabilities);

 private:
  std::mt19937_64 engine_;
};

struct TraceStep {
  AgentGroup group;
  BeliefProfile profile;

  bool operator==(const TraceStep&) const = default;
};

struct Converged {
  std::size_t at_step = 0;
  BeliefProfile equilibrium;

  bool operator==(const Converged&) const = default;
};

struct Cycled {
  std::size_t preperiod = 0;
  std::size_t period = 0;

  bool operator==(const Cycled&) const = default;
};

struct StepLimitReached {
  bool operator==(const StepLimitReached&) const = default;
};

using Outcome = std::variant<Converged, Cycled, StepLimitReached>;

std::string describe_outcome(const Outcome& outcome);

// A run: the initial profile, every applied group with its resulting
// profile, and how the run ended.
struct Trace {
  BeliefProfile initial;
  std::vector<TraceStep> steps;
  Outcome outcome = StepLimitReached{};

  // Profile after `step` groups; step 0 is the initial profile.
  const BeliefProfile& profile_at(std::size_t step) const;
  const BeliefProfile& final_profile() const;
  bool converged() const { return std::holds_alternative<Converged>(outcome); }

  bool operator==(const Trace&) const = default;
};

bool is_equilibrium(const Network& network, const FunctionFamily& family,
                    const BeliefProfile& profile);

inline constexpr std::size_t kDefaultSubsetLimit = 16;

// First group (by size, then lexicographically) whose update changes the
// profile; nullopt when every one of the 2^n groups leaves it fixed.
std::optional<AgentGroup> unstable_group(const Network& network, const FunctionFamily& family,
                                         const BeliefProfile& profile,
                                         std::size_t max_agents = kDefaultSubsetLimit);

// True iff the profile is fixed under apply_group for every subset.
bool equilibrium_subset_equivalence(const Network& network, const FunctionFamily& family,
                                    const BeliefProfile& profile,
                                    std::size_t max_agents = kDefaultSubsetLimit);

// max(1000, 4 * 2^n), capped at 10^6.
std::size_t default_max_steps(std::size_t agents);

// Iterates apply_all. Stops converged at the first equilibrium, cycled on
// the first revisited profile, or after max_steps updates.
Trace run_synchronous(const Network& network, const FunctionFamily& family,
                      const BeliefProfile& initial, std::size_t max_steps);

// Applies the groups in order, stopping at the first equilibrium.
Trace run_scheduled(const Network& network, const FunctionFamily& family,
                    const BeliefProfile& initial, const Schedule& schedule);

// Draws a fresh group each step; stops at the first equilibrium or after
// max_steps draws. Empty groups count as steps.
Trace run_random(const Network& network, const FunctionFamily& family,
                 const BeliefProfile& initial, const RandomActivation& activation,
                 std::size_t max_steps);

struct TraceIssue {
  std::size_t step = 0;
  std::string message;
};

// Replays every step through apply_group and checks the outcome's claims.
// Empty result means the trace is self-consistent.
std::vector<TraceIssue> verify_trace(const Network& network, const FunctionFamily& family,
                                     const Trace& trace);

}  // namespace beliefnet
