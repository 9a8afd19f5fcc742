#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "beliefnet/evolution.hpp"
#include "beliefnet/isomorphism.hpp"
#include "beliefnet/network.hpp"
#include "beliefnet/profile.hpp"

namespace beliefnet {

enum class Axiom { bounded, neutral, congruent, local, monotonic, non_slavish };

inline constexpr Axiom kAllAxioms[] = {Axiom::bounded, Axiom::neutral,   Axiom::congruent,
                                       Axiom::local,   Axiom::monotonic, Axiom::non_slavish};

std::string_view to_string(Axiom axiom);
// Throws ConfigError for an unknown name.
Axiom parse_axiom(std::string_view name);
// "all" or a comma-separated list of axiom names.
std::vector<Axiom> parse_axiom_list(std::string_view list);

// Agent counts above which an exhaustive check refuses to run.
struct ExhaustiveLimits {
  std::size_t profile_agents = 12;  // sweeps over all 2^n profiles
  std::size_t pair_agents = 10;     // sweeps over all 3^n comparable pairs
  std::size_t isomorphism_agents = kDefaultIsomorphismLimit;
};

// Counterexample to an axiom. Which fields are set depends on the axiom:
//   bounded, neutral:  profiles = {P}, agent
//   congruent:         profiles = {P}, agent, mapping (an isomorphism)
//   local:             profiles = {P, Q} agreeing on agent's neighborhood
//   monotonic:         profiles = {P, Q} with P <= Q, agent
//   non_slavish:       agent is dominated by `dominator` on every profile
struct AxiomWitness {
  std::vector<BeliefProfile> profiles;
  AgentIndex agent = 0;
  std::optional<AgentIndex> dominator;
  std::optional<AgentMap> mapping;

  bool operator==(const AxiomWitness&) const = default;
};

struct AxiomReport {
  Axiom axiom;
  bool holds = true;
  std::optional<AxiomWitness> witness;  // present iff !holds
};

AxiomReport check_bounded(const Network& network, const FunctionFamily& family,
                          const ExhaustiveLimits& limits = {});
AxiomReport check_neutral(const Network& network, const FunctionFamily& family,
                          const ExhaustiveLimits& limits = {});
// Over all automorphisms of the network.
AxiomReport check_congruent(const Network& network, const FunctionFamily& family,
                            const ExhaustiveLimits& limits = {});
// Across two networks: f_a(P) must equal g_{pi(a)}(P o pi^-1) for every
// isomorphism pi from `network` onto `other`.
AxiomReport check_congruent(const Network& network, const FunctionFamily& family,
                            const Network& other, const FunctionFamily& other_family,
                            const ExhaustiveLimits& limits = {});
AxiomReport check_local(const Network& network, const FunctionFamily& family,
                        const ExhaustiveLimits& limits = {});
AxiomReport check_monotonic(const Network& network, const FunctionFamily& family,
                            const ExhaustiveLimits& limits = {});
AxiomReport check_non_slavish(const Network& network, const FunctionFamily& family,
                              const ExhaustiveLimits& limits = {});

AxiomReport check_axiom(Axiom axiom, const Network& network, const FunctionFamily& family,
                        const ExhaustiveLimits& limits = {});
std::vector<AxiomReport> check_axioms(const Network& network, const FunctionFamily& family,
                                      std::span<const Axiom> axioms,
                                      const ExhaustiveLimits& limits = {});

// Re-evaluates a failing report's witness directly through the evolution
// functions. True iff the witness still shows a violation. A dominance
// witness is re-checked over every profile.
bool reproduces_violation(const Network& network, const FunctionFamily& family,
                          const AxiomReport& report);

// "P=0110 agent=b f=1" style rendering; "-" when the axiom holds.
std::string render_witness(const Network& network, const FunctionFamily& family,
                           const AxiomReport& report);

}  // namespace beliefnet
