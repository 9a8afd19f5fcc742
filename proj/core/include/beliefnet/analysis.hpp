#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "beliefnet/dynamics.hpp"
#include "beliefnet/evolution.hpp"
#include "beliefnet/network.hpp"
#include "beliefnet/profile.hpp"

namespace beliefnet {

inline constexpr std::size_t kDefaultEquilibriumLimit = 20;
inline constexpr std::size_t kDefaultTransitionLimit = 12;

// Profiles fixed by apply_all, in ascending bitstring order.
std::vector<BeliefProfile> enumerate_equilibria(const Network& network,
                                                const FunctionFamily& family,
                                                std::size_t max_agents = kDefaultEquilibriumLimit);

// Edge P -> P ^ flipped, where `flipped` is a subset of D(P). Nodes and
// masks are profile indices (see agent_bit()).
struct Transition {
  std::uint64_t target = 0;
  std::uint64_t flipped = 0;

  bool operator==(const Transition&) const = default;
};

// Belief profile transition graph: one node per profile, one edge per
// distinct successor reachable by a single group update. Each edge keeps
// the flipped agents as its witness group; the self-loop has the empty one.
struct TransitionGraph {
  std::size_t agents = 0;
  std::vector<std::uint64_t> disagreement;          // D(P) per node
  std::vector<std::vector<Transition>> successors;  // ascending target

  std::size_t node_count() const { return disagreement.size(); }
  std::size_t edge_count() const;
  bool is_equilibrium(std::uint64_t node) const { return disagreement[node] == 0; }
};

// Successors come from the subsets of the disagreement set rather than from
// all 2^n groups. Throws InfeasibleError above `max_agents`.
TransitionGraph build_transition_graph(const Network& network, const FunctionFamily& family,
                                       std::size_t max_agents = kDefaultTransitionLimit);

// Strongly connected components of a transition graph. Components are
// numbered in topological order of the component DAG (sources first);
// members are ascending. Self-loops never make an edge in the DAG, so a
// leaf is a component with no edge to another component.
struct Condensation {
  std::vector<std::size_t> component_of;
  std::vector<std::vector<std::uint64_t>> components;
  std::vector<std::pair<std::size_t, std::size_t>> dag_edges;  // sorted, unique
  std::vector<std::size_t> leaves;                             // ascending

  std::size_t component_count() const { return components.size(); }
  bool is_leaf(std::size_t component) const;
};

Condensation condense(const TransitionGraph& graph);

struct LeafSummary {
  bool leaves_are_equilibria = false;
  std::size_t leaf_count = 0;
  std::size_t equilibrium_leaf_count = 0;  // singleton leaves holding an equilibrium
  std::vector<BeliefProfile> equilibria;
};

// Compares the condensation's leaves with enumerate_equilibria(): true iff
// every leaf is a singleton equilibrium component and every equilibrium is
// such a leaf.
LeafSummary summarize_leaves(const Network& network, const FunctionFamily& family,
                             std::size_t max_agents = kDefaultTransitionLimit);
bool leaves_are_equilibria(const Network& network, const FunctionFamily& family,
                           std::size_t max_agents = kDefaultTransitionLimit);

enum class PhaseOrder { increasing_first, decreasing_first };

struct ConvergingSequence {
  Schedule schedule;
  std::vector<BeliefProfile> profiles;  // initial, then one per group
  std::size_t first_phase_rounds = 0;
  std::size_t second_phase_rounds = 0;
  BeliefProfile result;
  // The result passed is_equilibrium. Guaranteed for monotonic families.
  bool verified = false;
};

// Two-phase construction. Increasing phase: each round updates every agent
// holding 0 whose function gives 1, until none is left. Decreasing phase:
// the same for 1 -> 0. Each phase takes at most n rounds.
ConvergingSequence construct_converging_sequence(const Network& network,
                                                 const FunctionFamily& family,
                                                 const BeliefProfile& initial,
                                                 PhaseOrder order = PhaseOrder::increasing_first);

// Equilibria reachable from `initial` through group updates, ascending.
std::vector<BeliefProfile> reachable_equilibria(const Network& network,
                                                const FunctionFamily& family,
                                                const BeliefProfile& initial,
                                                std::size_t max_agents = kDefaultTransitionLimit);

// DOT digraphs. Node names are profile bitstrings; equilibria are drawn as
// double circles; edges carry their witness group. Self-loops are omitted
// unless `self_loops` is set.
std::string transition_graph_dot(const Network& network, const TransitionGraph& graph,
                                 bool self_loops = false);
std::string condensation_dot(const TransitionGraph& graph, const Condensation& condensation);

}  // namespace beliefnet
