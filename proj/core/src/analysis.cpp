#include "beliefnet/analysis.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>

#include "beliefnet/errors.hpp"

namespace beliefnet {
namespace {

void require_within(std::size_t agents, std::size_t limit, const char* what) {
  if (agents > limit) throw InfeasibleError(what, agents, limit);
  if (agents > kMaxIndexedAgents) throw InfeasibleError(what, agents, kMaxIndexedAgents);
}

// Successors of one node: every submask of the disagreement set.
std::vector<Transition> successors_of(std::uint64_t node, std::uint64_t disagreement) {
  std::vector<Transition> out;
  std::uint64_t sub = disagreement;
  while (true) {
    out.push_back(Transition{node ^ sub, sub});
    if (sub == 0) break;
    sub = (sub - 1) & disagreement;
  }
  std::sort(out.begin(), out.end(),
            [](const Transition& a, const Transition& b) { return a.target < b.target; });
  return out;
}

std::string group_label(const Network& network, std::uint64_t mask) {
  return "{" + AgentGroup::from_mask(network.size(), mask).to_string(network) + "}";
}

std::string node_name(std::size_t agents, std::uint64_t node) {
  return "\"" + BeliefProfile::from_index(agents, node).to_string() + "\"";
}

}  // namespace

std::vector<BeliefProfile> enumerate_equilibria(const Network& network,
                                                const FunctionFamily& family,
                                                std::size_t max_agents) {
  require_within(network.size(), max_agents, "equilibrium enumeration");
  require_family_for(network, family);
  std::vector<BeliefProfile> result;
  const std::uint64_t count = std::uint64_t{1} << network.size();
  for (std::uint64_t index = 0; index < count; ++index) {
    auto profile = BeliefProfile::from_index(network.size(), index);
    if (is_equilibrium(network, family, profile)) result.push_back(std::move(profile));
  }
  return result;
}

std::size_t TransitionGraph::edge_count() const {
  std::size_t count = 0;
  for (const auto& out : successors) count += out.size();
  return count;
}

TransitionGraph build_transition_graph(const Network& network, const FunctionFamily& family,
                                       std::size_t max_agents) {
  require_within(network.size(), max_agents, "transition graph");
  require_family_for(network, family);
  TransitionGraph graph;
  graph.agents = network.size();
  const std::uint64_t count = std::uint64_t{1} << network.size();
  graph.disagreement.resize(count);
  graph.successors.resize(count);
  for (std::uint64_t node = 0; node < count; ++node) {
    auto profile = BeliefProfile::from_index(network.size(), node);
    graph.disagreement[node] = disagreement_mask(network, family, profile);
    graph.successors[node] = successors_of(node, graph.disagreement[node]);
  }
  return graph;
}

bool Condensation::is_leaf(std::size_t component) const {
  return std::binary_search(leaves.begin(), leaves.end(), component);
}

Condensation condense(const TransitionGraph& graph) {
  // Iterative Tarjan. Components come out in reverse topological order.
  const std::size_t n = graph.node_count();
  constexpr std::size_t kUnvisited = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> index(n, kUnvisited), lowlink(n, 0), raw_component(n, kUnvisited);
  std::vector<bool> on_stack(n, false);
  std::vector<std::uint64_t> stack;
  std::vector<std::vector<std::uint64_t>> raw_components;
  std::size_t next_index = 0;

  struct Frame {
    std::uint64_t node;
    std::size_t edge;
  };
  std::vector<Frame> call;

  for (std::uint64_t root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      Frame& frame = call.back();
      const auto& edges = graph.successors[frame.node];
      if (frame.edge < edges.size()) {
        const std::uint64_t w = edges[frame.edge++].target;
        if (index[w] == kUnvisited) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[frame.node] = std::min(lowlink[frame.node], index[w]);
        }
        continue;
      }
      const std::uint64_t v = frame.node;
      call.pop_back();
      if (!call.empty()) {
        lowlink[call.back().node] = std::min(lowlink[call.back().node], lowlink[v]);
      }
      if (lowlink[v] == index[v]) {
        std::vector<std::uint64_t> members;
        std::uint64_t w = 0;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          raw_component[w] = raw_components.size();
          members.push_back(w);
        } while (w != v);
        std::sort(members.begin(), members.end());
        raw_components.push_back(std::move(members));
      }
    }
  }

  Condensation result;
  const std::size_t count = raw_components.size();
  result.components.resize(count);
  for (std::size_t c = 0; c < count; ++c) {
    result.components[c] = std::move(raw_components[count - 1 - c]);
  }
  result.component_of.resize(n);
  for (std::uint64_t v = 0; v < n; ++v) result.component_of[v] = count - 1 - raw_component[v];

  for (std::uint64_t v = 0; v < n; ++v) {
    for (const auto& edge : graph.successors[v]) {
      const std::size_t from = result.component_of[v];
      const std::size_t to = result.component_of[edge.target];
      if (from != to) result.dag_edges.emplace_back(from, to);
    }
  }
  std::sort(result.dag_edges.begin(), result.dag_edges.end());
  result.dag_edges.erase(std::unique(result.dag_edges.begin(), result.dag_edges.end()),
                         result.dag_edges.end());

  std::vector<bool> has_out(count, false);
  for (const auto& [from, to] : result.dag_edges) has_out[from] = true;
  for (std::size_t c = 0; c < count; ++c) {
    if (!has_out[c]) result.leaves.push_back(c);
  }
  return result;
}

LeafSummary summarize_leaves(const Network& network, const FunctionFamily& family,
                             std::size_t max_agents) {
  const auto graph = build_transition_graph(network, family, max_agents);
  const auto condensation = condense(graph);
  LeafSummary summary;
  summary.equilibria = enumerate_equilibria(network, family, max_agents);
  summary.leaf_count = condensation.leaves.size();

  std::vector<std::uint64_t> equilibrium_leaves;
  for (std::size_t leaf : condensation.leaves) {
    const auto& members = condensation.components[leaf];
    if (members.size() == 1 && graph.is_equilibrium(members.front())) {
      equilibrium_leaves.push_back(members.front());
    }
  }
  std::sort(equilibrium_leaves.begin(), equilibrium_leaves.end());
  summary.equilibrium_leaf_count = equilibrium_leaves.size();

  std::vector<std::uint64_t> equilibria;
  for (const auto& p : summary.equilibria) equilibria.push_back(p.index());
  summary.leaves_are_equilibria =
      equilibrium_leaves.size() == condensation.leaves.size() && equilibrium_leaves == equilibria;
  return summary;
}

bool leaves_are_equilibria(const Network& network, const FunctionFamily& family,
                           std::size_t max_agents) {
  return summarize_leaves(network, family, max_agents).leaves_are_equilibria;
}

ConvergingSequence construct_converging_sequence(const Network& network,
                                                 const FunctionFamily& family,
                                                 const BeliefProfile& initial, PhaseOrder order) {
  require_profile_for(network, initial);
  require_family_for(network, family);
  ConvergingSequence seq;
  seq.profiles.push_back(initial);
  BeliefProfile current = initial;

  // Runs rounds moving agents from `from` to the other value until none is eligible.
  auto run_phase = [&](Belief from) {
    std::size_t rounds = 0;
    while (true) {
      std::vector<AgentIndex> eligible;
      for (AgentIndex a = 0; a < network.size(); ++a) {
        if (current[a] == from && family.evaluate(network, current, a) != from) {
          eligible.push_back(a);
        }
      }
      if (eligible.empty()) return rounds;
      AgentGroup group(std::move(eligible));
      current = apply_group(network, family, current, group);
      seq.schedule.groups.push_back(std::move(group));
      seq.profiles.push_back(current);
      ++rounds;
    }
  };

  const Belief first = order == PhaseOrder::increasing_first ? Belief::disbelieve : Belief::believe;
  seq.first_phase_rounds = run_phase(first);
  seq.second_phase_rounds = run_phase(opposite(first));
  seq.verified = is_equilibrium(network, family, current);
  seq.result = std::move(current);
  return seq;
}

std::vector<BeliefProfile> reachable_equilibria(const Network& network,
                                                const FunctionFamily& family,
                                                const BeliefProfile& initial,
                                                std::size_t max_agents) {
  require_within(network.size(), max_agents, "reachability search");
  require_family_for(network, family);
  require_profile_for(network, initial);
  const std::size_t n = network.size();
  std::vector<bool> seen(std::size_t{1} << n, false);
  std::deque<std::uint64_t> queue{initial.index()};
  seen[initial.index()] = true;
  std::vector<std::uint64_t> found;
  while (!queue.empty()) {
    const std::uint64_t node = queue.front();
    queue.pop_front();
    const auto d = disagreement_mask(network, family, BeliefProfile::from_index(n, node));
    if (d == 0) {
      found.push_back(node);
      continue;
    }
    for (const auto& edge : successors_of(node, d)) {
      if (!seen[edge.target]) {
        seen[edge.target] = true;
        queue.push_back(edge.target);
      }
    }
  }
  std::sort(found.begin(), found.end());
  std::vector<BeliefProfile> result;
  for (auto node : found) result.push_back(BeliefProfile::from_index(n, node));
  return result;
}

std::string transition_graph_dot(const Network& network, const TransitionGraph& graph,
                                 bool self_loops) {
  std::ostringstream out;
  out << "digraph transitions {\n";
  for (std::uint64_t v = 0; v < graph.node_count(); ++v) {
    out << "  " << node_name(graph.agents, v)
        << (graph.is_equilibrium(v) ? " [shape=doublecircle];\n" : " [shape=circle];\n");
  }
  for (std::uint64_t v = 0; v < graph.node_count(); ++v) {
    for (const auto& edge : graph.successors[v]) {
      if (edge.target == v && !self_loops) continue;
      out << "  " << node_name(graph.agents, v) << " -> " << node_name(graph.agents, edge.target)
          << " [label=\"" << group_label(network, edge.flipped) << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string condensation_dot(const TransitionGraph& graph, const Condensation& condensation) {
  std::ostringstream out;
  out << "digraph condensation {\n";
  for (std::size_t c = 0; c < condensation.component_count(); ++c) {
    const auto& members = condensation.components[c];
    std::string label;
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (i) label += "\\n";
      label += BeliefProfile::from_index(graph.agents, members[i]).to_string();
    }
    const bool equilibrium = members.size() == 1 && graph.is_equilibrium(members.front());
    out << "  C" << c << " [label=\"" << label << "\", shape="
        << (equilibrium ? "doublecircle" : (condensation.is_leaf(c) ? "box" : "ellipse"))
        << "];\n";
  }
  for (const auto& [from, to] : condensation.dag_edges) {
    out << "  C" << from << " -> C" << to << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace beliefnet
