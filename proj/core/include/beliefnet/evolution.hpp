#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "beliefnet/network.hpp"
#include "beliefnet/profile.hpp"

namespace beliefnet {

// Counts over the out-neighborhood of an agent, self-loop included.
struct NeighborhoodTally {
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;

  bool operator==(const NeighborhoodTally&) const = default;
};

NeighborhoodTally tally(const Network& network, const BeliefProfile& profile, AgentIndex agent);

// Strict majority over the out-neighborhood; a tie keeps the agent's own
// belief. Throws DomainError for an unknown agent or mismatched profile.
Belief majority_rule(const Network& network, const BeliefProfile& profile, AgentIndex agent);
Belief majority_rule(const Network& network, const BeliefProfile& profile,
                     std::string_view agent);

// A per-agent belief evolution function: maps the whole current profile to
// the agent's next belief. Built-in kinds are majority, stubborn, flipper
// and threshold(k); custom rules exist for experiments and test fixtures.
class EvolutionFunction {
 public:
  enum class Kind { majority, stubborn, flipper, threshold, custom };
  using Rule = std::function<Belief(const Network&, const BeliefProfile&, AgentIndex)>;

  static EvolutionFunction majority() { return EvolutionFunction(Kind::majority); }
  static EvolutionFunction stubborn() { return EvolutionFunction(Kind::stubborn); }
  static EvolutionFunction flipper() { return EvolutionFunction(Kind::flipper); }
  // Flip when at least k out-neighbors other than the agent hold the
  // opposite belief. Throws ConfigError when k == 0.
  static EvolutionFunction threshold(std::size_t k);
  static EvolutionFunction custom(std::string name, Rule rule);

  // "majority" | "stubborn" | "flipper" | "threshold:K". Throws ConfigError.
  static EvolutionFunction parse(std::string_view selector);

  Kind kind() const { return kind_; }
  std::size_t threshold_k() const { return k_; }
  // Round-trips through parse() for built-in kinds; "custom:NAME" otherwise.
  std::string selector() const;

  // Unchecked: the caller guarantees agent < network.size() == profile.size().
  Belief operator()(const Network& network, const BeliefProfile& profile,
                    AgentIndex agent) const;

  bool operator==(const EvolutionFunction& other) const {
    return kind_ == other.kind_ && k_ == other.k_ && name_ == other.name_;
  }

 private:
  explicit EvolutionFunction(Kind kind) : kind_(kind) {}

  Kind kind_;
  std::size_t k_ = 0;
  std::string name_;
  std::shared_ptr<const Rule> rule_;
};

// Evaluates a built-in selector with full argument checking.
Belief builtin_function(std::string_view selector, const Network& network,
                        const BeliefProfile& profile, AgentIndex agent);

// One evolution function per agent, in canonical agent order.
class FunctionFamily {
 public:
  FunctionFamily() = default;
  // Throws DomainError when the function count differs from the agent count.
  FunctionFamily(const Network& network, std::vector<EvolutionFunction> functions);

  static FunctionFamily uniform(const Network& network, const EvolutionFunction& function);
  static FunctionFamily uniform(const Network& network, std::string_view selector);

  std::size_t size() const { return functions_.size(); }
  const EvolutionFunction& operator[](AgentIndex agent) const { return functions_[agent]; }
  std::span<const EvolutionFunction> functions() const { return functions_; }
  bool is_homogeneous() const;

  Belief evaluate(const Network& network, const BeliefProfile& profile, AgentIndex agent) const {
    return functions_[agent](network, profile, agent);
  }

  // "majority" for a homogeneous family, else "a:majority;b:stubborn;...".
  std::string describe(const Network& network) const;

  bool operator==(const FunctionFamily&) const = default;

 private:
  std::vector<EvolutionFunction> functions_;
};

// Throws DomainError unless the family covers exactly the network's agents.
void require_family_for(const Network& network, const FunctionFamily& family);

// Per-agent assignment file: one `agent: selector` line per agent, '#'
// comments allowed. Every agent must be assigned exactly once.
FunctionFamily parse_family(std::string_view text, const Network& network,
                            const std::string& source = "<functions>");
FunctionFamily load_family(const std::string& path, const Network& network);
// Either a selector applied to everyone or a describe() string.
FunctionFamily family_from_description(std::string_view description, const Network& network);

// A set of agents, stored as sorted unique indices.
class AgentGroup {
 public:
  AgentGroup() = default;
  explicit AgentGroup(std::vector<AgentIndex> members);

  static AgentGroup all(std::size_t agents);
  // Mask bits follow agent_bit().
  static AgentGroup from_mask(std::size_t agents, std::uint64_t mask);
  // Comma-separated agent ids; empty text is the empty group.
  // Throws DomainError for unknown ids.
  static AgentGroup parse(std::string_view ids, const Network& network);

  std::span<const AgentIndex> members() const { return members_; }
  bool empty() const { return members_.empty(); }
  std::size_t size() const { return members_.size(); }
  bool contains(AgentIndex agent) const;
  std::uint64_t mask(std::size_t agents) const;

  // "a1,b2"; empty string for the empty group.
  std::string to_string(const Network& network) const;

  auto operator<=>(const AgentGroup&) const = default;

 private:
  std::vector<AgentIndex> members_;
};

// Every agent updates simultaneously from the same input profile.
BeliefProfile apply_all(const Network& network, const FunctionFamily& family,
                        const BeliefProfile& profile);

// Agents in `group` take their function's value on `profile`; the rest
// keep their belief. Throws DomainError when the group names an agent
// outside the network.
BeliefProfile apply_group(const Network& network, const FunctionFamily& family,
                          const BeliefProfile& profile, const AgentGroup& group);

// Agents whose function output differs from their current belief, as a mask
// over agent_bit(). Requires network.size() <= kMaxIndexedAgents.
std::uint64_t disagreement_mask(const Network& network, const FunctionFamily& family,
                                const BeliefProfile& profile);

}  // namespace beliefnet
