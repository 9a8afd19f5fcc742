#include "beliefnet/evolution.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include "beliefnet/errors.hpp"
#include "text_util.hpp"

namespace beliefnet {
namespace {

void check_agent(const Network& network, const BeliefProfile& profile, AgentIndex agent) {
  require_profile_for(network, profile);
  if (agent >= network.size()) {
    throw DomainError("agent index " + std::to_string(agent) + " is not in the network");
  }
}

Belief majority_unchecked(const Network& network, const BeliefProfile& profile,
                          AgentIndex agent) {
  auto t = tally(network, profile, agent);
  if (t.n_pos > t.n_neg) return Belief::believe;
  if (t.n_pos < t.n_neg) return Belief::disbelieve;
  return profile[agent];
}

}  // namespace

NeighborhoodTally tally(const Network& network, const BeliefProfile& profile, AgentIndex agent) {
  NeighborhoodTally t;
  for (AgentIndex b : network.out_neighbors(agent)) {
    if (profile[b] == Belief::believe) {
      ++t.n_pos;
    } else {
      ++t.n_neg;
    }
  }
  return t;
}

Belief majority_rule(const Network& network, const BeliefProfile& profile, AgentIndex agent) {
  check_agent(network, profile, agent);
  return majority_unchecked(network, profile, agent);
}

Belief majority_rule(const Network& network, const BeliefProfile& profile,
                     std::string_view agent) {
  return majority_rule(network, profile, network.index_of(agent));
}

EvolutionFunction EvolutionFunction::threshold(std::size_t k) {
  if (k == 0) throw ConfigError("threshold function needs k >= 1");
  EvolutionFunction f(Kind::threshold);
  f.k_ = k;
  return f;
}

EvolutionFunction EvolutionFunction::custom(std::string name, Rule rule) {
  if (!rule) throw ConfigError("custom evolution function '" + name + "' has no rule");
  EvolutionFunction f(Kind::custom);
  f.name_ = std::move(name);
  f.rule_ = std::make_shared<const Rule>(std::move(rule));
  return f;
}

EvolutionFunction EvolutionFunction::parse(std::string_view selector) {
  selector = detail::trim(selector);
  if (selector == "majority") return majority();
  if (selector == "stubborn") return stubborn();
  if (selector == "flipper") return flipper();
  constexpr std::string_view prefix = "threshold:";
  if (selector.substr(0, prefix.size()) == prefix) {
    auto digits = selector.substr(prefix.size());
    std::size_t k = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
      throw ConfigError("invalid threshold selector '" + std::string(selector) +
                        "': expected threshold:K with a positive integer K");
    }
    return threshold(k);
  }
  throw ConfigError("unknown evolution function '" + std::string(selector) +
                    "' (expected majority, stubborn, flipper or threshold:K)");
}

std::string EvolutionFunction::selector() const {
  switch (kind_) {
    case Kind::majority:
      return "majority";
    case Kind::stubborn:
      return "stubborn";
    case Kind::flipper:
      return "flipper";
    case Kind::threshold:
      return "threshold:" + std::to_string(k_);
    case Kind::custom:
      return "custom:" + name_;
  }
  return {};
}

Belief EvolutionFunction::operator()(const Network& network, const BeliefProfile& profile,
                                     AgentIndex agent) const {
  switch (kind_) {
    case Kind::majority:
      return majority_unchecked(network, profile, agent);
    case Kind::stubborn:
      return profile[agent];
    case Kind::flipper:
      return opposite(profile[agent]);
    case Kind::threshold: {
      const Belief own = profile[agent];
      std::size_t opposing = 0;
      for (AgentIndex b : network.out_neighbors(agent)) {
        if (b != agent && profile[b] != own) ++opposing;
      }
      return opposing >= k_ ? opposite(own) : own;
    }
    case Kind::custom:
      return (*rule_)(network, profile, agent);
  }
  return profile[agent];
}

Belief builtin_function(std::string_view selector, const Network& network,
                        const BeliefProfile& profile, AgentIndex agent) {
  auto f = EvolutionFunction::parse(selector);
  check_agent(network, profile, agent);
  return f(network, profile, agent);
}

FunctionFamily::FunctionFamily(const Network& network, std::vector<EvolutionFunction> functions)
    : functions_(std::move(functions)) {
  require_family_for(network, *this);
}

FunctionFamily FunctionFamily::uniform(const Network& network, const EvolutionFunction& function) {
  return FunctionFamily(network, std::vector<EvolutionFunction>(network.size(), function));
}

FunctionFamily FunctionFamily::uniform(const Network& network, std::string_view selector) {
  return uniform(network, EvolutionFunction::parse(selector));
}

bool FunctionFamily::is_homogeneous() const {
  return std::adjacent_find(functions_.begin(), functions_.end(), std::not_equal_to<>()) ==
         functions_.end();
}

std::string FunctionFamily::describe(const Network& network) const {
  if (!functions_.empty() && is_homogeneous()) return functions_.front().selector();
  std::string out;
  for (AgentIndex a = 0; a < functions_.size(); ++a) {
    if (a) out += ';';
    out += network.agent(a).str() + ':' + functions_[a].selector();
  }
  return out;
}

void require_family_for(const Network& network, const FunctionFamily& family) {
  if (family.size() != network.size()) {
    throw DomainError("function family covers " + std::to_string(family.size()) +
                      " agents but the network has " + std::to_string(network.size()));
  }
}

FunctionFamily parse_family(std::string_view text, const Network& network,
                            const std::string& source) {
  std::vector<std::optional<EvolutionFunction>> assigned(network.size());
  std::size_t line_no = 0;
  for (std::string_view raw : detail::split_lines(text)) {
    ++line_no;
    std::string_view line = detail::trim(detail::strip_comment(raw));
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError(source, line_no, "expected 'agent: selector'");
    }
    auto id = detail::trim(line.substr(0, colon));
    auto selector = detail::trim(line.substr(colon + 1));
    auto index = network.find(id);
    if (!index) throw ParseError(source, line_no, "unknown agent '" + std::string(id) + "'");
    if (assigned[*index]) {
      throw ParseError(source, line_no, "agent '" + std::string(id) + "' assigned twice");
    }
    try {
      assigned[*index] = EvolutionFunction::parse(selector);
    } catch (const ConfigError& e) {
      throw ParseError(source, line_no, e.what());
    }
  }
  std::vector<EvolutionFunction> functions;
  functions.reserve(network.size());
  for (AgentIndex a = 0; a < network.size(); ++a) {
    if (!assigned[a]) {
      throw ParseError(source, line_no,
                       "agent '" + network.agent(a).str() + "' has no evolution function");
    }
    functions.push_back(*assigned[a]);
  }
  return FunctionFamily(network, std::move(functions));
}

FunctionFamily load_family(const std::string& path, const Network& network) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open function assignment file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_family(buffer.str(), network, path);
}

FunctionFamily family_from_description(std::string_view description, const Network& network) {
  if (description.find(';') == std::string_view::npos) {
    try {
      return FunctionFamily::uniform(network, description);
    } catch (const ConfigError&) {
      // Not a plain selector; may still be a one-agent assignment.
    }
  }
  std::string lines;
  for (auto part : detail::split(description, ';')) {
    lines.append(part);
    lines.push_back('\n');
  }
  return parse_family(lines, network, "<family description>");
}

AgentGroup::AgentGroup(std::vector<AgentIndex> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

AgentGroup AgentGroup::all(std::size_t agents) {
  std::vector<AgentIndex> members(agents);
  for (AgentIndex a = 0; a < agents; ++a) members[a] = a;
  return AgentGroup(std::move(members));
}

AgentGroup AgentGroup::from_mask(std::size_t agents, std::uint64_t mask) {
  std::vector<AgentIndex> members;
  for (AgentIndex a = 0; a < agents; ++a) {
    if (mask & agent_bit(agents, a)) members.push_back(a);
  }
  return AgentGroup(std::move(members));
}

AgentGroup AgentGroup::parse(std::string_view ids, const Network& network) {
  ids = detail::trim(ids);
  std::vector<AgentIndex> members;
  if (ids.empty()) return AgentGroup();
  for (auto token : detail::split(ids, ',')) {
    members.push_back(network.index_of(detail::trim(token)));
  }
  return AgentGroup(std::move(members));
}

bool AgentGroup::contains(AgentIndex agent) const {
  return std::binary_search(members_.begin(), members_.end(), agent);
}

std::uint64_t AgentGroup::mask(std::size_t agents) const {
  std::uint64_t m = 0;
  for (AgentIndex a : members_) m |= agent_bit(agents, a);
  return m;
}

std::string AgentGroup::to_string(const Network& network) const {
  std::string out;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) out += ',';
    out += network.agent(members_[i]).str();
  }
  return out;
}

BeliefProfile apply_all(const Network& network, const FunctionFamily& family,
                        const BeliefProfile& profile) {
  require_profile_for(network, profile);
  require_family_for(network, family);
  std::vector<Belief> next(network.size());
  for (AgentIndex a = 0; a < network.size(); ++a) next[a] = family.evaluate(network, profile, a);
  return BeliefProfile(std::move(next));
}

BeliefProfile apply_group(const Network& network, const FunctionFamily& family,
                          const BeliefProfile& profile, const AgentGroup& group) {
  require_profile_for(network, profile);
  require_family_for(network, family);
  if (!group.empty() && group.members().back() >= network.size()) {
    throw DomainError("group contains agent index " + std::to_string(group.members().back()) +
                      " outside the network");
  }
  BeliefProfile next = profile;
  for (AgentIndex a : group.members()) next.set(a, family.evaluate(network, profile, a));
  return next;
}

std::uint64_t disagreement_mask(const Network& network, const FunctionFamily& family,
                                const BeliefProfile& profile) {
  require_profile_for(network, profile);
  require_family_for(network, family);
  if (network.size() > kMaxIndexedAgents) {
    throw DomainError("disagreement masks support at most 63 agents");
  }
  std::uint64_t mask = 0;
  for (AgentIndex a = 0; a < network.size(); ++a) {
    if (family.evaluate(network, profile, a) != profile[a]) mask |= agent_bit(network.size(), a);
  }
  return mask;
}

}  // namespace beliefnet
