#include "beliefnet/profile.hpp"

#include <algorithm>

#include "beliefnet/errors.hpp"

namespace beliefnet {

BeliefProfile BeliefProfile::uniform(std::size_t agents, Belief value) {
  return BeliefProfile(std::vector<Belief>(agents, value));
}

BeliefProfile BeliefProfile::from_index(std::size_t agents, std::uint64_t index) {
  if (agents > kMaxIndexedAgents) {
    throw DomainError("profile index supports at most " + std::to_string(kMaxIndexedAgents) +
                      " agents");
  }
  if (agents < 64 && (index >> agents) != 0) {
    throw DomainError("profile index " + std::to_string(index) + " out of range for " +
                      std::to_string(agents) + " agents");
  }
  std::vector<Belief> beliefs(agents);
  for (AgentIndex a = 0; a < agents; ++a) {
    beliefs[a] = belief_of((index & agent_bit(agents, a)) != 0);
  }
  return BeliefProfile(std::move(beliefs));
}

BeliefProfile BeliefProfile::parse(std::string_view bits) {
  std::vector<Belief> beliefs;
  beliefs.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw DomainError("invalid belief bitstring '" + std::string(bits) +
                        "': expected only '0' and '1'");
    }
    beliefs.push_back(belief_of(c == '1'));
  }
  return BeliefProfile(std::move(beliefs));
}

Belief BeliefProfile::at(AgentIndex agent) const {
  if (agent >= beliefs_.size()) {
    throw DomainError("agent index " + std::to_string(agent) + " outside profile of size " +
                      std::to_string(beliefs_.size()));
  }
  return beliefs_[agent];
}

std::size_t BeliefProfile::count_believers() const {
  return static_cast<std::size_t>(std::count(beliefs_.begin(), beliefs_.end(), Belief::believe));
}

std::uint64_t BeliefProfile::index() const {
  if (size() > kMaxIndexedAgents) {
    throw DomainError("profile index supports at most " + std::to_string(kMaxIndexedAgents) +
                      " agents");
  }
  std::uint64_t index = 0;
  for (Belief b : beliefs_) index = (index << 1) | static_cast<std::uint64_t>(b);
  return index;
}

std::string BeliefProfile::to_string() const {
  std::string out;
  out.reserve(beliefs_.size());
  for (Belief b : beliefs_) out.push_back(b == Belief::believe ? '1' : '0');
  return out;
}

void require_profile_for(const Network& network, const BeliefProfile& profile) {
  if (profile.size() != network.size()) {
    throw DomainError("profile has " + std::to_string(profile.size()) +
                      " beliefs but the network has " + std::to_string(network.size()) +
                      " agents");
  }
}

BeliefProfile parse_profile_for(const Network& network, std::string_view bits) {
  if (bits.size() != network.size()) {
    throw DomainError("profile length mismatch: '" + std::string(bits) + "' has " +
                      std::to_string(bits.size()) + " bits but the network has " +
                      std::to_string(network.size()) + " agents");
  }
  return BeliefProfile::parse(bits);
}

BeliefProfile flip_profile(const BeliefProfile& profile) {
  std::vector<Belief> flipped(profile.beliefs().begin(), profile.beliefs().end());
  for (auto& b : flipped) b = opposite(b);
  return BeliefProfile(std::move(flipped));
}

bool profile_leq(const BeliefProfile& lhs, const BeliefProfile& rhs) {
  if (lhs.size() != rhs.size()) {
    throw DomainError("cannot compare profiles over different networks (" +
                      std::to_string(lhs.size()) + " vs " + std::to_string(rhs.size()) +
                      " agents)");
  }
  for (AgentIndex a = 0; a < lhs.size(); ++a) {
    if (as_int(lhs[a]) > as_int(rhs[a])) return false;
  }
  return true;
}

bool is_consensus(const BeliefProfile& profile) {
  auto beliefs = profile.beliefs();
  return std::adjacent_find(beliefs.begin(), beliefs.end(), std::not_equal_to<>()) ==
         beliefs.end();
}

}  // namespace beliefnet
