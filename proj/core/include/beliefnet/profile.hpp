#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "beliefnet/network.hpp"

namespace beliefnet {

enum class Belief : std::uint8_t { disbelieve = 0, believe = 1 };

constexpr Belief opposite(Belief b) {
  return b == Belief::believe ? Belief::disbelieve : Belief::believe;
}
constexpr int as_int(Belief b) { return static_cast<int>(b); }
constexpr Belief belief_of(bool value) { return value ? Belief::believe : Belief::disbelieve; }

// Largest agent count whose profiles fit a 64-bit index.
inline constexpr std::size_t kMaxIndexedAgents = 63;

// Bit of agent `agent` in a profile index or agent mask over `n` agents.
// Agent 0 is the most significant bit, so ascending index order is the
// lexicographic order of the bitstrings.
constexpr std::uint64_t agent_bit(std::size_t n, AgentIndex agent) {
  return std::uint64_t{1} << (n - 1 - agent);
}

// Total map from agents (by canonical index) to {0,1}.
class BeliefProfile {
 public:
  BeliefProfile() = default;
  explicit BeliefProfile(std::vector<Belief> beliefs) : beliefs_(std::move(beliefs)) {}

  static BeliefProfile uniform(std::size_t agents, Belief value);
  // Throws DomainError when agents > kMaxIndexedAgents or index is out of range.
  static BeliefProfile from_index(std::size_t agents, std::uint64_t index);
  // Bitstring of '0'/'1'. Throws DomainError on any other character.
  static BeliefProfile parse(std::string_view bits);

  std::size_t size() const { return beliefs_.size(); }
  Belief operator[](AgentIndex agent) const { return beliefs_[agent]; }
  // Throws DomainError when agent is out of range.
  Belief at(AgentIndex agent) const;
  void set(AgentIndex agent, Belief value) { beliefs_.at(agent) = value; }

  std::span<const Belief> beliefs() const { return beliefs_; }
  std::size_t count_believers() const;

  std::uint64_t index() const;
  std::string to_string() const;

  auto operator<=>(const BeliefProfile&) const = default;

 private:
  std::vector<Belief> beliefs_;
};

// Throws DomainError unless the profile covers exactly the network's agents.
void require_profile_for(const Network& network, const BeliefProfile& profile);

// Parses a bitstring and checks its length against the network.
BeliefProfile parse_profile_for(const Network& network, std::string_view bits);

BeliefProfile flip_profile(const BeliefProfile& profile);

// Pointwise order. Throws DomainError when the profiles differ in size.
bool profile_leq(const BeliefProfile& lhs, const BeliefProfile& rhs);

bool is_consensus(const BeliefProfile& profile);

}  // namespace beliefnet
