#pragma once

#include <cstddef>
#include <vector>

#include "beliefnet/network.hpp"
#include "beliefnet/profile.hpp"

namespace beliefnet {

// Bijection between agent index sets: map[a] is the image of agent a.
using AgentMap = std::vector<AgentIndex>;

inline constexpr std::size_t kDefaultIsomorphismLimit = 8;

// All bijections agents(from) -> agents(to) that preserve ties in both
// directions, in lexicographic order of the image sequence. Brute force over
// permutations; throws InfeasibleError above `max_agents`.
std::vector<AgentMap> find_isomorphisms(const Network& from, const Network& to,
                                        std::size_t max_agents = kDefaultIsomorphismLimit);

AgentMap identity_map(std::size_t agents);
// (outer o inner)(a) = outer[inner[a]]
AgentMap compose(const AgentMap& outer, const AgentMap& inner);
AgentMap inverse(const AgentMap& map);

// The profile P o map^-1: the result gives map[a] the belief that `profile`
// gives a.
BeliefProfile transport(const BeliefProfile& profile, const AgentMap& map);

}  // namespace beliefnet
