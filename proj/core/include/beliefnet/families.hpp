#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "beliefnet/network.hpp"

namespace beliefnet::families {

// Built-in network families. Undirected edges become ties in both
// directions; every agent has its self-loop.

// a, b, c, ... for up to 26 agents, then v00, v01, ... zero-padded.
std::vector<std::string> agent_names(std::size_t count);

Network isolated(std::size_t agents);
Network path(std::size_t agents);
Network cycle(std::size_t agents);
Network complete(std::size_t agents);
// Center "c" with leaves "l1".."lk" (zero-padded past 9).
Network star(std::size_t leaves);
// Sides "a1".."am" and "b1".."bk", every cross pair tied both ways.
Network complete_bipartite(std::size_t left, std::size_t right);

// Every directed network with self-loops on `agents` named agents:
// 2^(n(n-1)) of them, visited in order of the off-diagonal tie mask.
std::size_t network_count(std::size_t agents);
Network network_from_mask(std::size_t agents, std::uint64_t tie_mask);
void for_each_network(std::size_t agents, const std::function<void(const Network&)>& visit);

}  // namespace beliefnet::families
