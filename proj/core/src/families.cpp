#include "beliefnet/families.hpp"

#include <cstdint>

#include "beliefnet/errors.hpp"

namespace beliefnet::families {
namespace {

std::string padded(const std::string& prefix, std::size_t value, std::size_t width) {
  std::string digits = std::to_string(value);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return prefix + digits;
}

std::size_t width_for(std::size_t max_value) { return std::to_string(max_value).size(); }

using Edges = std::vector<std::pair<std::string, std::string>>;

void add_undirected(Edges& edges, const std::string& a, const std::string& b) {
  edges.emplace_back(a, b);
  edges.emplace_back(b, a);
}

}  // namespace

std::vector<std::string> agent_names(std::size_t count) {
  std::vector<std::string> names;
  names.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (count <= 26) {
      names.emplace_back(1, static_cast<char>('a' + i));
    } else {
      names.push_back(padded("v", i, width_for(count - 1)));
    }
  }
  return names;
}

Network isolated(std::size_t agents) { return Network::build(agent_names(agents), {}); }

Network path(std::size_t agents) {
  auto names = agent_names(agents);
  Edges edges;
  for (std::size_t i = 0; i + 1 < agents; ++i) add_undirected(edges, names[i], names[i + 1]);
  return Network::build(names, edges);
}

Network cycle(std::size_t agents) {
  auto names = agent_names(agents);
  Edges edges;
  for (std::size_t i = 0; i < agents; ++i) {
    std::size_t j = (i + 1) % agents;
    if (j != i) add_undirected(edges, names[i], names[j]);
  }
  return Network::build(names, edges);
}

Network complete(std::size_t agents) {
  auto names = agent_names(agents);
  Edges edges;
  for (std::size_t i = 0; i < agents; ++i) {
    for (std::size_t j = 0; j < agents; ++j) edges.emplace_back(names[i], names[j]);
  }
  return Network::build(names, edges);
}

Network star(std::size_t leaves) {
  std::vector<std::string> names{"c"};
  Edges edges;
  for (std::size_t i = 1; i <= leaves; ++i) {
    names.push_back(padded("l", i, width_for(leaves)));
    add_undirected(edges, "c", names.back());
  }
  return Network::build(names, edges);
}

Network complete_bipartite(std::size_t left, std::size_t right) {
  std::vector<std::string> a, b;
  for (std::size_t i = 1; i <= left; ++i) a.push_back(padded("a", i, width_for(left)));
  for (std::size_t j = 1; j <= right; ++j) b.push_back(padded("b", j, width_for(right)));
  Edges edges;
  for (const auto& x : a) {
    for (const auto& y : b) add_undirected(edges, x, y);
  }
  std::vector<std::string> names = a;
  names.insert(names.end(), b.begin(), b.end());
  return Network::build(names, edges);
}

std::size_t network_count(std::size_t agents) {
  std::size_t off_diagonal = agents * (agents ? agents - 1 : 0);
  if (off_diagonal >= 63) {
    throw InfeasibleError("network enumeration", agents, 8);
  }
  return std::size_t{1} << off_diagonal;
}

Network network_from_mask(std::size_t agents, std::uint64_t tie_mask) {
  auto names = agent_names(agents);
  Edges edges;
  std::size_t bit = 0;
  for (std::size_t i = 0; i < agents; ++i) {
    for (std::size_t j = 0; j < agents; ++j) {
      if (i == j) continue;
      if (tie_mask & (std::uint64_t{1} << bit)) edges.emplace_back(names[i], names[j]);
      ++bit;
    }
  }
  return Network::build(names, edges);
}

void for_each_network(std::size_t agents, const std::function<void(const Network&)>& visit) {
  const std::size_t count = network_count(agents);
  for (std::uint64_t mask = 0; mask < count; ++mask) visit(network_from_mask(agents, mask));
}

}  // namespace beliefnet::families
