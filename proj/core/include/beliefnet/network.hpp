#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace beliefnet {

using AgentIndex = std::size_t;

// Agent name: a non-empty token without whitespace, commas, colons or '#'.
class AgentId {
 public:
  explicit AgentId(std::string value);

  const std::string& str() const { return value_; }
  auto operator<=>(const AgentId&) const = default;

  static bool is_valid(std::string_view value);

 private:
  std::string value_;
};

// Directed graph of agents. Agents are kept in lexicographic order of their
// ids; that order defines the agent index and every bitstring position.
// Every agent carries a self-loop. Immutable once built.
class Network {
 public:
  using Tie = std::pair<AgentId, AgentId>;

  Network() = default;

  // Throws DomainError on duplicate agents or a tie with an undeclared
  // endpoint. Missing self-loops are added; their agents are appended to
  // `added_self_loops` when it is non-null.
  static Network build(std::vector<AgentId> agents, const std::vector<Tie>& ties,
                       std::vector<AgentId>* added_self_loops = nullptr);

  // Same, over raw strings; ids are validated.
  static Network build(const std::vector<std::string>& agents,
                       const std::vector<std::pair<std::string, std::string>>& ties,
                       std::vector<AgentId>* added_self_loops = nullptr);

  std::size_t size() const { return agents_.size(); }
  const std::vector<AgentId>& agents() const { return agents_; }
  const AgentId& agent(AgentIndex index) const { return agents_.at(index); }

  std::optional<AgentIndex> find(std::string_view id) const;
  // Throws DomainError for an unknown id.
  AgentIndex index_of(std::string_view id) const;

  // Sorted; always contains `agent` itself.
  std::span<const AgentIndex> out_neighbors(AgentIndex agent) const {
    return out_.at(agent);
  }
  std::size_t out_degree(AgentIndex agent) const { return out_.at(agent).size(); }
  bool has_tie(AgentIndex from, AgentIndex to) const;

  std::size_t tie_count() const;
  // (from, to) index pairs in lexicographic order.
  std::vector<std::pair<AgentIndex, AgentIndex>> ties() const;

  bool operator==(const Network&) const = default;

 private:
  std::vector<AgentId> agents_;
  std::vector<std::vector<AgentIndex>> out_;
};

struct NetworkParse {
  Network network;
  std::vector<std::string> warnings;
};

// Line-oriented text: `agents: a,b,c` first, then `edge: from to` lines.
// Blank lines and '#' comments are ignored. Throws ParseError.
NetworkParse parse_network(std::string_view text, const std::string& source = "<network>");
NetworkParse load_network(const std::string& path);

// Canonical text: sorted agents, every tie (self-loops included) in
// lexicographic order. parse_network(format_network(n)).network == n.
std::string format_network(const Network& network);

}  // namespace beliefnet
