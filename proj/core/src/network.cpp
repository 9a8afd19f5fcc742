#include "beliefnet/network.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "beliefnet/errors.hpp"
#include "text_util.hpp"

namespace beliefnet {

AgentId::AgentId(std::string value) : value_(std::move(value)) {
  if (!is_valid(value_)) {
    throw DomainError("invalid agent id '" + value_ +
                      "': expected a non-empty token without whitespace, ',', ':' or '#'");
  }
}

bool AgentId::is_valid(std::string_view value) {
  if (value.empty()) return false;
  return std::none_of(value.begin(), value.end(), [](char c) {
    return c == ',' || c == ':' || c == '#' || detail::is_space(c);
  });
}

Network Network::build(std::vector<AgentId> agents, const std::vector<Tie>& ties,
                       std::vector<AgentId>* added_self_loops) {
  Network net;
  std::sort(agents.begin(), agents.end());
  if (auto dup = std::adjacent_find(agents.begin(), agents.end()); dup != agents.end()) {
    throw DomainError("duplicate agent '" + dup->str() + "'");
  }
  net.agents_ = std::move(agents);
  net.out_.assign(net.agents_.size(), {});

  for (const auto& [from, to] : ties) {
    auto f = net.find(from.str());
    auto t = net.find(to.str());
    if (!f) throw DomainError("tie endpoint '" + from.str() + "' is not a declared agent");
    if (!t) throw DomainError("tie endpoint '" + to.str() + "' is not a declared agent");
    net.out_[*f].push_back(*t);
  }
  for (AgentIndex a = 0; a < net.out_.size(); ++a) {
    auto& out = net.out_[a];
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    if (!std::binary_search(out.begin(), out.end(), a)) {
      out.insert(std::lower_bound(out.begin(), out.end(), a), a);
      if (added_self_loops) added_self_loops->push_back(net.agents_[a]);
    }
  }
  return net;
}

Network Network::build(const std::vector<std::string>& agents,
                       const std::vector<std::pair<std::string, std::string>>& ties,
                       std::vector<AgentId>* added_self_loops) {
  std::vector<AgentId> ids;
  ids.reserve(agents.size());
  for (const auto& a : agents) ids.emplace_back(a);
  std::vector<Tie> typed;
  typed.reserve(ties.size());
  for (const auto& [from, to] : ties) typed.emplace_back(AgentId(from), AgentId(to));
  return build(std::move(ids), typed, added_self_loops);
}

std::optional<AgentIndex> Network::find(std::string_view id) const {
  auto it = std::lower_bound(agents_.begin(), agents_.end(), id,
                             [](const AgentId& a, std::string_view v) { return a.str() < v; });
  if (it == agents_.end() || it->str() != id) return std::nullopt;
  return static_cast<AgentIndex>(it - agents_.begin());
}

AgentIndex Network::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw DomainError("unknown agent '" + std::string(id) + "'");
}

bool Network::has_tie(AgentIndex from, AgentIndex to) const {
  const auto& out = out_.at(from);
  return std::binary_search(out.begin(), out.end(), to);
}

std::size_t Network::tie_count() const {
  std::size_t count = 0;
  for (const auto& out : out_) count += out.size();
  return count;
}

std::vector<std::pair<AgentIndex, AgentIndex>> Network::ties() const {
  std::vector<std::pair<AgentIndex, AgentIndex>> result;
  result.reserve(tie_count());
  for (AgentIndex a = 0; a < out_.size(); ++a) {
    for (AgentIndex b : out_[a]) result.emplace_back(a, b);
  }
  return result;
}

NetworkParse parse_network(std::string_view text, const std::string& source) {
  std::vector<AgentId> agents;
  std::vector<Network::Tie> ties;
  bool have_agents = false;
  std::size_t line_no = 0;

  for (std::string_view raw : detail::split_lines(text)) {
    ++line_no;
    std::string_view line = detail::trim(detail::strip_comment(raw));
    if (line.empty()) continue;

    auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError(source, line_no, "expected 'agents: ...' or 'edge: FROM TO'");
    }
    std::string_view key = detail::trim(line.substr(0, colon));
    std::string_view value = detail::trim(line.substr(colon + 1));

    if (key == "agents") {
      if (have_agents) throw ParseError(source, line_no, "'agents:' declared twice");
      have_agents = true;
      for (std::string_view token : detail::split(value, ',')) {
        token = detail::trim(token);
        if (!AgentId::is_valid(token)) {
          throw ParseError(source, line_no,
                           "invalid agent id '" + std::string(token) +
                               "' in agent list (expected comma-separated ids)");
        }
        agents.emplace_back(std::string(token));
      }
    } else if (key == "edge") {
      if (!have_agents) {
        throw ParseError(source, line_no, "'edge:' before the 'agents:' line");
      }
      auto tokens = detail::split_whitespace(value);
      if (tokens.size() != 2 || !AgentId::is_valid(tokens[0]) || !AgentId::is_valid(tokens[1])) {
        throw ParseError(source, line_no, "expected 'edge: FROM TO' with two agent ids");
      }
      ties.emplace_back(AgentId(std::string(tokens[0])), AgentId(std::string(tokens[1])));
    } else {
      throw ParseError(source, line_no, "unknown record '" + std::string(key) +
                                            "' (expected 'agents' or 'edge')");
    }
  }
  if (!have_agents) throw ParseError(source, line_no, "missing 'agents:' line");
  if (agents.empty()) throw ParseError(source, line_no, "network has no agents");

  NetworkParse result;
  std::vector<AgentId> added;
  try {
    result.network = Network::build(std::move(agents), ties, &added);
  } catch (const DomainError& e) {
    throw ParseError(source, line_no, e.what());
  }
  if (!added.empty()) {
    std::string names;
    for (const auto& id : added) names += (names.empty() ? "" : ",") + id.str();
    result.warnings.push_back(source + ": added missing self-loops for " + names);
  }
  return result;
}

NetworkParse load_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open network file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_network(buffer.str(), path);
}

std::string format_network(const Network& network) {
  std::string out = "agents: ";
  for (AgentIndex a = 0; a < network.size(); ++a) {
    if (a) out += ',';
    out += network.agent(a).str();
  }
  out += '\n';
  for (const auto& [from, to] : network.ties()) {
    out += "edge: " + network.agent(from).str() + ' ' + network.agent(to).str() + '\n';
  }
  return out;
}

}  // namespace beliefnet
