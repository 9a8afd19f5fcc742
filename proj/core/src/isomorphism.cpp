#include "beliefnet/isomorphism.hpp"

#include <algorithm>
#include <numeric>

#include "beliefnet/errors.hpp"

namespace beliefnet {

std::vector<AgentMap> find_isomorphisms(const Network& from, const Network& to,
                                        std::size_t max_agents) {
  if (from.size() > max_agents) {
    throw InfeasibleError("isomorphism search", from.size(), max_agents);
  }
  std::vector<AgentMap> result;
  if (from.size() != to.size() || from.tie_count() != to.tie_count()) return result;

  const auto ties = from.ties();
  AgentMap candidate = identity_map(from.size());
  do {
    // Equal tie counts plus an injective image of every tie gives both directions.
    bool preserves = std::all_of(ties.begin(), ties.end(), [&](const auto& tie) {
      return to.has_tie(candidate[tie.first], candidate[tie.second]);
    });
    if (preserves) result.push_back(candidate);
  } while (std::next_permutation(candidate.begin(), candidate.end()));
  return result;
}

AgentMap identity_map(std::size_t agents) {
  AgentMap map(agents);
  std::iota(map.begin(), map.end(), AgentIndex{0});
  return map;
}

AgentMap compose(const AgentMap& outer, const AgentMap& inner) {
  AgentMap result(inner.size());
  for (AgentIndex a = 0; a < inner.size(); ++a) result[a] = outer.at(inner[a]);
  return result;
}

AgentMap inverse(const AgentMap& map) {
  AgentMap result(map.size());
  for (AgentIndex a = 0; a < map.size(); ++a) result.at(map[a]) = a;
  return result;
}

BeliefProfile transport(const BeliefProfile& profile, const AgentMap& map) {
  if (map.size() != profile.size()) {
    throw DomainError("agent map and profile sizes differ");
  }
  std::vector<Belief> moved(profile.size());
  for (AgentIndex a = 0; a < map.size(); ++a) moved.at(map[a]) = profile[a];
  return BeliefProfile(std::move(moved));
}

}  // namespace beliefnet
