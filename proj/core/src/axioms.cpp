#include "beliefnet/axioms.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "beliefnet/errors.hpp"
#include "text_util.hpp"

namespace beliefnet {
namespace {

using Mask = std::uint64_t;

std::uint64_t full_mask(std::size_t n) { return n == 0 ? 0 : (~Mask{0} >> (64 - n)); }

void require_within(std::size_t agents, std::size_t limit, const char* what) {
  if (agents > limit) throw InfeasibleError(what, agents, limit);
}

// outputs[P] holds f_a(P) at agent_bit(n, a) for every profile index P.
std::vector<Mask> output_table(const Network& network, const FunctionFamily& family) {
  require_family_for(network, family);
  const std::size_t n = network.size();
  std::vector<Mask> outputs(std::size_t{1} << n);
  for (Mask p = 0; p < outputs.size(); ++p) {
    const auto profile = BeliefProfile::from_index(n, p);
    Mask out = 0;
    for (AgentIndex a = 0; a < n; ++a) {
      if (family.evaluate(network, profile, a) == Belief::believe) out |= agent_bit(n, a);
    }
    outputs[p] = out;
  }
  return outputs;
}

// Lowest agent index present in a nonzero mask.
AgentIndex first_agent(std::size_t n, Mask mask) {
  return static_cast<AgentIndex>(n - 1 - (63 - std::countl_zero(mask)));
}

Mask transport_index(std::size_t n, Mask p, const AgentMap& map) {
  Mask moved = 0;
  for (AgentIndex a = 0; a < n; ++a) {
    if (p & agent_bit(n, a)) moved |= agent_bit(n, map[a]);
  }
  return moved;
}

Mask neighborhood_mask(const Network& network, AgentIndex agent) {
  Mask m = 0;
  for (AgentIndex b : network.out_neighbors(agent)) m |= agent_bit(network.size(), b);
  return m;
}

AxiomWitness make_witness(std::vector<BeliefProfile> profiles, AgentIndex agent) {
  AxiomWitness w;
  w.profiles = std::move(profiles);
  w.agent = agent;
  return w;
}

AxiomReport fail(Axiom axiom, AxiomWitness witness) {
  return AxiomReport{axiom, false, std::move(witness)};
}

BeliefProfile profile_at(std::size_t n, Mask p) { return BeliefProfile::from_index(n, p); }

AxiomReport congruence_over(const Network& network, const FunctionFamily& family,
                            const Network& other, const FunctionFamily& other_family,
                            const std::vector<AgentMap>& maps) {
  const std::size_t n = network.size();
  const auto outputs = output_table(network, family);
  const auto other_outputs = &network == &other ? outputs : output_table(other, other_family);
  for (const auto& map : maps) {
    for (Mask p = 0; p < outputs.size(); ++p) {
      const Mask image = other_outputs[transport_index(n, p, map)];
      for (AgentIndex a = 0; a < n; ++a) {
        const bool mine = outputs[p] & agent_bit(n, a);
        const bool theirs = image & agent_bit(n, map[a]);
        if (mine != theirs) {
          auto w = make_witness({profile_at(n, p)}, a);
          w.mapping = map;
          return fail(Axiom::congruent, std::move(w));
        }
      }
    }
  }
  return AxiomReport{Axiom::congruent, true, std::nullopt};
}

}  // namespace

std::string_view to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::bounded:
      return "bounded";
    case Axiom::neutral:
      return "neutral";
    case Axiom::congruent:
      return "congruent";
    case Axiom::local:
      return "local";
    case Axiom::monotonic:
      return "monotonic";
    case Axiom::non_slavish:
      return "non_slavish";
  }
  return "?";
}

Axiom parse_axiom(std::string_view name) {
  name = detail::trim(name);
  for (Axiom axiom : kAllAxioms) {
    if (to_string(axiom) == name) return axiom;
  }
  if (name == "non-slavish") return Axiom::non_slavish;
  throw ConfigError("unknown axiom '" + std::string(name) +
                    "' (expected bounded, neutral, congruent, local, monotonic, non_slavish)");
}

std::vector<Axiom> parse_axiom_list(std::string_view list) {
  list = detail::trim(list);
  if (list == "all") return {std::begin(kAllAxioms), std::end(kAllAxioms)};
  std::vector<Axiom> axioms;
  for (auto token : detail::split(list, ',')) {
    Axiom axiom = parse_axiom(token);
    if (std::find(axioms.begin(), axioms.end(), axiom) == axioms.end()) axioms.push_back(axiom);
  }
  return axioms;
}

AxiomReport check_bounded(const Network& network, const FunctionFamily& family,
                          const ExhaustiveLimits& limits) {
  const std::size_t n = network.size();
  require_within(n, limits.profile_agents, "bounded check");
  const auto outputs = output_table(network, family);
  const Mask full = full_mask(n);
  for (Mask p = 0; p < outputs.size(); ++p) {
    // min = max only on the two consensus profiles; elsewhere [0,1] admits anything.
    Mask bad = 0;
    if (p == 0) bad = outputs[p];
    if (p == full) bad = ~outputs[p] & full;
    if (bad) {
      return fail(Axiom::bounded, make_witness({profile_at(n, p)}, first_agent(n, bad)));
    }
  }
  return AxiomReport{Axiom::bounded, true, std::nullopt};
}

AxiomReport check_neutral(const Network& network, const FunctionFamily& family,
                          const ExhaustiveLimits& limits) {
  const std::size_t n = network.size();
  require_within(n, limits.profile_agents, "neutral check");
  const auto outputs = output_table(network, family);
  const Mask full = full_mask(n);
  for (Mask p = 0; p < outputs.size(); ++p) {
    const Mask expected = ~outputs[p] & full;
    const Mask bad = outputs[~p & full] ^ expected;
    if (bad) {
      return fail(Axiom::neutral, make_witness({profile_at(n, p)}, first_agent(n, bad)));
    }
  }
  return AxiomReport{Axiom::neutral, true, std::nullopt};
}

AxiomReport check_congruent(const Network& network, const FunctionFamily& family,
                            const ExhaustiveLimits& limits) {
  require_within(network.size(), limits.profile_agents, "congruent check");
  auto maps = find_isomorphisms(network, network, limits.isomorphism_agents);
  return congruence_over(network, family, network, family, maps);
}

AxiomReport check_congruent(const Network& network, const FunctionFamily& family,
                            const Network& other, const FunctionFamily& other_family,
                            const ExhaustiveLimits& limits) {
  require_within(network.size(), limits.profile_agents, "congruent check");
  require_family_for(other, other_family);
  auto maps = find_isomorphisms(network, other, limits.isomorphism_agents);
  return congruence_over(network, family, other, other_family, maps);
}

AxiomReport check_local(const Network& network, const FunctionFamily& family,
                        const ExhaustiveLimits& limits) {
  const std::size_t n = network.size();
  require_within(n, limits.profile_agents, "local check");
  const auto outputs = output_table(network, family);
  constexpr Mask kUnseen = ~Mask{0};
  std::vector<Mask> first_seen(outputs.size());
  for (AgentIndex a = 0; a < n; ++a) {
    const Mask hood = neighborhood_mask(network, a);
    const Mask bit = agent_bit(n, a);
    std::fill(first_seen.begin(), first_seen.end(), kUnseen);
    for (Mask p = 0; p < outputs.size(); ++p) {
      Mask& seen = first_seen[p & hood];
      if (seen == kUnseen) {
        seen = p;
      } else if ((outputs[seen] & bit) != (outputs[p] & bit)) {
        return fail(Axiom::local, make_witness({profile_at(n, seen), profile_at(n, p)}, a));
      }
    }
  }
  return AxiomReport{Axiom::local, true, std::nullopt};
}

AxiomReport check_monotonic(const Network& network, const FunctionFamily& family,
                            const ExhaustiveLimits& limits) {
  const std::size_t n = network.size();
  require_within(n, limits.pair_agents, "monotonic check");
  const auto outputs = output_table(network, family);
  // Each agent independently takes (p,q) in {(0,0), (0,1), (1,1)}; the
  // base-3 counter has agent 0 as its most significant digit.
  std::vector<std::uint8_t> digits(n, 0);
  Mask p = 0;
  Mask q = 0;
  while (true) {
    const Mask bad = outputs[p] & ~outputs[q];
    if (bad) {
      return fail(Axiom::monotonic,
                  make_witness({profile_at(n, p), profile_at(n, q)}, first_agent(n, bad)));
    }
    bool advanced = false;
    for (std::size_t pos = n; pos-- > 0 && !advanced;) {
      const Mask bit = agent_bit(n, pos);
      if (digits[pos] == 0) {
        digits[pos] = 1;
        q |= bit;
        advanced = true;
      } else if (digits[pos] == 1) {
        digits[pos] = 2;
        p |= bit;
        advanced = true;
      } else {
        digits[pos] = 0;
        p &= ~bit;
        q &= ~bit;
      }
    }
    if (!advanced) return AxiomReport{Axiom::monotonic, true, std::nullopt};
  }
}

AxiomReport check_non_slavish(const Network& network, const FunctionFamily& family,
                              const ExhaustiveLimits& limits) {
  const std::size_t n = network.size();
  require_within(n, limits.profile_agents, "non_slavish check");
  const auto outputs = output_table(network, family);
  const Mask full = full_mask(n);
  for (AgentIndex a = 0; a < n; ++a) {
    const Mask bit = agent_bit(n, a);
    // Agents b with some profile where f_a(P) != P(b).
    Mask escaped = 0;
    for (Mask p = 0; p < outputs.size() && escaped != full; ++p) {
      escaped |= (outputs[p] & bit) ? (~p & full) : p;
    }
    if (escaped != full) {
      AxiomWitness w;
      w.agent = a;
      w.dominator = first_agent(n, ~escaped & full);
      return fail(Axiom::non_slavish, std::move(w));
    }
  }
  return AxiomReport{Axiom::non_slavish, true, std::nullopt};
}

AxiomReport check_axiom(Axiom axiom, const Network& network, const FunctionFamily& family,
                        const ExhaustiveLimits& limits) {
  switch (axiom) {
    case Axiom::bounded:
      return check_bounded(network, family, limits);
    case Axiom::neutral:
      return check_neutral(network, family, limits);
    case Axiom::congruent:
      return check_congruent(network, family, limits);
    case Axiom::local:
      return check_local(network, family, limits);
    case Axiom::monotonic:
      return check_monotonic(network, family, limits);
    case Axiom::non_slavish:
      return check_non_slavish(network, family, limits);
  }
  throw ConfigError("unknown axiom");
}

std::vector<AxiomReport> check_axioms(const Network& network, const FunctionFamily& family,
                                      std::span<const Axiom> axioms,
                                      const ExhaustiveLimits& limits) {
  std::vector<AxiomReport> reports;
  reports.reserve(axioms.size());
  for (Axiom axiom : axioms) reports.push_back(check_axiom(axiom, network, family, limits));
  return reports;
}

bool reproduces_violation(const Network& network, const FunctionFamily& family,
                          const AxiomReport& report) {
  if (report.holds || !report.witness) return false;
  const AxiomWitness& w = *report.witness;
  const std::size_t n = network.size();
  if (w.agent >= n) return false;
  auto f = [&](const BeliefProfile& p) {
    require_profile_for(network, p);
    return family.evaluate(network, p, w.agent);
  };
  auto profile_count_is = [&](std::size_t count) { return w.profiles.size() == count; };

  switch (report.axiom) {
    case Axiom::bounded: {
      if (!profile_count_is(1)) return false;
      const auto& p = w.profiles[0];
      auto [lo, hi] = std::minmax_element(p.beliefs().begin(), p.beliefs().end());
      const int v = as_int(f(p));
      return v < as_int(*lo) || v > as_int(*hi);
    }
    case Axiom::neutral: {
      if (!profile_count_is(1)) return false;
      const auto& p = w.profiles[0];
      return f(flip_profile(p)) != opposite(f(p));
    }
    case Axiom::congruent: {
      if (!profile_count_is(1) || !w.mapping || w.mapping->size() != n) return false;
      const auto& map = *w.mapping;
      for (const auto& [from, to] : network.ties()) {
        if (!network.has_tie(map[from], map[to])) return false;
      }
      const auto& p = w.profiles[0];
      return f(p) != family.evaluate(network, transport(p, map), map[w.agent]);
    }
    case Axiom::local: {
      if (!profile_count_is(2)) return false;
      const auto& p = w.profiles[0];
      const auto& q = w.profiles[1];
      for (AgentIndex b : network.out_neighbors(w.agent)) {
        if (p.at(b) != q.at(b)) return false;
      }
      return f(p) != f(q);
    }
    case Axiom::monotonic: {
      if (!profile_count_is(2)) return false;
      const auto& p = w.profiles[0];
      const auto& q = w.profiles[1];
      return profile_leq(p, q) && as_int(f(p)) > as_int(f(q));
    }
    case Axiom::non_slavish: {
      if (!w.dominator || *w.dominator >= n || n > kMaxIndexedAgents) return false;
      for (std::uint64_t index = 0; index < (std::uint64_t{1} << n); ++index) {
        const auto p = BeliefProfile::from_index(n, index);
        if (f(p) != p[*w.dominator]) return false;
      }
      return true;
    }
  }
  return false;
}

std::string render_witness(const Network& network, const FunctionFamily& family,
                           const AxiomReport& report) {
  if (report.holds || !report.witness) return "-";
  const AxiomWitness& w = *report.witness;
  const auto& agent = network.agent(w.agent).str();
  auto value = [&](const BeliefProfile& p, AgentIndex a) {
    return std::to_string(as_int(family.evaluate(network, p, a)));
  };
  std::string out;
  switch (report.axiom) {
    case Axiom::bounded:
      out = "P=" + w.profiles[0].to_string() + " agent=" + agent +
            " f(P)=" + value(w.profiles[0], w.agent);
      break;
    case Axiom::neutral: {
      const auto flipped = flip_profile(w.profiles[0]);
      out = "P=" + w.profiles[0].to_string() + " agent=" + agent +
            " f(P)=" + value(w.profiles[0], w.agent) + " f(~P)=" + value(flipped, w.agent);
      break;
    }
    case Axiom::congruent: {
      const auto& map = *w.mapping;
      const auto moved = transport(w.profiles[0], map);
      std::string mapping;
      for (AgentIndex a = 0; a < map.size(); ++a) {
        if (a) mapping += ',';
        mapping += network.agent(a).str() + "->" + network.agent(map[a]).str();
      }
      out = "P=" + w.profiles[0].to_string() + " agent=" + agent + " map=" + mapping +
            " f(P)=" + value(w.profiles[0], w.agent) + " P'=" + moved.to_string() +
            " f'(P')=" + value(moved, map[w.agent]);
      break;
    }
    case Axiom::local:
    case Axiom::monotonic:
      out = "P=" + w.profiles[0].to_string() + " Q=" + w.profiles[1].to_string() +
            " agent=" + agent + " f(P)=" + value(w.profiles[0], w.agent) +
            " f(Q)=" + value(w.profiles[1], w.agent);
      break;
    case Axiom::non_slavish:
      out = "agent=" + agent + " dominated_by=" + network.agent(*w.dominator).str();
      break;
  }
  return out;
}

}  // namespace beliefnet
