#include "beliefnet/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "beliefnet/errors.hpp"
#include "text_util.hpp"

namespace beliefnet {
namespace {

std::string read_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, std::string("cannot open ") + what);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Schedule parse_schedule(std::string_view text, const Network& network, const std::string& source) {
  Schedule schedule;
  std::size_t line_no = 0;
  for (std::string_view raw : detail::split_lines(text)) {
    ++line_no;
    std::string_view line = detail::trim(raw);
    if (!line.empty() && line.front() == '#') continue;
    try {
      schedule.groups.push_back(AgentGroup::parse(line, network));
    } catch (const DomainError& e) {
      throw ParseError(source, line_no,
                       std::string(e.what()) + " (expected comma-separated agent ids)");
    }
  }
  return schedule;
}

Schedule load_schedule(const std::string& path, const Network& network) {
  return parse_schedule(read_file(path, "schedule file"), network, path);
}

std::string format_schedule(const Schedule& schedule, const Network& network) {
  std::string out;
  for (const auto& group : schedule.groups) out += group.to_string(network) + '\n';
  return out;
}

RandomActivation RandomActivation::uniform(const Network& network, double probability,
                                           std::uint64_t seed) {
  return RandomActivation{std::vector<double>(network.size(), probability), seed};
}

void validate_activation(const Network& network, const RandomActivation& activation) {
  if (activation.probabilities.size() != network.size()) {
    throw ConfigError("activation probabilities cover " +
                      std::to_string(activation.probabilities.size()) + " agents but the network has " +
                      std::to_string(network.size()));
  }
  for (AgentIndex a = 0; a < network.size(); ++a) {
    double p = activation.probabilities[a];
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ConfigError("activation probability for '" + network.agent(a).str() +
                        "' must lie in [0,1], got " + std::to_string(p));
    }
  }
}

bool every_group_possible(std::span<const double> probabilities) {
  return std::all_of(probabilities.begin(), probabilities.end(),
                     [](double p) { return p > 0.0 && p < 1.0; });
}

std::vector<double> parse_probabilities(std::string_view text, const Network& network,
                                        const std::string& source) {
  std::vector<std::optional<double>> assigned(network.size());
  std::size_t line_no = 0;
  for (std::string_view raw : detail::split_lines(text)) {
    ++line_no;
    std::string_view line = detail::trim(detail::strip_comment(raw));
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError(source, line_no, "expected 'agent: probability'");
    }
    auto id = detail::trim(line.substr(0, colon));
    auto value = detail::trim(line.substr(colon + 1));
    auto index = network.find(id);
    if (!index) throw ParseError(source, line_no, "unknown agent '" + std::string(id) + "'");
    if (assigned[*index]) {
      throw ParseError(source, line_no, "agent '" + std::string(id) + "' assigned twice");
    }
    double p = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), p);
    if (ec != std::errc() || ptr != value.data() + value.size() || !(p >= 0.0 && p <= 1.0)) {
      throw ParseError(source, line_no,
                       "expected a probability in [0,1], got '" + std::string(value) + "'");
    }
    assigned[*index] = p;
  }
  std::vector<double> probabilities;
  for (AgentIndex a = 0; a < network.size(); ++a) {
    if (!assigned[a]) {
      throw ParseError(source, line_no,
                       "agent '" + network.agent(a).str() + "' has no activation probability");
    }
    probabilities.push_back(*assigned[a]);
  }
  return probabilities;
}

std::vector<double> load_probabilities(const std::string& path, const Network& network) {
  return parse_probabilities(read_file(path, "probability file"), network, path);
}

AgentGroup ActivationSampler::draw(std::span<const double> probabilities) {
  std::vector<AgentIndex> members;
  for (AgentIndex a = 0; a < probabilities.size(); ++a) {
    // 53 high bits -> uniform double in [0,1).
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    if (u < probabilities[a]) members.push_back(a);
  }
  return AgentGroup(std::move(members));
}

std::string describe_outcome(const Outcome& outcome) {
  return std::visit(
      Overloaded{
          [](const Converged& c) {
            return "converged at_step=" + std::to_string(c.at_step) +
                   " equilibrium=" + c.equilibrium.to_string();
          },
          [](const Cycled& c) {
            return "cycled preperiod=" + std::to_string(c.preperiod) +
                   " period=" + std::to_string(c.period);
          },
          [](const StepLimitReached&) { return std::string("step_limit_reached"); },
      },
      outcome);
}

const BeliefProfile& Trace::profile_at(std::size_t step) const {
  if (step == 0) return initial;
  return steps.at(step - 1).profile;
}

const BeliefProfile& Trace::final_profile() const {
  return steps.empty() ? initial : steps.back().profile;
}

bool is_equilibrium(const Network& network, const FunctionFamily& family,
                    const BeliefProfile& profile) {
  require_profile_for(network, profile);
  require_family_for(network, family);
  for (AgentIndex a = 0; a < network.size(); ++a) {
    if (family.evaluate(network, profile, a) != profile[a]) return false;
  }
  return true;
}

std::optional<AgentGroup> unstable_group(const Network& network, const FunctionFamily& family,
                                         const BeliefProfile& profile, std::size_t max_agents) {
  const std::size_t n = network.size();
  if (n > max_agents) throw InfeasibleError("subset enumeration", n, max_agents);
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::size_t size = 0; size <= n; ++size) {
    // Within one size, descending masks are lexicographic member lists.
    for (std::uint64_t mask = count; mask-- > 0;) {
      if (static_cast<std::size_t>(std::popcount(mask)) != size) continue;
      auto group = AgentGroup::from_mask(n, mask);
      if (apply_group(network, family, profile, group) != profile) return group;
    }
  }
  return std::nullopt;
}

bool equilibrium_subset_equivalence(const Network& network, const FunctionFamily& family,
                                    const BeliefProfile& profile, std::size_t max_agents) {
  return !unstable_group(network, family, profile, max_agents).has_value();
}

std::size_t default_max_steps(std::size_t agents) {
  constexpr std::size_t kCap = 1'000'000;
  if (agents >= 18) return kCap;
  return std::min(kCap, std::max<std::size_t>(1000, std::size_t{4} << agents));
}

Trace run_synchronous(const Network& network, const FunctionFamily& family,
                      const BeliefProfile& initial, std::size_t max_steps) {
  if (max_steps < 1) throw ConfigError("max_steps must be at least 1");
  require_profile_for(network, initial);
  require_family_for(network, family);

  Trace trace;
  trace.initial = initial;
  std::map<BeliefProfile, std::size_t> first_seen{{initial, 0}};
  const AgentGroup everyone = AgentGroup::all(network.size());
  BeliefProfile current = initial;
  for (std::size_t step = 0;; ++step) {
    BeliefProfile next = apply_all(network, family, current);
    if (next == current) {
      trace.outcome = Converged{step, current};
      return trace;
    }
    if (step == max_steps) {
      trace.outcome = StepLimitReached{};
      return trace;
    }
    trace.steps.push_back(TraceStep{everyone, next});
    auto [it, inserted] = first_seen.emplace(next, step + 1);
    if (!inserted) {
      trace.outcome = Cycled{it->second, step + 1 - it->second};
      return trace;
    }
    current = std::move(next);
  }
}

Trace run_scheduled(const Network& network, const FunctionFamily& family,
                    const BeliefProfile& initial, const Schedule& schedule) {
  require_profile_for(network, initial);
  require_family_for(network, family);

  Trace trace;
  trace.initial = initial;
  if (is_equilibrium(network, family, initial)) {
    trace.outcome = Converged{0, initial};
    return trace;
  }
  BeliefProfile current = initial;
  for (const auto& group : schedule.groups) {
    current = apply_group(network, family, current, group);
    trace.steps.push_back(TraceStep{group, current});
    if (is_equilibrium(network, family, current)) {
      trace.outcome = Converged{trace.steps.size(), current};
      return trace;
    }
  }
  trace.outcome = StepLimitReached{};
  return trace;
}

Trace run_random(const Network& network, const FunctionFamily& family,
                 const BeliefProfile& initial, const RandomActivation& activation,
                 std::size_t max_steps) {
  require_profile_for(network, initial);
  require_family_for(network, family);
  validate_activation(network, activation);

  Trace trace;
  trace.initial = initial;
  if (is_equilibrium(network, family, initial)) {
    trace.outcome = Converged{0, initial};
    return trace;
  }
  ActivationSampler sampler(activation.seed);
  BeliefProfile current = initial;
  for (std::size_t step = 1; step <= max_steps; ++step) {
    AgentGroup group = sampler.draw(activation.probabilities);
    current = apply_group(network, family, current, group);
    trace.steps.push_back(TraceStep{std::move(group), current});
    if (is_equilibrium(network, family, current)) {
      trace.outcome = Converged{step, current};
      return trace;
    }
  }
  trace.outcome = StepLimitReached{};
  return trace;
}

std::vector<TraceIssue> verify_trace(const Network& network, const FunctionFamily& family,
                                     const Trace& trace) {
  std::vector<TraceIssue> issues;
  try {
    require_profile_for(network, trace.initial);
  } catch (const DomainError& e) {
    issues.push_back({0, e.what()});
    return issues;
  }
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& step = trace.steps[i];
    try {
      auto expected = apply_group(network, family, trace.profile_at(i), step.group);
      if (expected != step.profile) {
        issues.push_back({i + 1, "profile " + step.profile.to_string() + " but applying {" +
                                     step.group.to_string(network) + "} gives " +
                                     expected.to_string()});
      }
    } catch (const DomainError& e) {
      issues.push_back({i + 1, e.what()});
    }
  }
  if (!issues.empty()) return issues;

  const std::size_t last = trace.steps.size();
  std::visit(Overloaded{
                 [&](const Converged& c) {
                   if (c.at_step != last) {
                     issues.push_back({c.at_step, "converged step " + std::to_string(c.at_step) +
                                                      " is not the last step " +
                                                      std::to_string(last)});
                   } else if (trace.profile_at(c.at_step) != c.equilibrium) {
                     issues.push_back({c.at_step, "recorded equilibrium differs from the profile"});
                   } else if (!is_equilibrium(network, family, c.equilibrium)) {
                     issues.push_back({c.at_step, "converged profile " +
                                                      c.equilibrium.to_string() +
                                                      " is not an equilibrium"});
                   }
                 },
                 [&](const Cycled& c) {
                   if (c.period == 0 || c.preperiod + c.period > last) {
                     issues.push_back({last, "cycle bounds exceed the trace"});
                   } else if (trace.profile_at(c.preperiod) !=
                              trace.profile_at(c.preperiod + c.period)) {
                     issues.push_back({c.preperiod + c.period,
                                       "profile does not repeat at preperiod + period"});
                   }
                 },
                 [](const StepLimitReached&) {},
             },
             trace.outcome);
  return issues;
}

}  // namespace beliefnet
