#include "beliefnet/trace_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "beliefnet/errors.hpp"

namespace beliefnet {
namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kFormat = "beliefnet-trace/1";

Json group_json(const Network& network, const AgentGroup& group) {
  Json ids = Json::array();
  for (AgentIndex a : group.members()) ids.push_back(network.agent(a).str());
  return ids;
}

Json header_json(const TraceHeader& h) {
  Json agents = Json::array();
  for (const auto& id : h.network.agents()) agents.push_back(id.str());
  Json ties = Json::array();
  for (const auto& [from, to] : h.network.ties()) {
    ties.push_back(Json::array({h.network.agent(from).str(), h.network.agent(to).str()}));
  }
  Json j;
  j["record"] = "header";
  j["format"] = kFormat;
  j["mode"] = h.mode;
  j["network"] = h.network_source;
  j["agents"] = std::move(agents);
  j["ties"] = std::move(ties);
  j["function"] = h.family.describe(h.network);
  j["initial"] = h.initial.to_string();
  j["seed"] = h.seed ? Json(*h.seed) : Json(nullptr);
  j["probabilities"] = h.probabilities;
  j["max_steps"] = h.max_steps;
  return j;
}

Json outcome_json(const Outcome& outcome) {
  Json j;
  j["record"] = "outcome";
  if (const auto* c = std::get_if<Converged>(&outcome)) {
    j["kind"] = "converged";
    j["at_step"] = c->at_step;
    j["equilibrium"] = c->equilibrium.to_string();
  } else if (const auto* c = std::get_if<Cycled>(&outcome)) {
    j["kind"] = "cycled";
    j["preperiod"] = c->preperiod;
    j["period"] = c->period;
  } else {
    j["kind"] = "step_limit_reached";
  }
  return j;
}

}  // namespace

void write_trace(std::ostream& out, const TraceHeader& header, const Trace& trace) {
  out << header_json(header).dump() << '\n';
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    Json step;
    step["record"] = "step";
    step["step"] = i + 1;
    step["group"] = group_json(header.network, trace.steps[i].group);
    step["profile"] = trace.steps[i].profile.to_string();
    out << step.dump() << '\n';
  }
  out << outcome_json(trace.outcome).dump() << '\n';
}

std::string format_trace(const TraceHeader& header, const Trace& trace) {
  std::ostringstream out;
  write_trace(out, header, trace);
  return out.str();
}

TraceFile read_trace(std::istream& in, const std::string& source) {
  TraceFile file;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  bool have_outcome = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (have_outcome) throw ParseError(source, line_no, "record after the outcome record");
    try {
      const Json j = Json::parse(line);
      const std::string record = j.at("record").get<std::string>();
      if (record == "header") {
        if (have_header) throw ParseError(source, line_no, "second header record");
        if (j.at("format").get<std::string>() != kFormat) {
          throw ParseError(source, line_no, "unsupported trace format");
        }
        auto& h = file.header;
        h.mode = j.at("mode").get<std::string>();
        h.network_source = j.at("network").get<std::string>();
        std::vector<std::pair<std::string, std::string>> ties;
        for (const auto& tie : j.at("ties")) {
          ties.emplace_back(tie.at(0).get<std::string>(), tie.at(1).get<std::string>());
        }
        h.network = Network::build(j.at("agents").get<std::vector<std::string>>(), ties);
        h.family = family_from_description(j.at("function").get<std::string>(), h.network);
        h.initial = parse_profile_for(h.network, j.at("initial").get<std::string>());
        if (!j.at("seed").is_null()) h.seed = j.at("seed").get<std::uint64_t>();
        h.probabilities = j.at("probabilities").get<std::vector<double>>();
        h.max_steps = j.at("max_steps").get<std::size_t>();
        file.trace.initial = h.initial;
        have_header = true;
      } else if (record == "step") {
        if (!have_header) throw ParseError(source, line_no, "step before the header record");
        if (j.at("step").get<std::size_t>() != file.trace.steps.size() + 1) {
          throw ParseError(source, line_no, "step records out of order");
        }
        std::vector<AgentIndex> members;
        for (const auto& id : j.at("group")) {
          members.push_back(file.header.network.index_of(id.get<std::string>()));
        }
        file.trace.steps.push_back(
            TraceStep{AgentGroup(std::move(members)),
                      parse_profile_for(file.header.network, j.at("profile").get<std::string>())});
      } else if (record == "outcome") {
        if (!have_header) throw ParseError(source, line_no, "outcome before the header record");
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "converged") {
          file.trace.outcome =
              Converged{j.at("at_step").get<std::size_t>(),
                        parse_profile_for(file.header.network,
                                          j.at("equilibrium").get<std::string>())};
        } else if (kind == "cycled") {
          file.trace.outcome =
              Cycled{j.at("preperiod").get<std::size_t>(), j.at("period").get<std::size_t>()};
        } else if (kind == "step_limit_reached") {
          file.trace.outcome = StepLimitReached{};
        } else {
          throw ParseError(source, line_no, "unknown outcome kind '" + kind + "'");
        }
        have_outcome = true;
      } else {
        throw ParseError(source, line_no, "unknown record type '" + record + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(source, line_no, std::string("malformed trace record: ") + e.what());
    }
  }
  if (!have_header) throw ParseError(source, line_no + 1, "missing header record");
  if (!have_outcome) throw ParseError(source, line_no + 1, "missing outcome record");
  return file;
}

TraceFile load_trace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open trace file");
  return read_trace(in, path);
}

}  // namespace beliefnet
