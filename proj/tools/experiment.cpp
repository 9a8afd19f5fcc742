#include "experiment.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

namespace beliefnet::cli {

using Json = nlohmann::ordered_json;

std::string to_json(const ExperimentConfig& c) {
  Json j;
  j["command"] = c.command;
  j["network"] = c.network;
  j["network_dir"] = c.network_dir;
  j["function"] = c.function;
  j["functions_file"] = c.functions_file;
  j["mode"] = c.mode;
  j["initial"] = c.initial;
  j["schedule"] = c.schedule;
  j["prob"] = c.prob ? Json(*c.prob) : Json(nullptr);
  j["probs_file"] = c.probs_file;
  j["seed"] = c.seed;
  j["max_steps"] = c.max_steps ? Json(*c.max_steps) : Json(nullptr);
  j["trace"] = c.trace;
  j["axioms"] = c.axioms;
  j["equilibria"] = c.equilibria;
  j["transition_graph"] = c.transition_graph;
  j["condensation"] = c.condensation;
  j["reachable_from"] = c.reachable_from;
  j["construct_sequence"] = c.construct_sequence;
  j["decreasing_first"] = c.decreasing_first;
  j["axis"] = c.axis;
  j["seed_start"] = c.seed_start;
  j["seed_count"] = c.seed_count;
  j["workers"] = c.workers;
  return j.dump();
}

ExperimentConfig config_from_json(const std::string& text) {
  try {
    const Json j = Json::parse(text);
    ExperimentConfig c;
    c.command = j.at("command").get<std::string>();
    c.network = j.at("network").get<std::string>();
    c.network_dir = j.at("network_dir").get<std::string>();
    c.function = j.at("function").get<std::string>();
    c.functions_file = j.at("functions_file").get<std::string>();
    c.mode = j.at("mode").get<std::string>();
    c.initial = j.at("initial").get<std::string>();
    c.schedule = j.at("schedule").get<std::string>();
    if (!j.at("prob").is_null()) c.prob = j.at("prob").get<double>();
    c.probs_file = j.at("probs_file").get<std::string>();
    c.seed = j.at("seed").get<std::uint64_t>();
    if (!j.at("max_steps").is_null()) c.max_steps = j.at("max_steps").get<std::size_t>();
    c.trace = j.at("trace").get<std::string>();
    c.axioms = j.at("axioms").get<std::string>();
    c.equilibria = j.at("equilibria").get<bool>();
    c.transition_graph = j.at("transition_graph").get<std::string>();
    c.condensation = j.at("condensation").get<std::string>();
    c.reachable_from = j.at("reachable_from").get<std::string>();
    c.construct_sequence = j.at("construct_sequence").get<std::string>();
    c.decreasing_first = j.at("decreasing_first").get<bool>();
    c.axis = j.at("axis").get<std::string>();
    c.seed_start = j.at("seed_start").get<std::uint64_t>();
    c.seed_count = j.at("seed_count").get<std::size_t>();
    c.workers = j.at("workers").get<std::size_t>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed experiment config: ") + e.what());
  }
}

}  // namespace beliefnet::cli
