#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

namespace beliefnet::cli {

// Everything a CLI invocation depends on. Serialized into every output so
// a result can be rerun from its own header.
struct ExperimentConfig {
  std::string command;  // simulate | analyze | verify | construct-sequence | sweep | replay

  std::string network;
  std::string network_dir;
  std::string function = "majority";
  std::string functions_file;

  std::string mode;  // sync | scheduled | random
  std::string initial;
  std::string schedule;
  std::optional<double> prob;
  std::string probs_file;
  std::uint64_t seed = 0;
  std::optional<std::size_t> max_steps;
  std::string trace;

  std::string axioms = "all";

  bool equilibria = false;
  std::string transition_graph;
  std::string condensation;
  std::string reachable_from;
  std::string construct_sequence;
  bool decreasing_first = false;

  std::string axis;  // seeds | profiles | networks
  std::uint64_t seed_start = 0;
  std::size_t seed_count = 0;
  std::size_t workers = 0;  // 0: default worker count

  bool operator==(const ExperimentConfig&) const = default;
};

// Single-line JSON with a fixed key order.
std::string to_json(const ExperimentConfig& config);
// Throws std::invalid_argument on malformed input.
ExperimentConfig config_from_json(const std::string& text);

}  // namespace beliefnet::cli
