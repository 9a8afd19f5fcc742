#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "beliefnet/dynamics.hpp"
#include "beliefnet/evolution.hpp"
#include "beliefnet/network.hpp"

namespace beliefnet {

// Everything needed to replay a run without the original input files.
struct TraceHeader {
  std::string mode;  // sync | scheduled | random
  std::string network_source;
  Network network;
  FunctionFamily family;
  BeliefProfile initial;
  std::optional<std::uint64_t> seed;
  std::vector<double> probabilities;
  std::size_t max_steps = 0;
};

struct TraceFile {
  TraceHeader header;
  Trace trace;
};

// JSON Lines: a header record, one record per step, an outcome record.
// Field order is fixed, so equal runs give byte-identical output.
void write_trace(std::ostream& out, const TraceHeader& header, const Trace& trace);
std::string format_trace(const TraceHeader& header, const Trace& trace);

// Throws ParseError on malformed records.
TraceFile read_trace(std::istream& in, const std::string& source = "<trace>");
TraceFile load_trace(const std::string& path);

}  // namespace beliefnet
