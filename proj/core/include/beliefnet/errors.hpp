#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace beliefnet {

// Agent or profile does not belong to the network it is used with.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Unknown function selector, bad probability, bad limit.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exhaustive enumeration requested beyond the configured agent limit.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string& what, std::size_t agents, std::size_t limit)
      : std::runtime_error("exhaustive check infeasible: " + what + " needs " +
                           std::to_string(agents) + " agents, limit is " +
                           std::to_string(limit)),
        agents_(agents),
        limit_(limit) {}

  std::size_t agents() const { return agents_; }
  std::size_t limit() const { return limit_; }

 private:
  std::size_t agents_;
  std::size_t limit_;
};

// Malformed input text. Carries the source name and 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& message)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + message),
        source_(std::move(source)),
        line_(line) {}

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

}  // namespace beliefnet
