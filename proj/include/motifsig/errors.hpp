#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace motifsig {

/// Malformed input data. Carries the 1-based line number and offending field
/// when they are known (0 / empty otherwise).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::string field, const std::string& what)
      : std::runtime_error(format(line, field, what)), line_(line), field_(std::move(field)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  static std::string format(std::size_t line, const std::string& field, const std::string& what) {
    std::string msg;
    if (line > 0) msg += "line " + std::to_string(line) + ": ";
    if (!field.empty()) msg += "field '" + field + "': ";
    return msg + what;
  }

  std::size_t line_;
  std::string field_;
};

/// Out-of-domain parameter (generator sizes, edge counts, thresholds).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Caller broke an operation's precondition on otherwise valid data,
/// e.g. comparing signatures computed with different motif orders.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace motifsig
