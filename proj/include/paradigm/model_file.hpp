#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "paradigm/model.hpp"

namespace paradigm {

class ModelSyntaxError : public std::runtime_error {
 public:
  ModelSyntaxError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                           ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses the textual model format. Only syntax is checked here; run
/// validate_model on the result.
ParadigmModel parse_model(std::string_view text);

/// Canonical text; parse_model(print_model(m)) == m.
std::string print_model(const ParadigmModel& m);

/// Role over `partition` whose states are the phases it mentions (initial
/// first), whose actions are the transfer traps.
Role make_role(const std::string& instance, const std::string& partition,
               const std::string& initial, std::vector<Transition> transfers);

}  // namespace paradigm
