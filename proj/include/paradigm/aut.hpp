#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "paradigm/lts.hpp"

namespace paradigm {

class AutParseError : public std::runtime_error {
 public:
  AutParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Aldebaran text: `des (initial, transitions, states)` followed by one
/// `(src,"label",dst)` line per transition in (src, label, dst) order.
std::string export_aut(const Lts& l);
Lts import_aut(std::string_view text);

/// One `index name` line per named state, for use next to an .aut file.
std::string export_state_names(const Lts& l);

/// Graphviz rendering; layout is not stable across versions.
std::string export_dot(const Lts& l, std::string_view graph_name = "lts");

}  // namespace paradigm
