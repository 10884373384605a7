#pragma once

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace paradigm {

using StateSet = std::set<std::string>;

struct Transition {
  std::string source;
  std::string action;
  std::string target;

  auto operator<=>(const Transition&) const = default;
};

/// A state-transition diagram. States keep their declaration order, which
/// fixes the numbering of every LTS derived from the diagram.
struct Std {
  std::string name;
  std::vector<std::string> states;
  std::vector<std::string> actions;
  std::vector<Transition> transitions;
  std::string initial;

  bool has_state(const std::string& s) const;
  bool has_action(const std::string& a) const;
  bool has_transition(const Transition& t) const;

  bool operator==(const Std&) const = default;
};

struct Trap {
  std::string name;
  StateSet states;

  bool operator==(const Trap&) const = default;
};

/// A sub-diagram of the owner STD, stored extensionally.
struct Phase {
  std::string name;
  StateSet states;
  std::set<Transition> transitions;
  std::vector<Trap> traps;

  const Trap* find_trap(const std::string& trap) const;
  bool operator==(const Phase&) const = default;
};

struct Partition {
  std::string name;
  std::string owner;  // STD name
  std::vector<Phase> phases;

  const Phase* find_phase(const std::string& phase) const;
  bool operator==(const Partition&) const = default;
};

/// A role is the global STD over the phases of a partition: states are phase
/// names, actions are trap names and transitions are phase transfers.
struct Role {
  std::string partition;
  Std global;

  const std::string& initial_phase() const { return global.initial; }
  bool operator==(const Role&) const = default;
};

struct ComponentInstance {
  std::string name;
  std::string std;
  std::vector<Role> roles;
  bool conductor = false;

  const Role* find_role(const std::string& partition) const;
  bool operator==(const ComponentInstance&) const = default;
};

struct PhaseTransfer {
  std::string instance;
  std::string partition;
  Transition transfer;  // source phase, trap, target phase

  bool operator==(const PhaseTransfer&) const = default;
};

/// One conductor transition coupled with one or more participant transfers.
struct ConsistencyRule {
  std::string conductor;
  Transition step;
  std::vector<PhaseTransfer> participants;

  bool operator==(const ConsistencyRule&) const = default;
};

struct ParadigmModel {
  std::vector<Std> stds;
  std::vector<Partition> partitions;
  std::vector<ComponentInstance> instances;
  std::vector<ConsistencyRule> rules;

  const Std* find_std(const std::string& name) const;
  const Partition* find_partition(const std::string& name) const;
  const ComponentInstance* find_instance(const std::string& name) const;

  /// Throwing lookups for code that runs on validated models.
  const Std& std_of(const ComponentInstance& inst) const;
  const Partition& partition_of(const Role& role) const;
  const ComponentInstance& instance(const std::string& name) const;

  std::vector<const ComponentInstance*> conductors() const;
  std::vector<const ComponentInstance*> participants() const;

  bool operator==(const ParadigmModel&) const = default;
};

// ---------------------------------------------------------------------------
// Validation. Violations are data: every check runs and reports, nothing
// throws.

enum class Severity { kError, kWarning };

struct Violation {
  Severity severity = Severity::kError;
  std::string location;
  std::string message;
};

class ValidationReport {
 public:
  void error(std::string location, std::string message);
  void warning(std::string location, std::string message);
  void merge(const ValidationReport& other);

  const std::vector<Violation>& items() const { return items_; }
  std::size_t error_count() const;
  bool empty() const { return items_.empty(); }
  bool valid() const { return error_count() == 0; }

 private:
  std::vector<Violation> items_;
};

std::string to_string(const Violation& v);
std::string to_string(const ValidationReport& report);

ValidationReport validate_std(const Std& std);
ValidationReport validate_partition(const Partition& p, const Std& owner);
ValidationReport validate_role(const Role& r, const Partition& p);
ValidationReport validate_model(const ParadigmModel& m);

}  // namespace paradigm
