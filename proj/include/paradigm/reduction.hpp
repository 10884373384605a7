#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "paradigm/bisim.hpp"
#include "paradigm/lts.hpp"
#include "paradigm/model.hpp"
#include "paradigm/translator.hpp"

namespace paradigm {

using ActionSet = std::set<std::string>;

/// A candidate hidden set names an action the STD does not have.
class UnknownActionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A reduction whose soundness check failed was requested without override.
class ReductionRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Where a transition crosses a trap boundary inside a phase.
struct InertWitness {
  std::string partition;
  std::string phase;
  std::string trap;
  std::string inside;  // the endpoint that lies in the trap
};

struct TransitionVerdict {
  Transition transition;
  bool inert = true;
  std::optional<InertWitness> witness;
};

struct InertReport {
  std::vector<TransitionVerdict> transitions;  // in STD order
  std::map<std::string, bool> actions;

  ActionSet inert_actions() const;
  const TransitionVerdict* find(const Transition& t) const;
};

/// A transition x -a-> x' is globally inert when no trap of any phase that
/// holds both x and x' contains exactly one of them. An action is inert when
/// all of its transitions are.
InertReport inert_transitions(const Std& std,
                              std::span<const Partition> partitions);
InertReport inert_transitions(const ParadigmModel& model,
                              const ComponentInstance& inst);

struct ReducedComponent {
  Std std;  // states are blocks
  std::map<std::string, std::string> block_of;
  ActionSet hidden;

  std::set<std::string> members(const std::string& block) const;
};

/// Hides `hidden` in the STD and minimises modulo branching bisimulation.
/// Blocks are named by their sorted members, e.g. `{AtDoor,Out}`. A hidden
/// step between two distinct blocks keeps its action name; `hidden` tells
/// such steps apart from visible ones.
ReducedComponent quotient_detailed(const Std& std, const ActionSet& hidden);

struct ReducedDetailed {
  Lts lts;
  SyncRuleSet at_rules;  // at!(B) | at?(s) -> tau for queried s in B
};

ReducedDetailed reduced_detailed_lts(const ReducedComponent& rc,
                                     const StateSet& queried,
                                     const std::string& instance);

/// The component translation with its detailed process replaced by the
/// reduced one and the synchronisation adapted.
ComponentTranslation reduce_component(const ParadigmModel& model,
                                      const ComponentInstance& inst,
                                      const ActionSet& hidden);

struct ReductionCheck {
  bool holds = false;
  Lts reduced;   // reduced detailed || globals, same ok(a) hidden
  Lts original;  // DG with ok(a), a in hidden, renamed to tau
  EquivalenceResult detail;
};

/// First-reduce-then-compose soundness for one component.
ReductionCheck verify_reduction(const ParadigmModel& model,
                                const ComponentInstance& inst,
                                const ActionSet& hidden);

struct PreservationCheck {
  bool holds = false;
  Lts detailed;
  Lts abstracted;  // DG with trap labels hidden, ok(a) shown as a
  EquivalenceResult detail;
};

/// Whether the component keeps all of its detailed behaviour once the
/// protocol-facing trap steps are abstracted away.
PreservationCheck verify_detailed_preservation(const ParadigmModel& model,
                                               const ComponentInstance& inst);

using HiddenSets = std::map<std::string, ActionSet>;

/// Inert actions of every participant.
HiddenSets inert_hidden_sets(const ParadigmModel& model);

/// Translation unit with each listed participant reduced. Unless `force`,
/// every reduction must pass verify_reduction first (ReductionRefused).
TranslationUnit reduce_model(const ParadigmModel& model,
                             const HiddenSets& hidden, bool force = false);
Lts reduced_system(const ParadigmModel& model, const HiddenSets& hidden,
                   bool force = false);

}  // namespace paradigm
