#pragma once

#include <string>
#include <vector>

#include "paradigm/lts.hpp"
#include "paradigm/model.hpp"

namespace paradigm {

/// A node of a translated role: the current phase plus the traps of that
/// phase registered as entered.
struct KnowledgeState {
  std::string phase;
  std::set<std::string> known;

  auto operator<=>(const KnowledgeState&) const = default;
};

/// Traps of `phase` that contain every phase state (known on arrival).
std::set<std::string> initial_knowledge(const Phase& phase);

/// States of `phase` compatible with the registered traps.
StateSet knowledge_core(const Phase& phase, const std::set<std::string>& known);

/// `Phase[trap]` rendering; the arrival knowledge renders as `triv`.
std::string knowledge_name(const Phase& phase, const KnowledgeState& k);

struct GlobalProcess {
  std::string instance;
  std::string partition;
  Lts lts;
  std::vector<KnowledgeState> nodes;  // indexed by LTS state

  /// Detailed states this process asks about via at?(s).
  StateSet queried() const;
};

GlobalProcess translate_global(const Partition& partition, const Role& role,
                               const std::string& instance);

/// Detailed process: ok?(a) per detailed transition and an at!(x) self-loop
/// on every queried state x.
Lts translate_detailed(const Std& std, const std::string& instance,
                       const StateSet& queried);

/// Conductor process: the STD with every label a renamed to man(a).
Lts translate_conductor(const Std& std, const std::string& instance);

/// The STD as an LTS with plain labels.
Lts std_as_lts(const Std& std, const std::string& instance);

/// ok?(a) | ok!(a) [| ok!(a) per further role] -> ok(a) for every action, and
/// at!(s) | at?(s) -> tau for every queried state.
SyncRuleSet component_sync_rules(const Std& std, const std::string& instance,
                                 const StateSet& queried,
                                 std::size_t role_count);

/// man(a)@conductor | trap(t1)@i1 | ... -> a@conductor, one per rule.
SyncRuleSet protocol_sync_rules(const ParadigmModel& model);

/// H: at!, at?, ok!, ok? of one component.
BlockSet component_block_set();

/// A: man, trap, at!, at?, ok!, ok?.
BlockSet system_block_set();

struct ComponentTranslation {
  std::string instance;
  Lts detailed;
  std::vector<GlobalProcess> globals;
  StateSet queried;
  SyncRuleSet rules;
};

ComponentTranslation translate_component(const ParadigmModel& model,
                                         const ComponentInstance& inst);

/// detailed || global_1 || ... encapsulated by H; trap labels stay free.
Lts compose_component(const ComponentTranslation& c);
Lts translate_component_dg(const ParadigmModel& model,
                           const ComponentInstance& inst);

struct TranslationUnit {
  std::vector<ComponentTranslation> components;
  std::vector<std::pair<std::string, Lts>> conductors;
  SyncRuleSet protocol;

  SyncRuleSet sync_rules() const;
  /// Parts in system order: each component's detailed process followed by
  /// its global processes, then the conductors.
  std::vector<Lts> parts() const;
  /// Part index of each component's detailed process.
  std::vector<std::size_t> detailed_part_indices() const;
};

TranslationUnit translate_model(const ParadigmModel& model);
SyncRuleSet build_sync_rules(const ParadigmModel& model);

Product compose_system(const TranslationUnit& unit);
Lts translate_system(const ParadigmModel& model);

/// Every composite state must place each component's detailed state inside
/// the core of each of its roles' current knowledge. Returns the offending
/// composite states.
std::vector<StateId> vertical_inconsistencies(const ParadigmModel& model,
                                              const TranslationUnit& unit,
                                              const Product& product);

}  // namespace paradigm
