#include "paradigm/translator.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace paradigm {

std::set<std::string> initial_knowledge(const Phase& phase) {
  std::set<std::string> out;
  for (const auto& t : phase.traps)
    if (std::includes(t.states.begin(), t.states.end(), phase.states.begin(),
                      phase.states.end()))
      out.insert(t.name);
  return out;
}

StateSet knowledge_core(const Phase& phase, const std::set<std::string>& known) {
  StateSet core = phase.states;
  for (const auto& name : known) {
    const Trap* t = phase.find_trap(name);
    if (!t) throw std::invalid_argument("unknown trap '" + name + "'");
    StateSet kept;
    std::set_intersection(core.begin(), core.end(), t->states.begin(),
                          t->states.end(), std::inserter(kept, kept.end()));
    core = std::move(kept);
  }
  return core;
}

std::string knowledge_name(const Phase& phase, const KnowledgeState& k) {
  const auto init = initial_knowledge(phase);
  std::vector<const Trap*> extra;
  for (const auto& name : k.known)
    if (!init.contains(name)) extra.push_back(phase.find_trap(name));
  if (extra.empty()) return phase.name + "[triv]";

  // most informative traps: those with no strictly smaller registered trap
  std::string inner;
  for (const Trap* t : extra) {
    bool minimal = true;
    for (const Trap* u : extra)
      if (u != t && u->states != t->states &&
          std::includes(t->states.begin(), t->states.end(), u->states.begin(),
                        u->states.end()))
        minimal = false;
    if (!minimal) continue;
    if (!inner.empty()) inner += ',';
    inner += t->name;
  }
  return phase.name + "[" + inner + "]";
}

StateSet GlobalProcess::queried() const {
  StateSet out;
  for (const auto& t : lts.transitions()) {
    const Label& l = lts.label(t.label);
    if (l.kind == LabelKind::kAtQuery) out.insert(l.name);
  }
  return out;
}

GlobalProcess translate_global(const Partition& partition, const Role& role,
                               const std::string& instance) {
  auto phase_of = [&](const std::string& name) -> const Phase& {
    const Phase* p = partition.find_phase(name);
    if (!p) throw std::invalid_argument("role names unknown phase '" + name + "'");
    return *p;
  };

  GlobalProcess g{instance, partition.name, Lts{}, {}};
  std::map<KnowledgeState, StateId> index;
  auto node = [&](KnowledgeState k) -> StateId {
    auto it = index.find(k);
    if (it != index.end()) return it->second;
    const std::string name = knowledge_name(phase_of(k.phase), k);
    StateId id;
    if (g.nodes.empty()) {
      g.lts = Lts(1, 0);
      g.lts.set_state_name(0, name);
      id = 0;
    } else {
      id = g.lts.add_state(name);
    }
    index.emplace(k, id);
    g.nodes.push_back(std::move(k));
    return id;
  };

  {
    const Phase& start = phase_of(role.initial_phase());
    node({start.name, initial_knowledge(start)});
  }

  for (StateId s = 0; s < g.nodes.size(); ++s) {
    const KnowledgeState k = g.nodes[s];
    const Phase& phase = phase_of(k.phase);
    const StateSet core = knowledge_core(phase, k.known);

    // permissions: traps are closed, so granting never changes knowledge
    std::set<std::string> granted;
    for (const auto& t : phase.transitions)
      if (core.contains(t.source)) granted.insert(t.action);
    for (const auto& a : granted)
      g.lts.add_transition(s, Label::make(LabelKind::kOkGrant, a, instance), s);

    // queries that register at least one more trap
    for (const auto& x : core) {
      KnowledgeState next = k;
      for (const auto& t : phase.traps)
        if (t.states.contains(x)) next.known.insert(t.name);
      if (next.known == k.known) continue;
      const StateId target = node(std::move(next));
      g.lts.add_transition(s, Label::make(LabelKind::kAtQuery, x, instance),
                           target);
    }

    // transfers over registered traps
    for (const auto& trap_name : k.known) {
      const Trap* trap = phase.find_trap(trap_name);
      for (const auto& transfer : role.global.transitions) {
        if (transfer.source != phase.name || transfer.action != trap_name)
          continue;
        const Phase& to = phase_of(transfer.target);
        KnowledgeState next{to.name, initial_knowledge(to)};
        for (const auto& t : to.traps)
          if (std::includes(t.states.begin(), t.states.end(),
                            trap->states.begin(), trap->states.end()))
            next.known.insert(t.name);
        const StateId target = node(std::move(next));
        g.lts.add_transition(
            s, Label::make(LabelKind::kTrap, trap_name, instance), target);
      }
    }
  }
  g.lts.transitions();
  return g;
}

namespace {

Lts relabeled_std(const Std& std, LabelKind kind, const std::string& instance) {
  const auto init = std::find(std.states.begin(), std.states.end(), std.initial);
  if (init == std.states.end())
    throw std::invalid_argument("std " + std.name + " has no initial state");
  Lts out(std.states.size(),
          static_cast<StateId>(init - std.states.begin()));
  std::map<std::string, StateId> index;
  for (std::size_t i = 0; i < std.states.size(); ++i) {
    out.set_state_name(static_cast<StateId>(i), std.states[i]);
    index.emplace(std.states[i], static_cast<StateId>(i));
  }
  for (const auto& t : std.transitions)
    out.add_transition(index.at(t.source), Label::make(kind, t.action, instance),
                       index.at(t.target));
  return out;
}

}  // namespace

Lts translate_detailed(const Std& std, const std::string& instance,
                       const StateSet& queried) {
  Lts out = relabeled_std(std, LabelKind::kOkAsk, instance);
  for (std::size_t i = 0; i < std.states.size(); ++i)
    if (queried.contains(std.states[i]))
      out.add_transition(static_cast<StateId>(i),
                         Label::make(LabelKind::kAtSend, std.states[i], instance),
                         static_cast<StateId>(i));
  out.transitions();
  return out;
}

Lts translate_conductor(const Std& std, const std::string& instance) {
  Lts out = relabeled_std(std, LabelKind::kMan, instance);
  out.transitions();
  return out;
}

Lts std_as_lts(const Std& std, const std::string& instance) {
  Lts out = relabeled_std(std, LabelKind::kPlain, instance);
  out.transitions();
  return out;
}

SyncRuleSet component_sync_rules(const Std& std, const std::string& instance,
                                 const StateSet& queried,
                                 std::size_t role_count) {
  SyncRuleSet rules;
  for (const auto& a : std.actions) {
    std::vector<Label> ops{Label::make(LabelKind::kOkAsk, a, instance)};
    for (std::size_t r = 0; r < role_count; ++r)
      ops.push_back(Label::make(LabelKind::kOkGrant, a, instance));
    rules.add(std::move(ops), Label::make(LabelKind::kOk, a, instance));
  }
  for (const auto& s : queried)
    rules.add({Label::make(LabelKind::kAtSend, s, instance),
               Label::make(LabelKind::kAtQuery, s, instance)},
              Label::tau());
  return rules;
}

SyncRuleSet protocol_sync_rules(const ParadigmModel& model) {
  SyncRuleSet rules;
  for (const auto& rule : model.rules) {
    std::vector<Label> ops{
        Label::make(LabelKind::kMan, rule.step.action, rule.conductor)};
    for (const auto& p : rule.participants)
      ops.push_back(Label::make(LabelKind::kTrap, p.transfer.action, p.instance));
    rules.add(std::move(ops),
              Label::make(LabelKind::kResult, rule.step.action, rule.conductor));
  }
  return rules;
}

BlockSet component_block_set() {
  return {LabelPattern::of_kind(LabelKind::kAtSend),
          LabelPattern::of_kind(LabelKind::kAtQuery),
          LabelPattern::of_kind(LabelKind::kOkGrant),
          LabelPattern::of_kind(LabelKind::kOkAsk)};
}

BlockSet system_block_set() {
  return {LabelPattern::of_kind(LabelKind::kMan),
          LabelPattern::of_kind(LabelKind::kTrap),
          LabelPattern::of_kind(LabelKind::kAtSend),
          LabelPattern::of_kind(LabelKind::kAtQuery),
          LabelPattern::of_kind(LabelKind::kOkGrant),
          LabelPattern::of_kind(LabelKind::kOkAsk)};
}

ComponentTranslation translate_component(const ParadigmModel& model,
                                         const ComponentInstance& inst) {
  if (inst.roles.empty())
    throw std::invalid_argument("instance " + inst.name + " has no role");
  const Std& std = model.std_of(inst);

  ComponentTranslation c;
  c.instance = inst.name;
  for (const auto& role : inst.roles) {
    c.globals.push_back(
        translate_global(model.partition_of(role), role, inst.name));
    const auto q = c.globals.back().queried();
    c.queried.insert(q.begin(), q.end());
  }
  c.detailed = translate_detailed(std, inst.name, c.queried);
  c.rules = component_sync_rules(std, inst.name, c.queried, inst.roles.size());
  return c;
}

Lts compose_component(const ComponentTranslation& c) {
  std::vector<Lts> parts{c.detailed};
  for (const auto& g : c.globals) parts.push_back(g.lts);
  return compose(parts, c.rules, component_block_set());
}

Lts translate_component_dg(const ParadigmModel& model,
                           const ComponentInstance& inst) {
  return compose_component(translate_component(model, inst));
}

SyncRuleSet TranslationUnit::sync_rules() const {
  SyncRuleSet all;
  for (const auto& c : components) all.merge(c.rules);
  all.merge(protocol);
  return all;
}

std::vector<Lts> TranslationUnit::parts() const {
  std::vector<Lts> out;
  for (const auto& c : components) {
    out.push_back(c.detailed);
    for (const auto& g : c.globals) out.push_back(g.lts);
  }
  for (const auto& [name, lts] : conductors) out.push_back(lts);
  return out;
}

std::vector<std::size_t> TranslationUnit::detailed_part_indices() const {
  std::vector<std::size_t> out;
  std::size_t next = 0;
  for (const auto& c : components) {
    out.push_back(next);
    next += 1 + c.globals.size();
  }
  return out;
}

TranslationUnit translate_model(const ParadigmModel& model) {
  TranslationUnit unit;
  for (const auto& inst : model.instances) {
    if (inst.conductor)
      unit.conductors.emplace_back(
          inst.name, translate_conductor(model.std_of(inst), inst.name));
    else
      unit.components.push_back(translate_component(model, inst));
  }
  unit.protocol = protocol_sync_rules(model);
  return unit;
}

SyncRuleSet build_sync_rules(const ParadigmModel& model) {
  return translate_model(model).sync_rules();
}

Product compose_system(const TranslationUnit& unit) {
  const auto parts = unit.parts();
  return compose_product(parts, unit.sync_rules(), system_block_set());
}

Lts translate_system(const ParadigmModel& model) {
  return compose_system(translate_model(model)).lts;
}

std::vector<StateId> vertical_inconsistencies(const ParadigmModel& model,
                                              const TranslationUnit& unit,
                                              const Product& product) {
  // Only meaningful for units whose detailed parts carry detailed state names.
  std::vector<StateId> bad;
  const auto detailed_at = unit.detailed_part_indices();
  for (StateId s = 0; s < product.lts.state_count(); ++s) {
    const auto tuple = product.tuple(s);
    bool ok = true;
    for (std::size_t c = 0; c < unit.components.size() && ok; ++c) {
      const auto& comp = unit.components[c];
      const ComponentInstance& inst = model.instance(comp.instance);
      const std::string here =
          comp.detailed.state_name(tuple[detailed_at[c]]);
      for (std::size_t r = 0; r < comp.globals.size() && ok; ++r) {
        const auto& g = comp.globals[r];
        const KnowledgeState& k = g.nodes[tuple[detailed_at[c] + 1 + r]];
        const Phase* phase =
            model.partition_of(inst.roles[r]).find_phase(k.phase);
        if (!knowledge_core(*phase, k.known).contains(here)) ok = false;
      }
    }
    if (!ok) bad.push_back(s);
  }
  return bad;
}

}  // namespace paradigm
