#include "paradigm/reduction.hpp"

#include <algorithm>

namespace paradigm {

ActionSet InertReport::inert_actions() const {
  ActionSet out;
  for (const auto& [a, inert] : actions)
    if (inert) out.insert(a);
  return out;
}

const TransitionVerdict* InertReport::find(const Transition& t) const {
  for (const auto& v : transitions)
    if (v.transition == t) return &v;
  return nullptr;
}

InertReport inert_transitions(const Std& std,
                              std::span<const Partition> partitions) {
  InertReport report;
  for (const auto& a : std.actions) report.actions[a] = true;
  for (const auto& t : std.transitions) report.transitions.push_back({t, true, {}});

  // a witness whose trap holds the source is preferred: the step leaves it
  for (auto& v : report.transitions) {
    const auto& [x, a, y] = v.transition;
    for (const auto& p : partitions)
      for (const auto& phase : p.phases) {
        if (!phase.states.contains(x) || !phase.states.contains(y)) continue;
        for (const auto& trap : phase.traps) {
          const bool in_x = trap.states.contains(x);
          if (in_x == trap.states.contains(y)) continue;
          if (v.inert || (in_x && v.witness->inside != x))
            v.witness = InertWitness{p.name, phase.name, trap.name, in_x ? x : y};
          v.inert = false;
        }
      }
  }

  for (const auto& v : report.transitions)
    if (!v.inert) report.actions[v.transition.action] = false;
  return report;
}

InertReport inert_transitions(const ParadigmModel& model,
                              const ComponentInstance& inst) {
  std::vector<Partition> partitions;
  for (const auto& r : inst.roles) partitions.push_back(model.partition_of(r));
  return inert_transitions(model.std_of(inst), partitions);
}

// ---------------------------------------------------------------------------

std::set<std::string> ReducedComponent::members(const std::string& block) const {
  std::set<std::string> out;
  for (const auto& [state, b] : block_of)
    if (b == block) out.insert(state);
  return out;
}

ReducedComponent quotient_detailed(const Std& std, const ActionSet& hidden) {
  for (const auto& a : hidden)
    if (!std.has_action(a))
      throw UnknownActionError("action '" + a + "' is not an action of std " +
                               std.name);

  HideSet hide_set;
  for (const auto& a : hidden)
    hide_set.add(LabelPattern::exactly(Label::make(LabelKind::kPlain, a)));
  const Lts plain = std_as_lts(std, "");
  const BlockMap q = branching_quotient(hide(plain, hide_set));

  ReducedComponent rc;
  rc.hidden = hidden;
  rc.std.name = "Q" + std.name;
  for (StateId b = 0; b < q.lts.state_count(); ++b)
    rc.std.states.push_back(q.lts.state_names()[b]);
  rc.std.initial = rc.std.states[q.lts.initial()];
  for (std::size_t s = 0; s < std.states.size(); ++s)
    rc.block_of[std.states[s]] = rc.std.states[q.block_of[s]];

  ActionSet used;
  for (const auto& t : q.lts.transitions()) {
    const Label& l = q.lts.label(t.label);
    if (l.is_tau()) continue;
    used.insert(l.name);
    rc.std.transitions.push_back(
        {rc.std.states[t.source], l.name, rc.std.states[t.target]});
  }
  // hidden steps that survive minimisation connect distinct blocks
  for (const auto& t : std.transitions) {
    if (!hidden.contains(t.action)) continue;
    const std::string& from = rc.block_of.at(t.source);
    const std::string& to = rc.block_of.at(t.target);
    if (from == to) continue;
    const Transition r{from, t.action, to};
    if (!rc.std.has_transition(r)) rc.std.transitions.push_back(r);
    used.insert(t.action);
  }
  for (const auto& a : std.actions)
    if (used.contains(a)) rc.std.actions.push_back(a);
  return rc;
}

ReducedDetailed reduced_detailed_lts(const ReducedComponent& rc,
                                     const StateSet& queried,
                                     const std::string& instance) {
  ReducedDetailed out;
  const Std& q = rc.std;
  const auto init = std::find(q.states.begin(), q.states.end(), q.initial);
  out.lts = Lts(q.states.size(), static_cast<StateId>(init - q.states.begin()));
  std::map<std::string, StateId> index;
  for (std::size_t i = 0; i < q.states.size(); ++i) {
    out.lts.set_state_name(static_cast<StateId>(i), q.states[i]);
    index.emplace(q.states[i], static_cast<StateId>(i));
  }
  for (const auto& t : q.transitions) {
    out.lts.add_transition(index.at(t.source),
                           Label::make(LabelKind::kOkAsk, t.action, instance),
                           index.at(t.target));
  }
  for (const auto& block : q.states) {
    bool asked = false;
    for (const auto& s : rc.members(block)) {
      if (!queried.contains(s)) continue;
      asked = true;
      out.at_rules.add({Label::make(LabelKind::kAtSend, block, instance),
                        Label::make(LabelKind::kAtQuery, s, instance)},
                       Label::tau());
    }
    if (asked)
      out.lts.add_transition(index.at(block),
                             Label::make(LabelKind::kAtSend, block, instance),
                             index.at(block));
  }
  out.lts.transitions();
  return out;
}

ComponentTranslation reduce_component(const ParadigmModel& model,
                                      const ComponentInstance& inst,
                                      const ActionSet& hidden) {
  ComponentTranslation c = translate_component(model, inst);
  const ReducedComponent rc = quotient_detailed(model.std_of(inst), hidden);
  ReducedDetailed rd = reduced_detailed_lts(rc, c.queried, inst.name);

  c.detailed = std::move(rd.lts);
  c.rules = component_sync_rules(rc.std, inst.name, {}, inst.roles.size());
  c.rules.merge(rd.at_rules);
  return c;
}

ReductionCheck verify_reduction(const ParadigmModel& model,
                                const ComponentInstance& inst,
                                const ActionSet& hidden) {
  ReductionCheck check;
  HideSet ok_hidden;
  for (const auto& a : hidden)
    ok_hidden.add(
        LabelPattern::exactly(Label::make(LabelKind::kOk, a, inst.name)));
  check.reduced =
      hide(compose_component(reduce_component(model, inst, hidden)), ok_hidden);
  check.original = hide(translate_component_dg(model, inst), ok_hidden);

  check.detail = equivalent(check.reduced, check.original);
  check.holds = check.detail.equivalent;
  return check;
}

PreservationCheck verify_detailed_preservation(const ParadigmModel& model,
                                               const ComponentInstance& inst) {
  PreservationCheck check;
  check.detailed = std_as_lts(model.std_of(inst), inst.name);
  const Lts dg = translate_component_dg(model, inst);
  check.abstracted = rename(dg, [](const Label& l) {
    if (l.kind == LabelKind::kTrap) return Label::tau();
    if (l.kind == LabelKind::kOk)
      return Label::make(LabelKind::kPlain, l.name, l.instance);
    return l;
  });
  check.detail = equivalent(check.detailed, check.abstracted);
  check.holds = check.detail.equivalent;
  return check;
}

HiddenSets inert_hidden_sets(const ParadigmModel& model) {
  HiddenSets out;
  for (const auto* inst : model.participants())
    out[inst->name] = inert_transitions(model, *inst).inert_actions();
  return out;
}

TranslationUnit reduce_model(const ParadigmModel& model,
                             const HiddenSets& hidden, bool force) {
  TranslationUnit unit = translate_model(model);
  for (auto& c : unit.components) {
    auto it = hidden.find(c.instance);
    if (it == hidden.end()) continue;
    const ComponentInstance& inst = model.instance(c.instance);
    if (!force && !verify_reduction(model, inst, it->second).holds)
      throw ReductionRefused("reduction of " + c.instance +
                             " is not branching bisimilar to the original");
    c = reduce_component(model, inst, it->second);
  }
  for (const auto& [name, set] : hidden)
    if (!model.find_instance(name))
      throw std::invalid_argument("unknown instance '" + name + "'");
  return unit;
}

Lts reduced_system(const ParadigmModel& model, const HiddenSets& hidden,
                   bool force) {
  return compose_system(reduce_model(model, hidden, force)).lts;
}

}  // namespace paradigm
