#include "paradigm/model.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace paradigm {

namespace {

template <class Range, class T>
bool contains(const Range& r, const T& value) {
  return std::find(r.begin(), r.end(), value) != r.end();
}

std::string show(const Transition& t) {
  return t.source + " -" + t.action + "-> " + t.target;
}

std::string show(const StateSet& states) {
  std::string out = "{";
  for (const auto& s : states) {
    if (out.size() > 1) out += ", ";
    out += s;
  }
  return out + "}";
}

}  // namespace

bool Std::has_state(const std::string& s) const { return contains(states, s); }
bool Std::has_action(const std::string& a) const { return contains(actions, a); }
bool Std::has_transition(const Transition& t) const {
  return contains(transitions, t);
}

const Trap* Phase::find_trap(const std::string& trap) const {
  for (const auto& t : traps)
    if (t.name == trap) return &t;
  return nullptr;
}

const Phase* Partition::find_phase(const std::string& phase) const {
  for (const auto& p : phases)
    if (p.name == phase) return &p;
  return nullptr;
}

const Role* ComponentInstance::find_role(const std::string& partition) const {
  for (const auto& r : roles)
    if (r.partition == partition) return &r;
  return nullptr;
}

const Std* ParadigmModel::find_std(const std::string& name) const {
  for (const auto& s : stds)
    if (s.name == name) return &s;
  return nullptr;
}

const Partition* ParadigmModel::find_partition(const std::string& name) const {
  for (const auto& p : partitions)
    if (p.name == name) return &p;
  return nullptr;
}

const ComponentInstance* ParadigmModel::find_instance(
    const std::string& name) const {
  for (const auto& i : instances)
    if (i.name == name) return &i;
  return nullptr;
}

const Std& ParadigmModel::std_of(const ComponentInstance& inst) const {
  const Std* s = find_std(inst.std);
  if (!s) throw std::out_of_range("unknown std '" + inst.std + "'");
  return *s;
}

const Partition& ParadigmModel::partition_of(const Role& role) const {
  const Partition* p = find_partition(role.partition);
  if (!p) throw std::out_of_range("unknown partition '" + role.partition + "'");
  return *p;
}

const ComponentInstance& ParadigmModel::instance(const std::string& name) const {
  const ComponentInstance* i = find_instance(name);
  if (!i) throw std::out_of_range("unknown instance '" + name + "'");
  return *i;
}

std::vector<const ComponentInstance*> ParadigmModel::conductors() const {
  std::vector<const ComponentInstance*> out;
  for (const auto& i : instances)
    if (i.conductor) out.push_back(&i);
  return out;
}

std::vector<const ComponentInstance*> ParadigmModel::participants() const {
  std::vector<const ComponentInstance*> out;
  for (const auto& i : instances)
    if (!i.conductor) out.push_back(&i);
  return out;
}

// ---------------------------------------------------------------------------

void ValidationReport::error(std::string location, std::string message) {
  items_.push_back({Severity::kError, std::move(location), std::move(message)});
}

void ValidationReport::warning(std::string location, std::string message) {
  items_.push_back(
      {Severity::kWarning, std::move(location), std::move(message)});
}

void ValidationReport::merge(const ValidationReport& other) {
  items_.insert(items_.end(), other.items_.begin(), other.items_.end());
}

std::size_t ValidationReport::error_count() const {
  return static_cast<std::size_t>(
      std::count_if(items_.begin(), items_.end(), [](const Violation& v) {
        return v.severity == Severity::kError;
      }));
}

std::string to_string(const Violation& v) {
  return std::string(v.severity == Severity::kError ? "error" : "warning") +
         ": " + v.location + ": " + v.message;
}

std::string to_string(const ValidationReport& report) {
  std::ostringstream os;
  for (const auto& v : report.items()) os << to_string(v) << '\n';
  return os.str();
}

ValidationReport validate_std(const Std& std) {
  ValidationReport r;
  const std::string loc = "std " + std.name;

  std::set<std::string> seen;
  for (const auto& s : std.states)
    if (!seen.insert(s).second) r.error(loc, "duplicate state '" + s + "'");
  seen.clear();
  for (const auto& a : std.actions) {
    if (!seen.insert(a).second) r.error(loc, "duplicate action '" + a + "'");
    if (a == "tau") r.error(loc, "action name 'tau' is reserved");
  }

  if (!std.has_state(std.initial))
    r.error(loc, "initial state '" + std.initial + "' is not a state");

  std::set<Transition> transitions;
  for (const auto& t : std.transitions) {
    if (!std.has_state(t.source))
      r.error(loc, show(t) + ": unknown source state '" + t.source + "'");
    if (!std.has_state(t.target))
      r.error(loc, show(t) + ": unknown target state '" + t.target + "'");
    if (!std.has_action(t.action))
      r.error(loc, show(t) + ": unknown action '" + t.action + "'");
    if (!transitions.insert(t).second)
      r.error(loc, "duplicate transition " + show(t));
  }
  return r;
}

ValidationReport validate_partition(const Partition& p, const Std& owner) {
  ValidationReport r;
  const std::string loc = "partition " + p.name;

  if (p.owner != owner.name)
    r.error(loc, "owner is '" + p.owner + "', validated against '" +
                     owner.name + "'");
  if (p.phases.empty()) r.error(loc, "no phases");

  std::set<std::string> phase_names;
  StateSet covered;
  for (const auto& phase : p.phases) {
    const std::string ploc = loc + ", phase " + phase.name;
    if (!phase_names.insert(phase.name).second)
      r.error(loc, "duplicate phase '" + phase.name + "'");

    for (const auto& s : phase.states) {
      if (!owner.has_state(s))
        r.error(ploc, "state '" + s + "' not in std " + owner.name);
      covered.insert(s);
    }
    for (const auto& t : phase.transitions) {
      if (!owner.has_transition(t))
        r.error(ploc, show(t) + " is not a transition of std " + owner.name);
      if (!phase.states.contains(t.source) || !phase.states.contains(t.target))
        r.error(ploc, show(t) + " leaves the phase states");
    }

    std::set<std::string> trap_names;
    for (const auto& trap : phase.traps) {
      const std::string tloc = ploc + ", trap " + trap.name;
      if (!trap_names.insert(trap.name).second)
        r.error(ploc, "duplicate trap '" + trap.name + "'");
      if (trap.states.empty()) r.error(tloc, "trap is empty");
      for (const auto& s : trap.states)
        if (!phase.states.contains(s))
          r.error(tloc, "state '" + s + "' not in phase");
      for (const auto& t : phase.transitions)
        if (trap.states.contains(t.source) && !trap.states.contains(t.target))
          r.error(tloc, "not closed: " + show(t) + " leaves " +
                            show(trap.states));
    }
  }

  for (const auto& s : owner.states)
    if (!covered.contains(s))
      r.warning(loc, "state '" + s + "' lies outside every phase");
  return r;
}

ValidationReport validate_role(const Role& role, const Partition& p) {
  ValidationReport r = validate_std(role.global);
  const std::string loc = "role over " + p.name;

  if (role.partition != p.name)
    r.error(loc, "role names partition '" + role.partition + "'");

  for (const auto& s : role.global.states)
    if (!p.find_phase(s)) r.error(loc, "unknown phase '" + s + "'");

  for (const auto& t : role.global.transitions) {
    const Phase* from = p.find_phase(t.source);
    const Phase* to = p.find_phase(t.target);
    if (!from || !to) continue;  // reported above
    const Trap* trap = from->find_trap(t.action);
    if (!trap) {
      r.error(loc, show(t) + ": '" + t.action + "' is not a trap of phase " +
                       from->name);
      continue;
    }
    if (!std::includes(to->states.begin(), to->states.end(),
                       trap->states.begin(), trap->states.end()))
      r.error(loc, show(t) + ": trap " + show(trap->states) +
                       " does not connect to phase " + to->name);
  }
  return r;
}

ValidationReport validate_model(const ParadigmModel& m) {
  ValidationReport r;

  std::set<std::string> names;
  for (const auto& s : m.stds) {
    if (!names.insert(s.name).second)
      r.error("model", "duplicate std '" + s.name + "'");
    r.merge(validate_std(s));
  }

  names.clear();
  for (const auto& p : m.partitions) {
    if (!names.insert(p.name).second)
      r.error("model", "duplicate partition '" + p.name + "'");
    if (const Std* owner = m.find_std(p.owner))
      r.merge(validate_partition(p, *owner));
    else
      r.error("partition " + p.name, "unknown owner std '" + p.owner + "'");
  }

  names.clear();
  for (const auto& inst : m.instances) {
    const std::string loc = "instance " + inst.name;
    if (!names.insert(inst.name).second)
      r.error("model", "duplicate instance '" + inst.name + "'");
    if (!m.find_std(inst.std))
      r.error(loc, "unknown std '" + inst.std + "'");
    if (inst.conductor && !inst.roles.empty())
      r.error(loc, "a conductor carries no roles");
    if (!inst.conductor && inst.roles.empty())
      r.error(loc, "participant without a role");

    std::set<std::string> partitions;
    std::map<std::string, std::string> trap_owner;
    for (const auto& role : inst.roles) {
      if (!partitions.insert(role.partition).second)
        r.error(loc, "two roles over partition '" + role.partition + "'");
      const Partition* p = m.find_partition(role.partition);
      if (!p) {
        r.error(loc, "unknown partition '" + role.partition + "'");
        continue;
      }
      if (p->owner != inst.std)
        r.error(loc, "partition " + p->name + " belongs to std " + p->owner);
      r.merge(validate_role(role, *p));
      const Std* s = m.find_std(inst.std);
      const Phase* start = p->find_phase(role.initial_phase());
      if (s && start && !start->states.contains(s->initial))
        r.warning(loc, "initial state '" + s->initial +
                           "' lies outside initial phase " + start->name);
      // trap(t) labels are qualified by instance only
      for (const auto& phase : p->phases)
        for (const auto& trap : phase.traps) {
          auto [it, fresh] = trap_owner.emplace(trap.name, p->name);
          if (!fresh && it->second != p->name)
            r.error(loc, "trap name '" + trap.name +
                             "' used by partitions " + it->second + " and " +
                             p->name);
        }
    }
  }

  for (std::size_t k = 0; k < m.rules.size(); ++k) {
    const auto& rule = m.rules[k];
    const std::string loc = "rule " + std::to_string(k + 1);
    const ComponentInstance* cond = m.find_instance(rule.conductor);
    if (!cond) {
      r.error(loc, "unknown conductor '" + rule.conductor + "'");
    } else {
      if (!cond->conductor)
        r.error(loc, "'" + cond->name + "' is not declared as conductor");
      const Std* s = m.find_std(cond->std);
      if (s && !s->has_transition(rule.step))
        r.error(loc, show(rule.step) + " is not a transition of std " +
                         s->name);
    }
    if (rule.participants.empty()) r.error(loc, "no participants");

    std::set<std::string> seen;
    for (const auto& part : rule.participants) {
      if (!seen.insert(part.instance).second)
        r.error(loc, "participant '" + part.instance + "' appears twice");
      if (part.instance == rule.conductor)
        r.error(loc, "conductor '" + part.instance + "' also participates");
      const ComponentInstance* inst = m.find_instance(part.instance);
      if (!inst) {
        r.error(loc, "unknown participant '" + part.instance + "'");
        continue;
      }
      const Role* role = inst->find_role(part.partition);
      if (!role) {
        r.error(loc, part.instance + " has no role over '" + part.partition +
                         "'");
        continue;
      }
      if (!role->global.has_transition(part.transfer))
        r.error(loc, "transfer " + show(part.transfer) + " is not in role " +
                         part.instance + "(" + part.partition + ")");
    }
  }
  return r;
}

}  // namespace paradigm
