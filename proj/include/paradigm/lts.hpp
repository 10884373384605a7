#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace paradigm {

using StateId = std::uint32_t;
using LabelId = std::uint32_t;

enum class LabelKind : std::uint8_t {
  kTau,
  kAtSend,   // at!
  kAtQuery,  // at?
  kOkAsk,    // ok?
  kOkGrant,  // ok!
  kOk,
  kMan,
  kTrap,
  kResult,
  kPlain,
};

/// Structured action label. Everything except tau carries a name and, for
/// component-owned actions, the owning instance so that same-named actions of
/// different instances never meet.
struct Label {
  LabelKind kind = LabelKind::kTau;
  std::string name;
  std::string instance;

  static Label tau() { return {}; }
  static Label make(LabelKind kind, std::string name, std::string instance = {}) {
    return {kind, std::move(name), std::move(instance)};
  }

  bool is_tau() const { return kind == LabelKind::kTau; }
  auto operator<=>(const Label&) const = default;
};

/// Aldebaran rendering: `tau`, `kind(name)@instance`, results bare.
std::string to_string(const Label& l);
std::string to_string(LabelKind k);
Label parse_label(std::string_view text);

struct LtsTransition {
  StateId source;
  LabelId label;
  StateId target;

  auto operator<=>(const LtsTransition&) const = default;
};

/// Flat indexed transition system. Labels are interned per LTS; transitions
/// are kept sorted and duplicate-free.
class Lts {
 public:
  Lts() = default;
  explicit Lts(std::size_t state_count, StateId initial = 0);

  std::size_t state_count() const { return state_count_; }
  StateId initial() const { return initial_; }
  void set_initial(StateId s);

  StateId add_state(std::string name = {});
  LabelId intern(const Label& l);
  std::optional<LabelId> find_label(const Label& l) const;
  void add_transition(StateId source, const Label& l, StateId target);
  void add_transition(StateId source, LabelId l, StateId target);

  const std::vector<Label>& labels() const { return labels_; }
  const Label& label(LabelId id) const { return labels_.at(id); }
  const std::vector<LtsTransition>& transitions() const;

  const std::vector<std::string>& state_names() const { return names_; }
  std::string state_name(StateId s) const;
  void set_state_name(StateId s, std::string name);

  /// Same states, initial, transitions and state names, labels compared by
  /// value (interning order is irrelevant).
  friend bool operator==(const Lts& a, const Lts& b);

 private:
  void normalize() const;

  std::size_t state_count_ = 0;
  StateId initial_ = 0;
  std::vector<Label> labels_;
  std::map<Label, LabelId> label_index_;
  std::vector<std::string> names_;
  mutable std::vector<LtsTransition> transitions_;
  mutable bool sorted_ = true;
};

/// Outgoing adjacency built once for exploration.
class Successors {
 public:
  explicit Successors(const Lts& l);
  struct Edge {
    LabelId label;
    StateId target;
  };
  std::span<const Edge> of(StateId s) const {
    return {edges_.data() + offsets_[s], edges_.data() + offsets_[s + 1]};
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Edge> edges_;
};

/// Label pattern: either a whole kind (any payload) or one exact label.
struct LabelPattern {
  std::optional<LabelKind> kind;
  std::optional<Label> exact;

  static LabelPattern of_kind(LabelKind k) { return {k, std::nullopt}; }
  static LabelPattern exactly(Label l) { return {std::nullopt, std::move(l)}; }
  bool matches(const Label& l) const;
};

/// Encapsulation set. Tau never matches.
class BlockSet {
 public:
  BlockSet() = default;
  BlockSet(std::initializer_list<LabelPattern> patterns);
  void add(LabelPattern p) { patterns_.push_back(std::move(p)); }
  bool blocks(const Label& l) const;
  const std::vector<LabelPattern>& patterns() const { return patterns_; }

 private:
  std::vector<LabelPattern> patterns_;
};

using HideSet = BlockSet;

/// k-way synchronisation: operands (a multiset, k >= 2) fire together in k
/// distinct parts and produce `result`.
struct SyncRule {
  std::vector<Label> operands;  // kept sorted
  Label result;

  SyncRule(std::vector<Label> ops, Label res);
  auto operator<=>(const SyncRule&) const = default;
};

class SyncRuleSet {
 public:
  SyncRuleSet() = default;
  /// Throws std::invalid_argument if the operand multiset is already mapped
  /// to a different result. Identical rules are merged.
  void add(SyncRule rule);
  void add(std::vector<Label> operands, Label result);
  void merge(const SyncRuleSet& other);
  const std::vector<SyncRule>& rules() const { return rules_; }
  std::size_t size() const { return rules_.size(); }

 private:
  std::vector<SyncRule> rules_;
  std::map<std::vector<Label>, std::size_t> index_;
};

/// Reachable product with the component tuple of every composite state.
struct Product {
  Lts lts;
  std::size_t arity = 0;
  std::vector<StateId> tuples;  // arity entries per composite state

  std::span<const StateId> tuple(StateId s) const {
    return {tuples.data() + s * arity, arity};
  }
};

/// Parallel composition with synchronisation and encapsulation. Composite
/// states are numbered breadth-first from the tuple of initials; the result is
/// identical across runs.
Product compose_product(std::span<const Lts> parts, const SyncRuleSet& sync,
                        const BlockSet& block);
Lts compose(std::span<const Lts> parts, const SyncRuleSet& sync,
            const BlockSet& block);

Lts hide(const Lts& l, const HideSet& hide_set);
Lts rename(const Lts& l, const std::function<Label(const Label&)>& map);
Lts rename(const Lts& l, const std::map<Label, Label>& map);
Lts reachable(const Lts& l);

struct LtsStats {
  std::size_t states = 0;
  std::size_t transitions = 0;
  std::set<Label> alphabet;
};
LtsStats stats(const Lts& l);

/// States without outgoing transitions.
std::vector<StateId> deadlock_states(const Lts& l);

}  // namespace paradigm
