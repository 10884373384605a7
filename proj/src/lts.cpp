#include "paradigm/lts.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <stdexcept>
#include <string_view>
#include <tuple>
#include <unordered_map>

namespace paradigm {

namespace {

struct KindSpelling {
  LabelKind kind;
  std::string_view text;
};

constexpr KindSpelling kSpellings[] = {
    {LabelKind::kAtSend, "at!"},   {LabelKind::kAtQuery, "at?"},
    {LabelKind::kOkAsk, "ok?"},    {LabelKind::kOkGrant, "ok!"},
    {LabelKind::kOk, "ok"},        {LabelKind::kMan, "man"},
    {LabelKind::kTrap, "trap"},    {LabelKind::kPlain, "plain"},
};

}  // namespace

std::string to_string(LabelKind k) {
  switch (k) {
    case LabelKind::kTau:
      return "tau";
    case LabelKind::kResult:
      return "result";
    default:
      for (const auto& s : kSpellings)
        if (s.kind == k) return std::string(s.text);
  }
  return "?";
}

std::string to_string(const Label& l) {
  if (l.is_tau()) return "tau";
  std::string out;
  if (l.kind == LabelKind::kResult ||
      (l.kind == LabelKind::kPlain && l.instance.empty()))
    out = l.name;
  else
    out = to_string(l.kind) + "(" + l.name + ")";
  if (!l.instance.empty()) out += "@" + l.instance;
  return out;
}

Label parse_label(std::string_view text) {
  if (text == "tau") return Label::tau();

  std::string instance;
  std::string_view body = text;
  if (auto at = text.rfind('@'); at != std::string_view::npos) {
    std::string_view suffix = text.substr(at + 1);
    if (!suffix.empty() &&
        suffix.find_first_of("()") == std::string_view::npos) {
      instance = std::string(suffix);
      body = text.substr(0, at);
    }
  }

  if (!body.empty() && body.back() == ')') {
    for (const auto& s : kSpellings) {
      if (body.size() > s.text.size() + 1 && body.starts_with(s.text) &&
          body[s.text.size()] == '(') {
        std::string_view name =
            body.substr(s.text.size() + 1, body.size() - s.text.size() - 2);
        return Label::make(s.kind, std::string(name), instance);
      }
    }
  }
  return Label::make(instance.empty() ? LabelKind::kPlain : LabelKind::kResult,
                     std::string(body), instance);
}

// ---------------------------------------------------------------------------

Lts::Lts(std::size_t state_count, StateId initial)
    : state_count_(state_count), initial_(initial), names_(state_count) {
  if (state_count == 0 || initial >= state_count)
    throw std::invalid_argument("initial state out of range");
}

void Lts::set_initial(StateId s) {
  if (s >= state_count_) throw std::out_of_range("initial state out of range");
  initial_ = s;
}

StateId Lts::add_state(std::string name) {
  names_.push_back(std::move(name));
  return static_cast<StateId>(state_count_++);
}

LabelId Lts::intern(const Label& l) {
  auto [it, fresh] =
      label_index_.emplace(l, static_cast<LabelId>(labels_.size()));
  if (fresh) labels_.push_back(l);
  return it->second;
}

std::optional<LabelId> Lts::find_label(const Label& l) const {
  auto it = label_index_.find(l);
  if (it == label_index_.end()) return std::nullopt;
  return it->second;
}

void Lts::add_transition(StateId source, const Label& l, StateId target) {
  add_transition(source, intern(l), target);
}

void Lts::add_transition(StateId source, LabelId l, StateId target) {
  if (source >= state_count_ || target >= state_count_ || l >= labels_.size())
    throw std::out_of_range("transition index out of range");
  transitions_.push_back({source, l, target});
  sorted_ = false;
}

void Lts::normalize() const {
  if (sorted_) return;
  std::sort(transitions_.begin(), transitions_.end());
  transitions_.erase(std::unique(transitions_.begin(), transitions_.end()),
                     transitions_.end());
  sorted_ = true;
}

const std::vector<LtsTransition>& Lts::transitions() const {
  normalize();
  return transitions_;
}

std::string Lts::state_name(StateId s) const {
  if (s < names_.size() && !names_[s].empty()) return names_[s];
  return std::to_string(s);
}

void Lts::set_state_name(StateId s, std::string name) {
  names_.at(s) = std::move(name);
}

bool operator==(const Lts& a, const Lts& b) {
  if (a.state_count_ != b.state_count_ || a.initial_ != b.initial_ ||
      a.names_ != b.names_)
    return false;
  const auto& ta = a.transitions();
  const auto& tb = b.transitions();
  if (ta.size() != tb.size()) return false;
  using Flat = std::tuple<StateId, Label, StateId>;
  auto flatten = [](const Lts& l) {
    std::vector<Flat> out;
    out.reserve(l.transitions().size());
    for (const auto& t : l.transitions())
      out.emplace_back(t.source, l.label(t.label), t.target);
    std::sort(out.begin(), out.end());
    return out;
  };
  return flatten(a) == flatten(b);
}

Successors::Successors(const Lts& l) : offsets_(l.state_count() + 1, 0) {
  const auto& ts = l.transitions();  // sorted by source
  for (const auto& t : ts) ++offsets_[t.source + 1];
  for (std::size_t s = 0; s < l.state_count(); ++s)
    offsets_[s + 1] += offsets_[s];
  edges_.reserve(ts.size());
  for (const auto& t : ts) edges_.push_back({t.label, t.target});
}

// ---------------------------------------------------------------------------

bool LabelPattern::matches(const Label& l) const {
  if (kind && *kind == l.kind) return true;
  return exact && *exact == l;
}

BlockSet::BlockSet(std::initializer_list<LabelPattern> patterns)
    : patterns_(patterns) {}

bool BlockSet::blocks(const Label& l) const {
  if (l.is_tau()) return false;
  return std::any_of(patterns_.begin(), patterns_.end(),
                     [&](const LabelPattern& p) { return p.matches(l); });
}

SyncRule::SyncRule(std::vector<Label> ops, Label res)
    : operands(std::move(ops)), result(std::move(res)) {
  if (operands.size() < 2)
    throw std::invalid_argument("a sync rule needs at least two operands");
  for (const auto& o : operands)
    if (o.is_tau()) throw std::invalid_argument("tau cannot synchronise");
  std::sort(operands.begin(), operands.end());
}

void SyncRuleSet::add(SyncRule rule) {
  auto it = index_.find(rule.operands);
  if (it != index_.end()) {
    if (rules_[it->second].result != rule.result) {
      std::string ops;
      for (const auto& o : rule.operands)
        ops += (ops.empty() ? "" : " | ") + to_string(o);
      throw std::invalid_argument("conflicting results for " + ops + ": " +
                                  to_string(rules_[it->second].result) +
                                  " vs " + to_string(rule.result));
    }
    return;
  }
  index_.emplace(rule.operands, rules_.size());
  rules_.push_back(std::move(rule));
}

void SyncRuleSet::add(std::vector<Label> operands, Label result) {
  add(SyncRule(std::move(operands), std::move(result)));
}

void SyncRuleSet::merge(const SyncRuleSet& other) {
  for (const auto& r : other.rules()) add(r);
}

// ---------------------------------------------------------------------------

namespace {

/// One way of firing a sync rule: operand i is fired by part parts[i] with
/// that part's local label labels[i].
struct Firing {
  std::vector<std::size_t> parts;
  std::vector<LabelId> labels;
  std::size_t result;  // global label id
};

class ProductBuilder {
 public:
  ProductBuilder(std::span<const Lts> parts, const SyncRuleSet& sync,
                 const BlockSet& block)
      : parts_(parts), arity_(parts.size()) {
    for (const auto& p : parts) successors_.emplace_back(p);

    local_to_global_.resize(arity_);
    for (std::size_t p = 0; p < arity_; ++p)
      for (const auto& l : parts[p].labels())
        local_to_global_[p].push_back(global(l));

    for (const auto& rule : sync.rules()) add_firings(rule);

    blocked_.resize(global_labels_.size());
    for (std::size_t g = 0; g < global_labels_.size(); ++g)
      blocked_[g] = block.blocks(global_labels_[g]);

    triggers_.resize(arity_);
    for (std::size_t p = 0; p < arity_; ++p)
      triggers_[p].resize(parts[p].labels().size());
    for (std::size_t f = 0; f < firings_.size(); ++f)
      triggers_[firings_[f].parts[0]][firings_[f].labels[0]].push_back(f);

    out_label_.assign(global_labels_.size(), kNone);
  }

  Product run() {
    Product result;
    result.arity = arity_;
    std::vector<StateId> init(arity_);
    for (std::size_t p = 0; p < arity_; ++p) init[p] = parts_[p].initial();
    result.lts = Lts(1, 0);
    insert(init, result);

    std::vector<StateId> current(arity_), next(arity_);
    for (StateId s = 0; s < result.lts.state_count(); ++s) {
      std::copy_n(result.tuples.begin() + s * arity_, arity_, current.begin());
      for (std::size_t p = 0; p < arity_; ++p) {
        auto edges = successors_[p].of(current[p]);
        for (std::size_t i = 0; i < edges.size(); ++i) {
          const auto& e = edges[i];
          const std::size_t g = local_to_global_[p][e.label];
          if (!blocked_[g]) {
            next = current;
            next[p] = e.target;
            emit(result, s, g, next);
          }
          // edges are grouped by label; trigger each label once
          if (i > 0 && edges[i - 1].label == e.label) continue;
          for (std::size_t f : triggers_[p][e.label])
            fire(result, s, current, firings_[f]);
        }
      }
    }
    result.lts.transitions();
    return result;
  }

 private:
  static constexpr LabelId kNone = static_cast<LabelId>(-1);

  std::size_t global(const Label& l) {
    auto [it, fresh] = global_index_.emplace(l, global_labels_.size());
    if (fresh) global_labels_.push_back(l);
    return it->second;
  }

  void add_firings(const SyncRule& rule) {
    const std::size_t k = rule.operands.size();
    // candidate (part, local label) per operand
    std::vector<std::vector<std::pair<std::size_t, LabelId>>> cands(k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t p = 0; p < arity_; ++p)
        if (auto id = parts_[p].find_label(rule.operands[i]))
          cands[i].emplace_back(p, *id);
    for (const auto& c : cands)
      if (c.empty()) return;  // can never fire

    const std::size_t result = global(rule.result);
    Firing f{std::vector<std::size_t>(k), std::vector<LabelId>(k), result};
    std::vector<bool> used(arity_, false);
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == k) {
        firings_.push_back(f);
        return;
      }
      for (const auto& [p, id] : cands[i]) {
        if (used[p]) continue;
        // equal operands take parts in increasing order, once per set
        if (i > 0 && rule.operands[i] == rule.operands[i - 1] &&
            p <= f.parts[i - 1])
          continue;
        used[p] = true;
        f.parts[i] = p;
        f.labels[i] = id;
        self(self, i + 1);
        used[p] = false;
      }
    };
    rec(rec, 0);
  }

  void fire(Product& result, StateId s, const std::vector<StateId>& current,
            const Firing& f) {
    const std::size_t k = f.parts.size();
    std::vector<std::span<const Successors::Edge>> choices(k);
    for (std::size_t i = 0; i < k; ++i) {
      auto edges = successors_[f.parts[i]].of(current[f.parts[i]]);
      auto lo = std::lower_bound(
          edges.begin(), edges.end(), f.labels[i],
          [](const Successors::Edge& e, LabelId l) { return e.label < l; });
      auto hi = lo;
      while (hi != edges.end() && hi->label == f.labels[i]) ++hi;
      if (lo == hi) return;
      choices[i] = {lo, hi};
    }
    std::vector<std::size_t> pick(k, 0);
    std::vector<StateId> next(current);
    while (true) {
      for (std::size_t i = 0; i < k; ++i)
        next[f.parts[i]] = choices[i][pick[i]].target;
      emit(result, s, f.result, next);
      std::size_t i = k;
      while (i > 0) {
        --i;
        if (++pick[i] < choices[i].size()) break;
        pick[i] = 0;
        if (i == 0) return;
      }
    }
  }

  StateId insert(const std::vector<StateId>& tuple, Product& result) {
    std::string key(reinterpret_cast<const char*>(tuple.data()),
                    tuple.size() * sizeof(StateId));
    auto [it, fresh] = index_.emplace(std::move(key), 0);
    if (!fresh) return it->second;
    StateId id;
    if (index_.size() == 1) {
      id = 0;
    } else {
      id = result.lts.add_state();
    }
    it->second = id;
    result.tuples.insert(result.tuples.end(), tuple.begin(), tuple.end());
    if (has_names()) result.lts.set_state_name(id, composite_name(tuple));
    return id;
  }

  void emit(Product& result, StateId s, std::size_t g,
            const std::vector<StateId>& next) {
    const StateId t = insert(next, result);
    if (out_label_[g] == kNone) out_label_[g] = result.lts.intern(global_labels_[g]);
    result.lts.add_transition(s, out_label_[g], t);
  }

  bool has_names() {
    if (!names_checked_) {
      names_checked_ = true;
      for (const auto& p : parts_)
        for (const auto& n : p.state_names())
          if (!n.empty()) named_ = true;
    }
    return named_;
  }

  std::string composite_name(const std::vector<StateId>& tuple) const {
    std::string out = "(";
    for (std::size_t p = 0; p < arity_; ++p) {
      if (p) out += ',';
      out += parts_[p].state_name(tuple[p]);
    }
    return out + ")";
  }

  std::span<const Lts> parts_;
  std::size_t arity_;
  std::vector<Successors> successors_;
  std::vector<Label> global_labels_;
  std::map<Label, std::size_t> global_index_;
  std::vector<std::vector<std::size_t>> local_to_global_;
  std::vector<bool> blocked_;
  std::vector<Firing> firings_;
  std::vector<std::vector<std::vector<std::size_t>>> triggers_;
  std::vector<LabelId> out_label_;
  std::unordered_map<std::string, StateId> index_;
  bool names_checked_ = false;
  bool named_ = false;
};

}  // namespace

Product compose_product(std::span<const Lts> parts, const SyncRuleSet& sync,
                        const BlockSet& block) {
  if (parts.empty()) throw std::invalid_argument("compose: no parts");
  return ProductBuilder(parts, sync, block).run();
}

Lts compose(std::span<const Lts> parts, const SyncRuleSet& sync,
            const BlockSet& block) {
  return compose_product(parts, sync, block).lts;
}

Lts hide(const Lts& l, const HideSet& hide_set) {
  return rename(l, [&](const Label& x) {
    return hide_set.blocks(x) ? Label::tau() : x;
  });
}

Lts rename(const Lts& l, const std::function<Label(const Label&)>& map) {
  Lts out(l.state_count(), l.initial());
  for (StateId s = 0; s < l.state_count(); ++s)
    out.set_state_name(s, l.state_names()[s]);
  std::vector<LabelId> relabel;
  relabel.reserve(l.labels().size());
  for (const auto& x : l.labels()) relabel.push_back(out.intern(map(x)));
  for (const auto& t : l.transitions())
    out.add_transition(t.source, relabel[t.label], t.target);
  out.transitions();
  return out;
}

Lts rename(const Lts& l, const std::map<Label, Label>& map) {
  return rename(l, [&](const Label& x) {
    auto it = map.find(x);
    return it == map.end() ? x : it->second;
  });
}

Lts reachable(const Lts& l) {
  constexpr StateId kUnseen = static_cast<StateId>(-1);
  Successors succ(l);
  std::vector<StateId> number(l.state_count(), kUnseen);
  std::vector<StateId> order{l.initial()};
  number[l.initial()] = 0;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (const auto& e : succ.of(order[i]))
      if (number[e.target] == kUnseen) {
        number[e.target] = static_cast<StateId>(order.size());
        order.push_back(e.target);
      }

  Lts out(order.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i)
    out.set_state_name(static_cast<StateId>(i), l.state_names()[order[i]]);
  for (const auto& x : l.labels()) out.intern(x);
  for (const auto& t : l.transitions())
    if (number[t.source] != kUnseen)
      out.add_transition(number[t.source], t.label, number[t.target]);
  out.transitions();
  return out;
}

LtsStats stats(const Lts& l) {
  LtsStats s;
  s.states = l.state_count();
  s.transitions = l.transitions().size();
  for (const auto& t : l.transitions()) s.alphabet.insert(l.label(t.label));
  return s;
}

std::vector<StateId> deadlock_states(const Lts& l) {
  std::vector<bool> has_out(l.state_count(), false);
  for (const auto& t : l.transitions()) has_out[t.source] = true;
  std::vector<StateId> out;
  for (StateId s = 0; s < l.state_count(); ++s)
    if (!has_out[s]) out.push_back(s);
  return out;
}

}  // namespace paradigm
