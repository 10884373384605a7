#include "paradigm/bisim.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

namespace paradigm {

namespace {

constexpr StateId kNone = static_cast<StateId>(-1);

std::string block_name(const Lts& l, const std::vector<StateId>& members) {
  if (members.size() == 1) return l.state_names()[members.front()];
  std::vector<std::string> names;
  for (StateId s : members) names.push_back(l.state_name(s));
  std::sort(names.begin(), names.end());
  std::string out = "{";
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ',';
    out += names[i];
  }
  return out + "}";
}

/// Renumbers blocks by smallest member and returns the count.
std::size_t canonical_numbering(std::vector<StateId>& block_of) {
  std::vector<StateId> renumber(block_of.size(), kNone);
  StateId next = 0;
  for (auto& b : block_of) {
    if (renumber[b] == kNone) renumber[b] = next++;
    b = renumber[b];
  }
  return next;
}

/// Quotient of `l` under a partition: one state per block and every
/// transition except tau steps inside a block.
BlockMap quotient_by(const Lts& l, std::vector<StateId> block_of,
                     std::size_t blocks) {
  std::vector<std::vector<StateId>> members(blocks);
  for (StateId s = 0; s < l.state_count(); ++s)
    members[block_of[s]].push_back(s);

  BlockMap out{Lts(blocks, block_of[l.initial()]), std::move(block_of)};
  for (std::size_t b = 0; b < blocks; ++b)
    out.lts.set_state_name(static_cast<StateId>(b), block_name(l, members[b]));
  for (const auto& x : l.labels()) out.lts.intern(x);
  for (const auto& t : l.transitions()) {
    const StateId from = out.block_of[t.source];
    const StateId to = out.block_of[t.target];
    if (from == to && l.label(t.label).is_tau()) continue;
    out.lts.add_transition(from, t.label, to);
  }
  out.lts.transitions();
  return out;
}

/// Tarjan's algorithm over tau edges, iterative.
std::vector<StateId> tau_components(const Lts& l) {
  const std::size_t n = l.state_count();
  std::vector<std::vector<StateId>> tau(n);
  for (const auto& t : l.transitions())
    if (l.label(t.label).is_tau()) tau[t.source].push_back(t.target);

  std::vector<StateId> index(n, kNone), low(n, 0), comp(n, kNone);
  std::vector<StateId> stack;
  std::vector<bool> on_stack(n, false);
  StateId counter = 0, comps = 0;
  std::vector<std::pair<StateId, std::size_t>> frames;

  for (StateId root = 0; root < n; ++root) {
    if (index[root] != kNone) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, i] = frames.back();
      if (i < tau[v].size()) {
        const StateId w = tau[v][i++];
        if (index[w] == kNone) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      const StateId done = v;
      frames.pop_back();
      if (!frames.empty())
        low[frames.back().first] = std::min(low[frames.back().first], low[done]);
      if (low[done] == index[done]) {
        StateId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = comps;
        } while (w != done);
        ++comps;
      }
    }
  }
  return comp;
}

using Signature = std::vector<std::pair<LabelId, StateId>>;

/// Signature refinement on a tau-acyclic LTS. `on_round` sees the partition
/// after every round.
template <class OnRound>
std::vector<StateId> refine(const Lts& l, std::vector<std::size_t>& history,
                            OnRound&& on_round) {
  const std::size_t n = l.state_count();
  Successors succ(l);

  // Reverse topological order of the tau graph: tau successors come first.
  std::vector<StateId> order;
  {
    std::vector<std::size_t> pending(n, 0);
    std::vector<std::vector<StateId>> preds(n);
    for (const auto& t : l.transitions())
      if (l.label(t.label).is_tau()) {
        ++pending[t.source];
        preds[t.target].push_back(t.source);
      }
    for (StateId s = 0; s < n; ++s)
      if (pending[s] == 0) order.push_back(s);
    for (std::size_t i = 0; i < order.size(); ++i)
      for (StateId p : preds[order[i]])
        if (--pending[p] == 0) order.push_back(p);
    if (order.size() != n)
      throw std::logic_error("refine: tau cycles must be collapsed first");
  }

  std::vector<StateId> block(n, 0);
  std::size_t count = n ? 1 : 0;
  history.assign(1, count);
  on_round(block, std::size_t{0});
  std::vector<Signature> sig(n);

  for (std::size_t round = 1;; ++round) {
    for (StateId s : order) {
      Signature& out = sig[s];
      out.clear();
      for (const auto& e : succ.of(s)) {
        if (l.label(e.label).is_tau() && block[e.target] == block[s]) {
          const auto& inner = sig[e.target];
          out.insert(out.end(), inner.begin(), inner.end());
        } else {
          out.emplace_back(e.label, block[e.target]);
        }
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
    }

    std::map<std::pair<StateId, const Signature*>, StateId,
             bool (*)(const std::pair<StateId, const Signature*>&,
                      const std::pair<StateId, const Signature*>&)>
        ids([](const auto& a, const auto& b) {
          if (a.first != b.first) return a.first < b.first;
          return *a.second < *b.second;
        });
    std::vector<StateId> next(n);
    for (StateId s = 0; s < n; ++s) {
      auto [it, fresh] = ids.emplace(std::make_pair(block[s], &sig[s]),
                                     static_cast<StateId>(ids.size()));
      next[s] = it->second;
    }
    const std::size_t next_count = canonical_numbering(next);
    block = std::move(next);
    history.push_back(next_count);
    on_round(block, round);
    if (next_count == count) break;
    count = next_count;
  }
  return block;
}

}  // namespace

BlockMap collapse_tau_scc(const Lts& l) {
  auto comp = tau_components(l);
  const std::size_t count = canonical_numbering(comp);
  return quotient_by(l, std::move(comp), count);
}

StatePartition branching_partition(const Lts& l) {
  BlockMap collapsed = collapse_tau_scc(l);
  StatePartition out;
  auto blocks = refine(collapsed.lts, out.history, [](const auto&, auto) {});
  out.block_of.resize(l.state_count());
  for (StateId s = 0; s < l.state_count(); ++s)
    out.block_of[s] = blocks[collapsed.block_of[s]];
  out.block_count = canonical_numbering(out.block_of);
  return out;
}

BlockMap branching_quotient(const Lts& l) {
  StatePartition p = branching_partition(l);
  return quotient_by(l, std::move(p.block_of), p.block_count);
}

Lts disjoint_union(const Lts& a, const Lts& b) {
  Lts out(a.state_count() + b.state_count(), a.initial());
  const auto offset = static_cast<StateId>(a.state_count());
  for (StateId s = 0; s < a.state_count(); ++s)
    out.set_state_name(s, a.state_names()[s]);
  for (StateId s = 0; s < b.state_count(); ++s)
    out.set_state_name(offset + s, b.state_names()[s]);
  for (const auto& t : a.transitions())
    out.add_transition(t.source, a.label(t.label), t.target);
  for (const auto& t : b.transitions())
    out.add_transition(offset + t.source, b.label(t.label), offset + t.target);
  out.transitions();
  return out;
}

EquivalenceResult equivalent(const Lts& a, const Lts& b) {
  const Lts u = disjoint_union(a, b);
  const StateId ia = a.initial();
  const StateId ib = static_cast<StateId>(a.state_count()) + b.initial();

  BlockMap collapsed = collapse_tau_scc(u);
  const StateId ca = collapsed.block_of[ia];
  const StateId cb = collapsed.block_of[ib];

  EquivalenceResult result;
  std::vector<std::size_t> history;
  const auto blocks = refine(
      collapsed.lts, history, [&](const std::vector<StateId>& block, auto round) {
        if (!result.separated_in_round && block[ca] != block[cb])
          result.separated_in_round = round;
      });
  result.equivalent = blocks[ca] == blocks[cb];
  if (result.equivalent) {
    result.report = "initial states are branching bisimilar (" +
                    std::to_string(history.size() - 1) + " refinement rounds)";
  } else {
    result.report = "initial states separated in refinement round " +
                    std::to_string(*result.separated_in_round) + " of " +
                    std::to_string(history.size() - 1) + "; blocks " +
                    std::to_string(blocks[ca]) + " vs " +
                    std::to_string(blocks[cb]);
  }
  return result;
}

bool oracle_equivalent(const Lts& a, const Lts& b, std::size_t max_states) {
  const std::size_t n = a.state_count() + b.state_count();
  if (n > max_states)
    throw std::length_error("oracle_equivalent: " + std::to_string(n) +
                            " states exceed the bound of " +
                            std::to_string(max_states));
  const Lts u = disjoint_union(a, b);
  const StateId ia = a.initial();
  const StateId ib = static_cast<StateId>(a.state_count()) + b.initial();

  struct Move {
    LabelId label;
    bool tau;
    StateId target;
  };
  std::vector<std::vector<Move>> moves(n);
  for (const auto& t : u.transitions())
    moves[t.source].push_back({t.label, u.label(t.label).is_tau(), t.target});

  std::vector<std::vector<char>> related(n, std::vector<char>(n, 1));
  std::vector<char> seen(n);
  std::vector<StateId> stack;

  // Can t answer every move of s while related to s?
  auto transfers = [&](StateId s, StateId t) {
    // states reachable from t by tau steps that stay related to s
    std::fill(seen.begin(), seen.end(), 0);
    std::vector<StateId> reach{t};
    seen[t] = 1;
    stack.assign(1, t);
    while (!stack.empty()) {
      const StateId v = stack.back();
      stack.pop_back();
      for (const auto& m : moves[v])
        if (m.tau && !seen[m.target] && related[s][m.target]) {
          seen[m.target] = 1;
          reach.push_back(m.target);
          stack.push_back(m.target);
        }
    }
    for (const auto& step : moves[s]) {
      if (step.tau && related[step.target][t]) continue;
      bool matched = false;
      for (StateId v : reach) {
        for (const auto& m : moves[v])
          if (m.label == step.label && related[step.target][m.target]) {
            matched = true;
            break;
          }
        if (matched) break;
      }
      if (!matched) return false;
    }
    return true;
  };

  for (bool changed = true; changed;) {
    changed = false;
    for (StateId s = 0; s < n; ++s)
      for (StateId t = 0; t < n; ++t)
        if (related[s][t] && !transfers(s, t)) {
          related[s][t] = related[t][s] = 0;
          changed = true;
        }
  }
  return related[ia][ib];
}

}  // namespace paradigm
