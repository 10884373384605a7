#pragma once

#include <optional>
#include <string>
#include <vector>

#include "paradigm/lts.hpp"

namespace paradigm {

/// Blocks of LTS states; blocks are numbered by their smallest member.
struct StatePartition {
  std::vector<StateId> block_of;
  std::size_t block_count = 0;
  /// Block count after each refinement round (round 0 = initial partition).
  std::vector<std::size_t> history;
};

/// A quotient LTS together with the map from original states onto it.
struct BlockMap {
  Lts lts;
  std::vector<StateId> block_of;
};

/// Merges every strongly connected component of the tau-graph into one state.
/// Tau self-loops produced by the merge are dropped.
BlockMap collapse_tau_scc(const Lts& l);

/// Coarsest divergence-blind branching bisimulation on the states of `l`.
StatePartition branching_partition(const Lts& l);

/// Minimises `l` modulo branching bisimulation. The result has no tau
/// self-loops and no two distinct bisimilar states.
BlockMap branching_quotient(const Lts& l);

struct EquivalenceResult {
  bool equivalent = false;
  /// Refinement round that first put the two initial states apart.
  std::optional<std::size_t> separated_in_round;
  std::string report;

  explicit operator bool() const { return equivalent; }
};

/// Branching bisimilarity of the initial states of `a` and `b`.
EquivalenceResult equivalent(const Lts& a, const Lts& b);

/// Naive greatest fixpoint straight over the transfer condition, without tau
/// cycle collapse or signatures. Quadratic in memory and meant for small
/// inputs; throws std::length_error when a.states + b.states > max_states.
bool oracle_equivalent(const Lts& a, const Lts& b, std::size_t max_states = 200);

/// States of `a` followed by the states of `b` (offset by a.state_count()).
/// The initial state is that of `a`.
Lts disjoint_union(const Lts& a, const Lts& b);

}  // namespace paradigm
