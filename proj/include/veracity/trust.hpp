#pragma once

#include <optional>
#include <vector>

#include "veracity/core.hpp"

namespace veracity {

// Moves `j` from its actor to `truster`, scaling the weight by the edge
// truster -> j.actor. Throws UnknownTrustEdge.
Judgement apply_trust(const Judgement& j, const TrustRelation& rel, const ActorId& truster);

// Product of the edge weights along `path` (a single actor gives 1).
// Throws BrokenPath when a consecutive pair has no edge.
Weight path_weight(const TrustRelation& rel, const std::vector<ActorId>& path);

struct TrustPath {
  Weight weight;
  std::vector<ActorId> path;
};

// Highest-product simple path; ties go to the shorter path, then to the
// lexicographically smaller actor sequence.
std::optional<TrustPath> best_trust(const TrustRelation& rel, const ActorId& from, const ActorId& to);

enum class Comparison { StarBetter, ChainBetter, Equal };

// Star hub weight `star` against the product of `chain`.
Comparison compare_chain_star(const std::vector<Weight>& chain, const Weight& star);

}  // namespace veracity
