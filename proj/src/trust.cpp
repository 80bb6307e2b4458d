#include "veracity/trust.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace veracity {

Judgement apply_trust(const Judgement& j, const TrustRelation& rel, const ActorId& truster) {
  auto w = rel.weight(truster, j.actor);
  if (!w) {
    throw Error(ErrorCode::UnknownTrustEdge, "relation " + rel.name() + " has no edge " +
                                                 truster.name() + " -> " + j.actor.name());
  }
  Judgement out = j;
  out.actor = truster;
  out.weight = weight_mul(*w, j.weight);
  return out;
}

Weight path_weight(const TrustRelation& rel, const std::vector<ActorId>& path) {
  if (path.empty()) throw Error(ErrorCode::BrokenPath, "empty trust path");
  Weight total = Weight::one();
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    auto w = rel.weight(path[i], path[i + 1]);
    if (!w) {
      throw Error(ErrorCode::BrokenPath, "no edge " + path[i].name() + " -> " + path[i + 1].name() +
                                             " in relation " + rel.name());
    }
    total = weight_mul(total, *w);
  }
  return total;
}

namespace {

bool better(const TrustPath& a, const TrustPath& b, bool ignore_weights) {
  if (!ignore_weights && !(a.weight == b.weight)) return a.weight > b.weight;
  if (a.path.size() != b.path.size()) return a.path.size() < b.path.size();
  return a.path < b.path;
}

// Label-setting search. The ordering (weight desc, length asc, path lex asc)
// is preserved by extending two paths with the same positive-weight edge,
// so the first label settled for a node is optimal.
std::optional<TrustPath> settle(const TrustRelation& rel, const ActorId& from, const ActorId& to,
                                bool positive_only) {
  bool ignore_weights = !positive_only;
  std::map<ActorId, TrustPath> tentative;
  std::set<ActorId> done;
  tentative.emplace(from, TrustPath{Weight::one(), {from}});

  while (!tentative.empty()) {
    auto best = tentative.begin();
    for (auto it = tentative.begin(); it != tentative.end(); ++it)
      if (better(it->second, best->second, ignore_weights)) best = it;
    TrustPath current = best->second;
    ActorId node = best->first;
    tentative.erase(best);
    if (node == to) {
      if (ignore_weights) current.weight = path_weight(rel, current.path);
      return current;
    }
    done.insert(node);

    for (const auto& [next, w] : rel.trusted_by(node)) {
      if (done.count(next) || next == node) continue;
      if (positive_only && w.value() == 0) continue;
      TrustPath candidate{weight_mul(current.weight, w), current.path};
      candidate.path.push_back(next);
      auto it = tentative.find(next);
      if (it == tentative.end()) {
        tentative.emplace(next, std::move(candidate));
      } else if (better(candidate, it->second, ignore_weights)) {
        it->second = std::move(candidate);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<TrustPath> best_trust(const TrustRelation& rel, const ActorId& from, const ActorId& to) {
  if (from == to) return TrustPath{Weight::one(), {from}};
  if (auto found = settle(rel, from, to, true)) return found;
  // Only zero-weight routes remain: all weigh 0, so prefer the shortest.
  return settle(rel, from, to, false);
}

Comparison compare_chain_star(const std::vector<Weight>& chain, const Weight& star) {
  if (chain.empty()) throw Error(ErrorCode::InvalidConfig, "chain must have at least one edge");
  Rational product = 1;
  for (const auto& w : chain) product *= w.value();
  if (star.value() > product) return Comparison::StarBetter;
  if (star.value() < product) return Comparison::ChainBetter;
  return Comparison::Equal;
}

}  // namespace veracity
