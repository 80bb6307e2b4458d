#pragma once

// Depth-bounded enumeration of *all* proofs of a goal. A partial proof is a
// rule-labelled tree with holes; `step` proposes every one-node expansion of
// a hole and `one_level_deeper` fills the shallowest holes at once. Evidence
// and assumption lists are not tracked during search: they are recomputed by
// the kernel when a tree is complete.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "veracity/kernel.hpp"

namespace veracity {

struct Goal {
  ActorId actor;
  Claim claim;
  // Variable assumptions introduced by enclosing binders, outermost first.
  std::vector<Judgement> hypotheses;

  bool operator==(const Goal&) const = default;
};

class PartialProof {
 public:
  struct Hole {
    Goal goal;
    bool operator==(const Hole&) const = default;
  };
  struct Node {
    Goal goal;
    RuleInstance instance;
    std::vector<PartialProof> premises;
    bool operator==(const Node&) const = default;
  };

  static PartialProof hole(Goal goal) { return PartialProof(Hole{std::move(goal)}); }
  static PartialProof node(Goal goal, RuleInstance instance, std::vector<PartialProof> premises) {
    return PartialProof(Node{std::move(goal), std::move(instance), std::move(premises)});
  }

  bool is_hole() const noexcept { return std::holds_alternative<Hole>(value_); }
  const Node* as_node() const noexcept { return std::get_if<Node>(&value_); }
  const Goal& goal() const noexcept;

  bool complete() const;
  std::size_t hole_count() const;
  // Paths (child indices from the root) of every hole, in pre-order.
  std::vector<std::vector<std::size_t>> hole_paths() const;
  // Nullptr when the path leaves the tree.
  const PartialProof* at(const std::vector<std::size_t>& path) const;
  // Copy with the subtree at `path` replaced.
  PartialProof replaced(const std::vector<std::size_t>& path, PartialProof subtree) const;

  bool operator==(const PartialProof&) const = default;

 private:
  explicit PartialProof(std::variant<Hole, Node> v) : value_(std::move(v)) {}
  std::variant<Hole, Node> value_;
};

// Assume and the introduction rules plus Trust; elimination rules can be
// enabled explicitly.
std::set<RuleName> default_rules();

struct StepConfig {
  std::vector<Judgement> assumables;
  std::vector<TrustEdge> trust_edges;
  std::set<RuleName> enabled_rules = default_rules();
  std::size_t depth_limit = 5;
  std::size_t max_proofs = 1000;

  // Throws InvalidConfig when a limit is zero or the edges are inconsistent.
  void validate() const;
  TrustEnv trust_env() const;
};

Goal make_goal(ActorId actor, Claim claim);

// Every one-node expansion of `goal`: assumptions first, then the enabled
// rules in RuleName order.
std::vector<PartialProof> step(const StepConfig& cfg, const Goal& goal);

// Fills every hole at the shallowest hole depth with each combination of
// `step` results (the first hole varies fastest). A complete proof comes
// back unchanged; a hole with no expansion kills the branch.
std::vector<PartialProof> one_level_deeper(const StepConfig& cfg, const PartialProof& p);

// Rebuilds a complete partial proof bottom-up through the kernel. Nothing
// when a schema side condition fails (e.g. an elimination over evidence of
// the wrong shape). Throws InvalidTree when holes remain.
std::optional<ProofTree> to_proof_tree(const PartialProof& p, const TrustEnv& trust);

// All structurally distinct complete proofs within cfg.depth_limit levels,
// in the order they complete, at most cfg.max_proofs of them. Every result
// has passed `check`.
std::vector<ProofTree> search(const StepConfig& cfg, const Goal& goal);

// Renames the variables bound by a candidate expansion (ImplIntro,
// AndElimSplit, OrElimCases). Throws InvalidConfig on a clash or a count
// mismatch.
PartialProof rebind_candidate(const PartialProof& candidate, const std::vector<std::string>& names);

}  // namespace veracity
