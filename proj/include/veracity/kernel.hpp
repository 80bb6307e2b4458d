#pragma once

// Rule schemas and proof trees. `apply_rule` is the only way the library
// builds a tree node; `check` re-derives every node of an arbitrary tree
// (e.g. one read from disk) and reports where it diverges.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "veracity/core.hpp"

namespace veracity {

enum class RuleName {
  Assume,
  BotElim,
  AndIntro,
  AndElim1,
  AndElim2,
  AndElimSplit,
  OrIntro1,
  OrIntro2,
  OrElim1,
  OrElim2,
  OrElimCases,
  ImplIntro,
  ImplElim,
  Trust,
};

inline constexpr RuleName kAllRules[] = {
    RuleName::Assume,   RuleName::BotElim,     RuleName::AndIntro,  RuleName::AndElim1,
    RuleName::AndElim2, RuleName::AndElimSplit, RuleName::OrIntro1, RuleName::OrIntro2,
    RuleName::OrElim1,  RuleName::OrElim2,     RuleName::OrElimCases, RuleName::ImplIntro,
    RuleName::ImplElim, RuleName::Trust,
};

std::string_view to_string(RuleName rule);
// Throws ParseError for unknown names.
RuleName rule_from_string(std::string_view name);

// Which evidence an implication elimination concludes with.
enum class ImplElimForm {
  Beta,  // substitute the argument into the lambda body
  App,   // keep the non-canonical app(c, a)
};

namespace rule {
struct Assume {
  Judgement assumed;  // evidence must be a name or a variable
  bool operator==(const Assume&) const = default;
};
struct BotElim {
  Claim target;
  bool operator==(const BotElim&) const = default;
};
struct AndIntro {
  bool operator==(const AndIntro&) const = default;
};
struct AndElim1 {
  bool operator==(const AndElim1&) const = default;
};
struct AndElim2 {
  bool operator==(const AndElim2&) const = default;
};
struct AndElimSplit {
  std::string first_var;
  std::string second_var;
  bool operator==(const AndElimSplit&) const = default;
};
struct OrIntro1 {
  Claim right;  // the disjunct not witnessed
  bool operator==(const OrIntro1&) const = default;
};
struct OrIntro2 {
  Claim left;
  bool operator==(const OrIntro2&) const = default;
};
struct OrElim1 {
  bool operator==(const OrElim1&) const = default;
};
struct OrElim2 {
  bool operator==(const OrElim2&) const = default;
};
struct OrElimCases {
  std::string left_var;
  std::string right_var;
  bool operator==(const OrElimCases&) const = default;
};
struct ImplIntro {
  Judgement discharged;  // evidence must be a variable
  bool operator==(const ImplIntro&) const = default;
};
struct ImplElim {
  ImplElimForm form = ImplElimForm::Beta;
  bool operator==(const ImplElim&) const = default;
};
struct Trust {
  TrustEdge edge;
  bool operator==(const Trust&) const = default;
};
}  // namespace rule

// Alternatives are in RuleName order, so index() is the rule.
struct RuleInstance {
  using Params = std::variant<rule::Assume, rule::BotElim, rule::AndIntro, rule::AndElim1,
                              rule::AndElim2, rule::AndElimSplit, rule::OrIntro1, rule::OrIntro2,
                              rule::OrElim1, rule::OrElim2, rule::OrElimCases, rule::ImplIntro,
                              rule::ImplElim, rule::Trust>;
  Params params;

  template <class T>
    requires std::is_constructible_v<Params, T&&>
  RuleInstance(T&& p) : params(std::forward<T>(p)) {}  // NOLINT(google-explicit-constructor)

  RuleName name() const noexcept { return static_cast<RuleName>(params.index()); }
  template <class T>
  const T* as() const noexcept {
    return std::get_if<T>(&params);
  }

  bool operator==(const RuleInstance&) const = default;
};

std::size_t rule_arity(RuleName rule);

struct ProofTree {
  Sequent conclusion;
  RuleInstance instance;
  std::vector<ProofTree> premises;

  bool operator==(const ProofTree&) const = default;

  std::size_t node_count() const;
};

// Named trust relations in scope for a derivation.
class TrustEnv {
 public:
  TrustEnv() = default;
  explicit TrustEnv(std::vector<TrustRelation> relations);

  void add(TrustRelation relation);
  const TrustRelation* find(const std::string& name) const;
  // True when the edge (or an implicit self-edge) exists with exactly that weight.
  bool admits(const TrustEdge& edge) const;
  const std::map<std::string, TrustRelation>& relations() const noexcept { return relations_; }

 private:
  std::map<std::string, TrustRelation> relations_;
};

// Weight carried by the conclusion of a multi-premise logical rule.
Weight combine_premise_weights(const std::vector<Weight>& weights);

// Conclusion the schema assigns to `instance` over premises with the given
// conclusions. Throws Error with the schema's error code.
Sequent derive(const RuleInstance& instance, const std::vector<Sequent>& premises,
               const TrustEnv& trust = {});

ProofTree apply_rule(const RuleInstance& instance, std::vector<ProofTree> premises,
                     const TrustEnv& trust = {});

struct Violation {
  std::vector<std::size_t> path;  // child indices from the root
  ErrorCode code;
  std::string message;
};

struct CheckReport {
  bool ok = true;
  std::vector<Violation> violations;
};

std::string path_to_string(const std::vector<std::size_t>& path);

CheckReport check(const ProofTree& tree, const TrustEnv& trust = {});

struct UsedAssumption {
  Judgement judgement;
  bool discharged;
};

// Assumption leaves plus judgements discharged by implication introduction,
// in first-occurrence order (pre-order). Throws InvalidTree when the tree
// does not check.
std::vector<UsedAssumption> assumptions_used(const ProofTree& tree, const TrustEnv& trust = {});

std::vector<TrustEdge> trust_edges_used(const ProofTree& tree, const TrustEnv& trust = {});

}  // namespace veracity
