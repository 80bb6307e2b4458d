#include "veracity/kernel.hpp"

#include <algorithm>
#include <array>

namespace veracity {

namespace {

constexpr std::array<std::string_view, 14> kRuleNames = {
    "Assume",  "BotElim", "AndIntro", "AndElim1",    "AndElim2",  "AndElimSplit", "OrIntro1",
    "OrIntro2", "OrElim1", "OrElim2", "OrElimCases", "ImplIntro", "ImplElim",     "Trust",
};

[[noreturn]] void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

void same_actor(const Judgement& a, const Judgement& b) {
  if (!(a.actor == b.actor)) {
    fail(ErrorCode::ActorMismatch, "premises are held by different actors ('" + a.actor.name() +
                                       "' and '" + b.actor.name() + "')");
  }
}

const Claim& expect_kind(const Judgement& j, Claim::Kind kind, const char* what) {
  if (j.claim.kind() != kind) fail(ErrorCode::ClaimMismatch, std::string("premise claim is not ") + what);
  return j.claim;
}

// Binds `var` on a branch: the hypothesis it discharges and the remaining
// context, which must not mention the variable any more.
Context discharge_hypothesis(const Context& ctx, const Judgement& hypothesis) {
  const auto* var = hypothesis.evidence.as<ev::Var>();
  Context rest;
  for (const auto& j : ctx) {
    if (j == hypothesis) continue;
    if (occurs_free(j.evidence, var->name)) {
      fail(ErrorCode::FreshnessViolation,
           "variable '" + var->name + "' is still used by a remaining assumption");
    }
    rest.add(j);
  }
  return rest;
}

Judgement hypothesis(const std::string& var, const ActorId& actor, const Claim& claim) {
  return Judgement{Evidence::var(var), actor, Weight::one(), claim};
}

// True when `var` is bound again by a binder somewhere inside `e`.
bool rebinds(const Evidence& e, const std::string& var) {
  return std::visit(
      overloaded{
          [](const ev::Atom&) { return false; },
          [](const ev::Var&) { return false; },
          [&](const ev::Pair& p) { return rebinds(p.first, var) || rebinds(p.second, var); },
          [&](const ev::TagLeft& t) { return rebinds(t.inner, var); },
          [&](const ev::TagRight& t) { return rebinds(t.inner, var); },
          [&](const ev::Lambda& l) { return l.var == var || rebinds(l.body, var); },
          [&](const ev::App& a) { return rebinds(a.fn, var) || rebinds(a.arg, var); },
          [&](const ev::Cases& c) {
            return c.left_var == var || c.right_var == var || rebinds(c.scrutinee, var) ||
                   rebinds(c.left, var) || rebinds(c.right, var);
          },
          [&](const ev::Split& s) {
            return s.first_var == var || s.second_var == var || rebinds(s.scrutinee, var) ||
                   rebinds(s.body, var);
          },
      },
      e.node());
}

struct Deriver {
  const std::vector<Sequent>& p;
  const TrustEnv& trust;

  const Judgement& j(std::size_t i) const { return p[i].conclusion; }
  const Context& ctx(std::size_t i) const { return p[i].assumptions; }

  Sequent operator()(const rule::Assume& r) const {
    const auto& e = r.assumed.evidence;
    if (!e.is<ev::Atom>() && !e.is<ev::Var>()) {
      fail(ErrorCode::EvidenceShapeMismatch, "only names and variables can be assumed");
    }
    return Sequent{Context({r.assumed}), r.assumed};
  }

  Sequent operator()(const rule::BotElim& r) const {
    expect_kind(j(0), Claim::Kind::Bottom, "bottom");
    Judgement out = j(0);
    out.claim = r.target;
    return Sequent{ctx(0), out};
  }

  Sequent operator()(const rule::AndIntro&) const {
    same_actor(j(0), j(1));
    return Sequent{ctx_union(ctx(0), ctx(1)),
                   Judgement{Evidence::pair(j(0).evidence, j(1).evidence), j(0).actor,
                             combine_premise_weights({j(0).weight, j(1).weight}),
                             Claim::conj(j(0).claim, j(1).claim)}};
  }

  Sequent and_elim(bool first) const {
    const Claim& c = expect_kind(j(0), Claim::Kind::And, "a conjunction");
    const auto* pair = j(0).evidence.as<ev::Pair>();
    if (!pair) fail(ErrorCode::EvidenceShapeMismatch, "evidence for the conjunction is not a pair");
    Judgement out = j(0);
    out.evidence = first ? pair->first : pair->second;
    out.claim = first ? c.left() : c.right();
    return Sequent{ctx(0), out};
  }
  Sequent operator()(const rule::AndElim1&) const { return and_elim(true); }
  Sequent operator()(const rule::AndElim2&) const { return and_elim(false); }

  Sequent operator()(const rule::AndElimSplit& r) const {
    const Claim& c = expect_kind(j(0), Claim::Kind::And, "a conjunction");
    same_actor(j(0), j(1));
    if (r.first_var == r.second_var) {
      fail(ErrorCode::FreshnessViolation, "split binds '" + r.first_var + "' twice");
    }
    Context branch = discharge_hypothesis(ctx(1), hypothesis(r.first_var, j(0).actor, c.left()));
    branch = discharge_hypothesis(branch, hypothesis(r.second_var, j(0).actor, c.right()));
    return Sequent{ctx_union(ctx(0), branch),
                   Judgement{Evidence::split(j(0).evidence, r.first_var, r.second_var, j(1).evidence),
                             j(0).actor, combine_premise_weights({j(0).weight, j(1).weight}),
                             j(1).claim}};
  }

  Sequent operator()(const rule::OrIntro1& r) const {
    Judgement out = j(0);
    out.evidence = Evidence::tag_left(j(0).evidence);
    out.claim = Claim::disj(j(0).claim, r.right);
    return Sequent{ctx(0), out};
  }

  Sequent operator()(const rule::OrIntro2& r) const {
    Judgement out = j(0);
    out.evidence = Evidence::tag_right(j(0).evidence);
    out.claim = Claim::disj(r.left, j(0).claim);
    return Sequent{ctx(0), out};
  }

  Sequent or_elim(bool left) const {
    const Claim& c = expect_kind(j(0), Claim::Kind::Or, "a disjunction");
    Judgement out = j(0);
    if (left) {
      const auto* tag = j(0).evidence.as<ev::TagLeft>();
      if (!tag) fail(ErrorCode::EvidenceShapeMismatch, "evidence is not tagged i(...)");
      out.evidence = tag->inner;
      out.claim = c.left();
    } else {
      const auto* tag = j(0).evidence.as<ev::TagRight>();
      if (!tag) fail(ErrorCode::EvidenceShapeMismatch, "evidence is not tagged j(...)");
      out.evidence = tag->inner;
      out.claim = c.right();
    }
    return Sequent{ctx(0), out};
  }
  Sequent operator()(const rule::OrElim1&) const { return or_elim(true); }
  Sequent operator()(const rule::OrElim2&) const { return or_elim(false); }

  Sequent operator()(const rule::OrElimCases& r) const {
    const Claim& c = expect_kind(j(0), Claim::Kind::Or, "a disjunction");
    same_actor(j(0), j(1));
    same_actor(j(0), j(2));
    if (!(j(1).claim == j(2).claim)) fail(ErrorCode::ClaimMismatch, "case branches conclude different claims");
    Context left = discharge_hypothesis(ctx(1), hypothesis(r.left_var, j(0).actor, c.left()));
    Context right = discharge_hypothesis(ctx(2), hypothesis(r.right_var, j(0).actor, c.right()));
    return Sequent{
        ctx_union(ctx_union(ctx(0), left), right),
        Judgement{Evidence::cases(j(0).evidence, r.left_var, j(1).evidence, r.right_var, j(2).evidence),
                  j(0).actor, combine_premise_weights({j(0).weight, j(1).weight, j(2).weight}),
                  j(1).claim}};
  }

  Sequent operator()(const rule::ImplIntro& r) const {
    const auto* var = r.discharged.evidence.as<ev::Var>();
    if (!var) fail(ErrorCode::NotAnAssumption, "only variable assumptions can be discharged");
    same_actor(r.discharged, j(0));
    Context with = ctx(0);
    with.add(r.discharged);
    Context rest = ctx_discharge(with, r.discharged);
    for (const auto& other : rest) {
      if (occurs_free(other.evidence, var->name)) {
        fail(ErrorCode::FreshnessViolation,
             "variable '" + var->name + "' is still used by a remaining assumption");
      }
    }
    Judgement out = j(0);
    out.evidence = Evidence::lambda(var->name, j(0).evidence);
    out.claim = Claim::implies(r.discharged.claim, j(0).claim);
    return Sequent{rest, out};
  }

  Sequent operator()(const rule::ImplElim& r) const {
    const Claim& c = expect_kind(j(0), Claim::Kind::Implies, "an implication");
    same_actor(j(0), j(1));
    if (!(j(1).claim == c.left())) fail(ErrorCode::ClaimMismatch, "argument does not witness the antecedent");
    Evidence result = Evidence::app(j(0).evidence, j(1).evidence);
    if (r.form == ImplElimForm::Beta) {
      const auto* fn = j(0).evidence.as<ev::Lambda>();
      if (!fn) fail(ErrorCode::EvidenceShapeMismatch, "function evidence is not a lambda");
      if (rebinds(fn->body, fn->var)) {
        fail(ErrorCode::FreshnessViolation, "'" + fn->var + "' is bound again inside the lambda body");
      }
      result = substitute(fn->body, fn->var, j(1).evidence);
    }
    return Sequent{ctx_union(ctx(0), ctx(1)),
                   Judgement{result, j(0).actor, combine_premise_weights({j(0).weight, j(1).weight}),
                             c.right()}};
  }

  Sequent operator()(const rule::Trust& r) const {
    if (!(j(0).actor == r.edge.trusted)) {
      fail(ErrorCode::ActorMismatch, "premise is held by '" + j(0).actor.name() + "', not by '" +
                                         r.edge.trusted.name() + "'");
    }
    if (!trust.admits(r.edge)) {
      fail(ErrorCode::UnknownTrustEdge, r.edge.truster.name() + " " + r.edge.relation + "[" +
                                            r.edge.weight.to_string() + "] " + r.edge.trusted.name() +
                                            " is not in any trust relation in scope");
    }
    Judgement out = j(0);
    out.actor = r.edge.truster;
    out.weight = weight_mul(r.edge.weight, j(0).weight);
    return Sequent{ctx(0), out};
  }
};

void check_node(const ProofTree& node, const TrustEnv& trust, std::vector<std::size_t>& path,
                CheckReport& report) {
  std::vector<Sequent> premises;
  premises.reserve(node.premises.size());
  for (const auto& p : node.premises) premises.push_back(p.conclusion);
  try {
    Sequent expected = derive(node.instance, premises, trust);
    if (!(expected == node.conclusion)) {
      if (expected.conclusion == node.conclusion.conclusion) {
        report.violations.push_back(
            {path, ErrorCode::ContextError, "assumptions differ from those the rule produces"});
      } else {
        report.violations.push_back(
            {path, ErrorCode::ConclusionMismatch, "conclusion differs from the one the rule produces"});
      }
    }
  } catch (const Error& e) {
    report.violations.push_back({path, e.code(), e.what()});
  }
  for (std::size_t i = 0; i < node.premises.size(); ++i) {
    path.push_back(i);
    check_node(node.premises[i], trust, path, report);
    path.pop_back();
  }
}

void require_valid(const ProofTree& tree, const TrustEnv& trust) {
  CheckReport report = check(tree, trust);
  if (!report.ok) {
    const auto& v = report.violations.front();
    throw Error(ErrorCode::InvalidTree, "proof does not check at " + path_to_string(v.path) + ": " +
                                            v.message);
  }
}

template <class F>
void preorder(const ProofTree& t, F&& f) {
  f(t);
  for (const auto& p : t.premises) preorder(p, f);
}

}  // namespace

std::string_view to_string(RuleName rule) { return kRuleNames[static_cast<std::size_t>(rule)]; }

RuleName rule_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kRuleNames.size(); ++i)
    if (kRuleNames[i] == name) return static_cast<RuleName>(i);
  throw Error(ErrorCode::ParseError, "unknown rule '" + std::string(name) + "'");
}

std::size_t rule_arity(RuleName rule) {
  switch (rule) {
    case RuleName::Assume: return 0;
    case RuleName::AndIntro:
    case RuleName::AndElimSplit:
    case RuleName::ImplElim: return 2;
    case RuleName::OrElimCases: return 3;
    default: return 1;
  }
}

std::size_t ProofTree::node_count() const {
  std::size_t n = 1;
  for (const auto& p : premises) n += p.node_count();
  return n;
}

TrustEnv::TrustEnv(std::vector<TrustRelation> relations) {
  for (auto& r : relations) add(std::move(r));
}

void TrustEnv::add(TrustRelation relation) {
  std::string name = relation.name();
  if (!relations_.emplace(name, std::move(relation)).second) {
    throw Error(ErrorCode::InvalidConfig, "trust relation '" + name + "' defined twice");
  }
}

const TrustRelation* TrustEnv::find(const std::string& name) const {
  auto it = relations_.find(name);
  return it == relations_.end() ? nullptr : &it->second;
}

bool TrustEnv::admits(const TrustEdge& edge) const {
  if (edge.truster == edge.trusted && edge.weight.is_one()) return true;
  const TrustRelation* rel = find(edge.relation);
  if (!rel) return false;
  auto w = rel->weight(edge.truster, edge.trusted);
  return w && *w == edge.weight;
}

// Weakest link. Only the trust rule has a fixed way to compose weights.
Weight combine_premise_weights(const std::vector<Weight>& weights) {
  Weight out = Weight::one();
  for (const auto& w : weights)
    if (w < out) out = w;
  return out;
}

Sequent derive(const RuleInstance& instance, const std::vector<Sequent>& premises,
               const TrustEnv& trust) {
  std::size_t want = rule_arity(instance.name());
  if (premises.size() != want) {
    fail(ErrorCode::ArityMismatch, std::string(to_string(instance.name())) + " takes " +
                                       std::to_string(want) + " premise(s), got " +
                                       std::to_string(premises.size()));
  }
  return std::visit(Deriver{premises, trust}, instance.params);
}

ProofTree apply_rule(const RuleInstance& instance, std::vector<ProofTree> premises,
                     const TrustEnv& trust) {
  std::vector<Sequent> conclusions;
  conclusions.reserve(premises.size());
  for (const auto& p : premises) conclusions.push_back(p.conclusion);
  Sequent conclusion = derive(instance, conclusions, trust);
  return ProofTree{std::move(conclusion), instance, std::move(premises)};
}

std::string path_to_string(const std::vector<std::size_t>& path) {
  if (path.empty()) return "root";
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(path[i]);
  }
  return out;
}

CheckReport check(const ProofTree& tree, const TrustEnv& trust) {
  CheckReport report;
  std::vector<std::size_t> path;
  check_node(tree, trust, path, report);
  report.ok = report.violations.empty();
  return report;
}

std::vector<UsedAssumption> assumptions_used(const ProofTree& tree, const TrustEnv& trust) {
  require_valid(tree, trust);
  Context seen;
  preorder(tree, [&](const ProofTree& node) {
    if (const auto* a = node.instance.as<rule::Assume>()) seen.add(a->assumed);
    if (const auto* i = node.instance.as<rule::ImplIntro>()) seen.add(i->discharged);
  });
  std::vector<UsedAssumption> out;
  for (const auto& j : seen) out.push_back({j, !tree.conclusion.assumptions.contains(j)});
  return out;
}

std::vector<TrustEdge> trust_edges_used(const ProofTree& tree, const TrustEnv& trust) {
  require_valid(tree, trust);
  std::vector<TrustEdge> out;
  preorder(tree, [&](const ProofTree& node) {
    if (const auto* t = node.instance.as<rule::Trust>()) {
      if (std::find(out.begin(), out.end(), t->edge) == out.end()) out.push_back(t->edge);
    }
  });
  return out;
}

}  // namespace veracity
