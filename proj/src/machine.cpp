#include "veracity/render.hpp"
#include "veracity/syntax.hpp"

namespace veracity {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::ParseError, msg); }

const json& field(const json& j, const char* key) {
  if (!j.is_object()) bad(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

std::string text(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) bad(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

json edge_to_json(const TrustEdge& e) {
  return {{"relation", e.relation},
          {"truster", e.truster.name()},
          {"trusted", e.trusted.name()},
          {"weight", e.weight.to_string()}};
}

TrustEdge edge_from_json(const json& j) {
  return TrustEdge{text(j, "relation"), ActorId(text(j, "truster")), ActorId(text(j, "trusted")),
                   parse_weight(text(j, "weight"))};
}

json params_to_json(const RuleInstance& inst) {
  return std::visit(
      overloaded{
          [](const rule::Assume& r) -> json { return {{"assumed", judgement_to_json(r.assumed)}}; },
          [](const rule::BotElim& r) -> json { return {{"target", print_claim(r.target)}}; },
          [](const rule::AndElimSplit& r) -> json {
            return {{"first_var", r.first_var}, {"second_var", r.second_var}};
          },
          [](const rule::OrIntro1& r) -> json { return {{"right", print_claim(r.right)}}; },
          [](const rule::OrIntro2& r) -> json { return {{"left", print_claim(r.left)}}; },
          [](const rule::OrElimCases& r) -> json {
            return {{"left_var", r.left_var}, {"right_var", r.right_var}};
          },
          [](const rule::ImplIntro& r) -> json { return {{"discharged", judgement_to_json(r.discharged)}}; },
          [](const rule::ImplElim& r) -> json {
            return {{"form", r.form == ImplElimForm::Beta ? "beta" : "app"}};
          },
          [](const rule::Trust& r) -> json { return {{"edge", edge_to_json(r.edge)}}; },
          [](const auto&) -> json { return json::object(); },
      },
      inst.params);
}

RuleInstance params_from_json(RuleName name, const json& p) {
  switch (name) {
    case RuleName::Assume: return rule::Assume{judgement_from_json(field(p, "assumed"))};
    case RuleName::BotElim: return rule::BotElim{parse_claim(text(p, "target"))};
    case RuleName::AndIntro: return rule::AndIntro{};
    case RuleName::AndElim1: return rule::AndElim1{};
    case RuleName::AndElim2: return rule::AndElim2{};
    case RuleName::AndElimSplit: return rule::AndElimSplit{text(p, "first_var"), text(p, "second_var")};
    case RuleName::OrIntro1: return rule::OrIntro1{parse_claim(text(p, "right"))};
    case RuleName::OrIntro2: return rule::OrIntro2{parse_claim(text(p, "left"))};
    case RuleName::OrElim1: return rule::OrElim1{};
    case RuleName::OrElim2: return rule::OrElim2{};
    case RuleName::OrElimCases: return rule::OrElimCases{text(p, "left_var"), text(p, "right_var")};
    case RuleName::ImplIntro: return rule::ImplIntro{judgement_from_json(field(p, "discharged"))};
    case RuleName::ImplElim: {
      std::string form = text(p, "form");
      if (form != "beta" && form != "app") bad("ImplElim form must be 'beta' or 'app'");
      return rule::ImplElim{form == "beta" ? ImplElimForm::Beta : ImplElimForm::App};
    }
    case RuleName::Trust: return rule::Trust{edge_from_json(field(p, "edge"))};
  }
  bad("unknown rule");
}

const json& array_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_array()) bad(std::string("field '") + key + "' must be an array");
  return v;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

json judgement_to_json(const Judgement& j) {
  return {{"evidence", print_evidence(j.evidence)},
          {"actor", j.actor.name()},
          {"weight", j.weight.to_string()},
          {"claim", print_claim(j.claim)}};
}

Judgement judgement_from_json(const json& j) {
  return Judgement{parse_evidence(text(j, "evidence")), ActorId(text(j, "actor")),
                   parse_weight(text(j, "weight")), parse_claim(text(j, "claim"))};
}

json proof_to_json(const ProofTree& tree) {
  json assumptions = json::array();
  for (const auto& a : tree.conclusion.assumptions) assumptions.push_back(judgement_to_json(a));
  json premises = json::array();
  for (const auto& p : tree.premises) premises.push_back(proof_to_json(p));
  return {{"rule", std::string(to_string(tree.instance.name()))},
          {"params", params_to_json(tree.instance)},
          {"conclusion",
           {{"assumptions", std::move(assumptions)}, {"judgement", judgement_to_json(tree.conclusion.conclusion)}}},
          {"premises", std::move(premises)}};
}

ProofTree proof_from_json(const json& j) {
  RuleName name = rule_from_string(text(j, "rule"));
  RuleInstance inst = params_from_json(name, field(j, "params"));
  const json& concl = field(j, "conclusion");
  std::vector<Judgement> ctx;
  for (const auto& a : array_field(concl, "assumptions")) ctx.push_back(judgement_from_json(a));
  Sequent seq{Context(ctx), judgement_from_json(field(concl, "judgement"))};
  std::vector<ProofTree> premises;
  for (const auto& p : array_field(j, "premises")) premises.push_back(proof_from_json(p));
  return ProofTree{std::move(seq), std::move(inst), std::move(premises)};
}

std::string render_machine(const ProofTree& tree) {
  json doc = {{"format", "veracity-proof"}, {"version", 1}, {"root", proof_to_json(tree)}};
  return doc.dump(2) + "\n";
}

ProofTree parse_machine(std::string_view text_in) {
  json doc = parse_json(text_in);
  if (text(doc, "format") != "veracity-proof") bad("not a veracity-proof document");
  const json& version = field(doc, "version");
  if (!version.is_number_integer() || version.get<int>() != 1) bad("unsupported format version");
  return proof_from_json(field(doc, "root"));
}

json goal_to_json(const Goal& g) {
  json hyps = json::array();
  for (const auto& h : g.hypotheses) hyps.push_back(judgement_to_json(h));
  return {{"actor", g.actor.name()}, {"claim", print_claim(g.claim)}, {"hypotheses", std::move(hyps)}};
}

Goal goal_from_json(const json& j) {
  Goal g{ActorId(text(j, "actor")), parse_claim(text(j, "claim")), {}};
  if (j.contains("hypotheses"))
    for (const auto& h : array_field(j, "hypotheses")) g.hypotheses.push_back(judgement_from_json(h));
  return g;
}

json partial_to_json(const PartialProof& p) {
  const auto* n = p.as_node();
  if (!n) return {{"hole", goal_to_json(p.goal())}};
  json premises = json::array();
  for (const auto& q : n->premises) premises.push_back(partial_to_json(q));
  return {{"rule", std::string(to_string(n->instance.name()))},
          {"params", params_to_json(n->instance)},
          {"goal", goal_to_json(n->goal)},
          {"premises", std::move(premises)}};
}

PartialProof partial_from_json(const json& j) {
  if (j.is_object() && j.contains("hole")) return PartialProof::hole(goal_from_json(j["hole"]));
  RuleName name = rule_from_string(text(j, "rule"));
  RuleInstance inst = params_from_json(name, field(j, "params"));
  std::vector<PartialProof> premises;
  for (const auto& q : array_field(j, "premises")) premises.push_back(partial_from_json(q));
  if (premises.size() != rule_arity(name)) bad(std::string(to_string(name)) + " node has the wrong number of premises");
  return PartialProof::node(goal_from_json(field(j, "goal")), std::move(inst), std::move(premises));
}

json config_to_json(const StepConfig& cfg) {
  json assume = json::array();
  for (const auto& a : cfg.assumables) assume.push_back(print_judgement(a));
  json trust = json::array();
  for (const auto& e : cfg.trust_edges) trust.push_back(print_trust_edge(e));
  json rules = json::array();
  for (RuleName r : cfg.enabled_rules) rules.push_back(std::string(to_string(r)));
  return {{"assume", std::move(assume)},
          {"trust", std::move(trust)},
          {"rules", std::move(rules)},
          {"depth", cfg.depth_limit},
          {"maxProofs", cfg.max_proofs}};
}

// Accepts either the object form above (every key optional) or a string in
// the configuration file syntax.
StepConfig config_from_json(const json& j) {
  if (j.is_null()) return StepConfig{};
  if (j.is_string()) return parse_config(j.get<std::string>());
  if (!j.is_object()) bad("config must be an object or a string");
  StepConfig cfg;
  if (j.contains("assume"))
    for (const auto& a : array_field(j, "assume")) {
      if (!a.is_string()) bad("assumptions must be strings");
      cfg.assumables.push_back(parse_judgement(a.get<std::string>()));
    }
  if (j.contains("trust"))
    for (const auto& e : array_field(j, "trust")) {
      if (!e.is_string()) bad("trust edges must be strings");
      cfg.trust_edges.push_back(parse_trust_edge(e.get<std::string>()));
    }
  if (j.contains("rules")) {
    cfg.enabled_rules.clear();
    for (const auto& r : array_field(j, "rules")) {
      if (!r.is_string()) bad("rule names must be strings");
      cfg.enabled_rules.insert(rule_from_string(r.get<std::string>()));
    }
  }
  auto count = [&](const char* key, std::size_t& out) {
    if (!j.contains(key)) return;
    const json& v = j[key];
    if (!v.is_number_integer() || v.get<long long>() < 0) bad(std::string("'") + key + "' must be a non-negative integer");
    out = v.get<std::size_t>();
  };
  count("depth", cfg.depth_limit);
  count("maxProofs", cfg.max_proofs);
  cfg.validate();
  return cfg;
}

}  // namespace veracity
