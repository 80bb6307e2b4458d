#include <doctest.h>

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"
#include "veracity/normalize.hpp"

using namespace veracity;
using fx::assume;
using fx::atom;
using fx::frac;
using fx::ja;
using fx::jv;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidTree;
}

// Random valid trees for one actor over weighted leaves.
ProofTree random_tree(oracle::Gen& g, int depth, int& counter) {
  if (depth <= 0 || g.coin(0.25)) {
    std::string name = "e" + std::to_string(counter++);
    Judgement j{g.coin() ? Evidence::atom(name) : Evidence::var(name), ActorId("P"), g.weight(), g.claim(1)};
    return assume(j);
  }
  switch (g.below(4)) {
    case 0: return apply_rule(rule::AndIntro{}, {random_tree(g, depth - 1, counter), random_tree(g, depth - 1, counter)});
    case 1: return apply_rule(rule::OrIntro1{g.claim(1)}, {random_tree(g, depth - 1, counter)});
    case 2: return apply_rule(rule::OrIntro2{g.claim(1)}, {random_tree(g, depth - 1, counter)});
    default: {
      ProofTree body = random_tree(g, depth - 1, counter);
      // Discharge one of the variable leaves if there is one, else a vacuous one.
      for (const auto& j : body.conclusion.assumptions)
        if (j.evidence.is<ev::Var>() && j.weight.is_one()) return apply_rule(rule::ImplIntro{j}, {body});
      Judgement h{Evidence::var("h" + std::to_string(counter++)), ActorId("P"), Weight::one(), g.claim(1)};
      return apply_rule(rule::ImplIntro{h}, {body});
    }
  }
}

void each_subtree(const ProofTree& t, const std::function<void(const ProofTree&)>& f) {
  f(t);
  for (const auto& p : t.premises) each_subtree(p, f);
}

Weight min_leaf_weight(const ProofTree& t) {
  if (t.premises.empty()) return t.conclusion.conclusion.weight;
  Weight w = Weight::one();
  for (const auto& p : t.premises) w = std::min(w, min_leaf_weight(p), [](auto& a, auto& b) { return a < b; });
  return w;
}

}  // namespace

TEST_CASE("assume concludes its own judgement") {
  Judgement j = jv("x", "P", atom("C1"));
  ProofTree t = assume(j);
  CHECK(t.conclusion.assumptions == Context({j}));
  CHECK(t.conclusion.conclusion == j);
  CHECK(code_of([] { assume(Judgement{Evidence::pair(Evidence::atom("a"), Evidence::atom("b")), ActorId("P"),
                                      Weight::one(), atom("A")}); }) == ErrorCode::EvidenceShapeMismatch);
}

TEST_CASE("and-introduction over two assumptions") {
  Judgement x = jv("x", "P", atom("C1")), y = jv("y", "P", atom("C2"));
  ProofTree t = apply_rule(rule::AndIntro{}, {assume(x), assume(y)});
  CHECK(t.conclusion.assumptions == Context({x, y}));
  CHECK(t.conclusion.conclusion ==
        Judgement{Evidence::pair(Evidence::var("x"), Evidence::var("y")), ActorId("P"), Weight::one(),
                  Claim::conj(atom("C1"), atom("C2"))});
}

TEST_CASE("logical rules take the weakest premise weight") {
  ProofTree t = apply_rule(rule::AndIntro{}, {assume(ja("a", "P", atom("A"), frac(1, 2))),
                                              assume(ja("b", "P", atom("B"), frac(1, 3)))});
  CHECK(t.conclusion.conclusion.weight == frac(1, 3));
}

TEST_CASE("trust rule multiplies by the edge weight") {
  TrustEnv env = fx::chain_env(frac(2, 5), frac(1, 2));
  ProofTree leaf = assume(ja("a", "l", atom("A"), frac(2, 5)));
  ProofTree t = apply_rule(rule::Trust{fx::edge("T", "k", "l", frac(1, 2))}, {leaf}, env);
  CHECK(t.conclusion.conclusion.actor == ActorId("k"));
  CHECK(t.conclusion.conclusion.weight == frac(1, 5));
  CHECK(code_of([&] { apply_rule(rule::Trust{fx::edge("T", "k", "l", frac(1, 3))}, {leaf}, env); }) ==
        ErrorCode::UnknownTrustEdge);
  CHECK(code_of([&] { apply_rule(rule::Trust{fx::edge("T", "k", "m", frac(1, 2))}, {leaf}, env); }) ==
        ErrorCode::ActorMismatch);
  // Implicit self-trust needs no relation.
  ProofTree self = apply_rule(rule::Trust{fx::edge("T", "l", "l", Weight::one())}, {leaf});
  CHECK(self.conclusion.conclusion == leaf.conclusion.conclusion);
}

TEST_CASE("or-elimination requires the matching tag") {
  Claim ab = Claim::disj(atom("A"), atom("B"));
  ProofTree right = apply_rule(rule::OrIntro2{atom("A")}, {assume(ja("e", "P", atom("B")))});
  CHECK(code_of([&] { apply_rule(rule::OrElim1{}, {right}); }) == ErrorCode::EvidenceShapeMismatch);
  ProofTree back = apply_rule(rule::OrElim2{}, {right});
  CHECK(back.conclusion.conclusion == ja("e", "P", atom("B")));
  CHECK(code_of([&] { apply_rule(rule::OrElim1{}, {assume(ja("c", "P", ab))}); }) ==
        ErrorCode::EvidenceShapeMismatch);
}

TEST_CASE("and-elimination needs a literal pair") {
  Claim ab = Claim::conj(atom("A"), atom("B"));
  CHECK(code_of([&] { apply_rule(rule::AndElim1{}, {assume(ja("c", "P", ab))}); }) ==
        ErrorCode::EvidenceShapeMismatch);
  ProofTree pair = apply_rule(rule::AndIntro{}, {assume(ja("a", "P", atom("A"))), assume(ja("b", "P", atom("B")))});
  CHECK(apply_rule(rule::AndElim2{}, {pair}).conclusion.conclusion == ja("b", "P", atom("B")));
}

TEST_CASE("split discharges both components") {
  Claim ab = Claim::conj(atom("A"), atom("B"));
  ProofTree c = assume(ja("c", "P", ab));
  ProofTree body = apply_rule(rule::AndIntro{}, {assume(jv("y", "P", atom("B"))), assume(jv("x", "P", atom("A")))});
  ProofTree t = apply_rule(rule::AndElimSplit{"x", "y"}, {c, body});
  CHECK(t.conclusion.assumptions == Context({ja("c", "P", ab)}));
  CHECK(normalize(t.conclusion.conclusion.evidence) ==
        normalize(Evidence::split(Evidence::atom("c"), "x", "y", Evidence::pair(Evidence::var("y"), Evidence::var("x")))));
  CHECK(code_of([&] { apply_rule(rule::AndElimSplit{"x", "x"}, {c, body}); }) == ErrorCode::FreshnessViolation);
}

TEST_CASE("implication introduction") {
  ProofTree body = assume(jv("x", "P", atom("A")));
  ProofTree t = apply_rule(rule::ImplIntro{jv("x", "P", atom("A"))}, {body});
  CHECK(t.conclusion.assumptions.empty());
  CHECK(t.conclusion.conclusion.evidence == Evidence::lambda("x", Evidence::var("x")));
  CHECK(code_of([&] { apply_rule(rule::ImplIntro{ja("x", "P", atom("A"))}, {body}); }) ==
        ErrorCode::NotAnAssumption);
  CHECK(code_of([&] { apply_rule(rule::ImplIntro{jv("x", "Q", atom("A"))}, {body}); }) == ErrorCode::ActorMismatch);
  // x^P in B would stay behind mentioning x.
  ProofTree both = apply_rule(rule::AndIntro{}, {assume(jv("x", "P", atom("A"))), assume(jv("x", "P", atom("B")))});
  CHECK(code_of([&] { apply_rule(rule::ImplIntro{jv("x", "P", atom("A"))}, {both}); }) ==
        ErrorCode::FreshnessViolation);
}

TEST_CASE("implication elimination, beta and app forms") {
  ProofTree fn = apply_rule(rule::ImplIntro{jv("x", "P", atom("A"))}, {assume(jv("x", "P", atom("A")))});
  ProofTree arg = assume(ja("a", "P", atom("A")));
  ProofTree beta = apply_rule(rule::ImplElim{ImplElimForm::Beta}, {fn, arg});
  CHECK(beta.conclusion.conclusion.evidence == Evidence::atom("a"));
  ProofTree app = apply_rule(rule::ImplElim{ImplElimForm::App}, {fn, arg});
  CHECK(app.conclusion.conclusion.evidence == Evidence::app(Evidence::lambda("x", Evidence::var("x")), Evidence::atom("a")));
  CHECK(evidence_equal(app.conclusion.conclusion.evidence, beta.conclusion.conclusion.evidence));
  CHECK(code_of([&] { apply_rule(rule::ImplElim{}, {fn, assume(ja("b", "P", atom("B")))}); }) ==
        ErrorCode::ClaimMismatch);
  // Non-lambda function evidence only supports the app form.
  ProofTree opaque = assume(ja("f", "P", Claim::implies(atom("A"), atom("B"))));
  CHECK(code_of([&] { apply_rule(rule::ImplElim{ImplElimForm::Beta}, {opaque, arg}); }) ==
        ErrorCode::EvidenceShapeMismatch);
  CHECK(apply_rule(rule::ImplElim{ImplElimForm::App}, {opaque, arg}).conclusion.conclusion.claim == atom("B"));
}

TEST_CASE("beta form rejects a variable bound again inside the body") {
  // \x. (\x. x) over A -> (B -> B)
  ProofTree inner = apply_rule(rule::ImplIntro{jv("x", "P", atom("B"))}, {assume(jv("x", "P", atom("B")))});
  ProofTree fn = apply_rule(rule::ImplIntro{jv("x", "P", atom("A"))}, {inner});
  CHECK(code_of([&] { apply_rule(rule::ImplElim{ImplElimForm::Beta}, {fn, assume(ja("a", "P", atom("A")))}); }) ==
        ErrorCode::FreshnessViolation);
}

TEST_CASE("bottom elimination") {
  ProofTree t = apply_rule(rule::BotElim{atom("Z")}, {assume(ja("b", "P", Claim::bottom()))});
  CHECK(t.conclusion.conclusion.claim == atom("Z"));
  CHECK(code_of([&] { apply_rule(rule::BotElim{atom("Z")}, {assume(ja("b", "P", atom("A")))}); }) ==
        ErrorCode::ClaimMismatch);
}

TEST_CASE("arity and actor mismatches") {
  CHECK(code_of([] { apply_rule(rule::AndIntro{}, {assume(ja("a", "P", atom("A")))}); }) ==
        ErrorCode::ArityMismatch);
  CHECK(code_of([] {
          apply_rule(rule::AndIntro{}, {assume(ja("a", "P", atom("A"))), assume(ja("b", "Q", atom("B")))});
        }) == ErrorCode::ActorMismatch);
}

TEST_CASE("check reports the diverging node") {
  ProofTree t = fx::curried_tree();
  CHECK(check(t).ok);
  ProofTree tampered = t;
  tampered.premises[0].premises[0].premises[0].premises[1].conclusion.conclusion.claim = atom("C4");
  CheckReport r = check(tampered);
  REQUIRE_FALSE(r.ok);
  // The leaf itself and its parent both diverge.
  CHECK(path_to_string(r.violations[0].path) == "0.0.0");
  CHECK(r.violations[0].code == ErrorCode::ConclusionMismatch);
  CHECK(path_to_string(r.violations.back().path) == "0.0.0.1");

  ProofTree actors = apply_rule(rule::AndIntro{}, {assume(ja("a", "P", atom("A"))), assume(ja("b", "P", atom("B")))});
  actors.premises[1] = assume(ja("b", "Q", atom("B")));
  r = check(actors);
  REQUIRE_FALSE(r.ok);
  CHECK(r.violations[0].path.empty());
  CHECK(r.violations[0].code == ErrorCode::ActorMismatch);

  ProofTree ctx = actors;
  ctx.premises[1] = assume(ja("b", "P", atom("B")));
  ctx.conclusion.assumptions = Context({ja("a", "P", atom("A"))});
  r = check(ctx);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].code == ErrorCode::ContextError);
}

TEST_CASE("curried tree") {
  ProofTree t = fx::curried_tree();
  CHECK(t.node_count() == 8);
  CHECK(t.conclusion.assumptions.empty());
  CHECK(t.conclusion.conclusion.claim == fx::curried_claim());
  Evidence xyz = Evidence::pair(Evidence::pair(Evidence::var("x"), Evidence::var("y")), Evidence::var("z"));
  CHECK(t.conclusion.conclusion.evidence ==
        Evidence::lambda("z", Evidence::lambda("y", Evidence::lambda("x", xyz))));
  auto used = assumptions_used(t);
  REQUIRE(used.size() == 3);
  for (const auto& u : used) CHECK(u.discharged);
  CHECK(trust_edges_used(t).empty());
}

TEST_CASE("assumptions_used on open trees") {
  auto used = assumptions_used(assume(jv("x", "P", atom("C1"))));
  REQUIRE(used.size() == 1);
  CHECK_FALSE(used[0].discharged);
  auto c2 = assumptions_used(fx::paired_tree());
  REQUIRE(c2.size() == 3);
  CHECK(c2[0].judgement == jv("x", "P", atom("C1")));
  CHECK(c2[2].judgement == jv("z", "P", atom("C3")));
  for (const auto& u : c2) CHECK_FALSE(u.discharged);
  ProofTree broken = fx::curried_tree();
  broken.conclusion.conclusion.weight = frac(1, 2);
  CHECK(code_of([&] { assumptions_used(broken); }) == ErrorCode::InvalidTree);
}

TEST_CASE("trust_edges_used") {
  ProofTree ones = fx::trust_chain_tree(Weight::one(), Weight::one());
  auto edges = trust_edges_used(ones, fx::chain_env(Weight::one(), Weight::one()));
  REQUIRE(edges.size() == 2);
  CHECK(edges[0] == fx::edge("T", "k", "l", Weight::one()));
  CHECK(edges[1] == fx::edge("T", "l", "m", Weight::one()));
  ProofTree weighted = fx::trust_chain_tree(frac(2, 5), frac(1, 2));
  auto w = trust_edges_used(weighted, fx::chain_env(frac(2, 5), frac(1, 2)));
  REQUIRE(w.size() == 2);
  CHECK(w[0].weight == frac(1, 2));
  CHECK(w[1].weight == frac(2, 5));
  // Without the relation in scope the tree does not check.
  CHECK(code_of([&] { trust_edges_used(weighted); }) == ErrorCode::InvalidTree);
}

TEST_CASE("constructed trees check, as do all their subtrees") {
  oracle::Gen g(3);
  for (int i = 0; i < 200; ++i) {
    int counter = 0;
    ProofTree t = random_tree(g, 5, counter);
    each_subtree(t, [](const ProofTree& s) { CHECK(check(s).ok); });
  }
}

TEST_CASE("root weight never exceeds the weakest leaf") {
  oracle::Gen g(4);
  for (int i = 0; i < 200; ++i) {
    int counter = 0;
    ProofTree t = random_tree(g, 5, counter);
    CHECK(t.conclusion.conclusion.weight <= min_leaf_weight(t));
  }
}

TEST_CASE("a linear trust chain carries the product of its edges") {
  oracle::Gen g(8);
  for (int i = 0; i < 100; ++i) {
    std::size_t n = 1 + g.below(5);
    TrustRelation rel("T");
    std::vector<Weight> ws;
    for (std::size_t k = 0; k < n; ++k) {
      ws.push_back(g.weight());
      rel.add_edge(ActorId("a" + std::to_string(k + 1)), ActorId("a" + std::to_string(k)), ws.back());
    }
    TrustEnv env({rel});
    ProofTree t = assume(ja("e", "a0", atom("A")));
    Rational product = 1;
    for (std::size_t k = 0; k < n; ++k) {
      t = apply_rule(rule::Trust{TrustEdge{"T", ActorId("a" + std::to_string(k + 1)), ActorId("a" + std::to_string(k)), ws[k]}},
                     {t}, env);
      product *= ws[k].value();
    }
    CHECK(t.conclusion.conclusion.weight.value() == product);
    CHECK(check(t, env).ok);
  }
}

TEST_CASE("disjunctions proved by introduction carry a tag") {
  oracle::Gen g(9);
  int seen = 0;
  for (int i = 0; i < 300; ++i) {
    int counter = 0;
    each_subtree(random_tree(g, 5, counter), [&](const ProofTree& s) {
      auto name = s.instance.name();
      if (name == RuleName::OrIntro1 || name == RuleName::OrIntro2) {
        ++seen;
        const Evidence& e = s.conclusion.conclusion.evidence;
        CHECK((e.is<ev::TagLeft>() || e.is<ev::TagRight>()));
      }
    });
  }
  CHECK(seen > 50);
}

TEST_CASE("or_elim1 agrees with normalized cases over identity branches") {
  oracle::Gen g(12);
  for (int i = 0; i < 100; ++i) {
    Claim a = g.claim(2), b = g.claim(2);
    ProofTree tagged = apply_rule(rule::OrIntro1{b}, {assume(ja("e" + std::to_string(i), "P", a))});
    ProofTree special = apply_rule(rule::OrElim1{}, {tagged});
    // cases(i(e), (x) x, (y) y) needs both branches to conclude A; use A \/ A.
    ProofTree both = apply_rule(rule::OrIntro1{a}, {assume(ja("e" + std::to_string(i), "P", a))});
    ProofTree cases = apply_rule(rule::OrElimCases{"x", "y"},
                                 {both, assume(jv("x", "P", a)), assume(jv("y", "P", a))});
    CHECK(normalize(cases.conclusion.conclusion.evidence) == special.conclusion.conclusion.evidence);
    CHECK(cases.conclusion.conclusion.claim == special.conclusion.conclusion.claim);
  }
}

TEST_CASE("vacuous discharge proof discharges x, y and z") {
  ProofTree t = fx::vacuous_tree();
  CHECK(check(t).ok);
  CHECK(t.conclusion.conclusion.claim == fx::vacuous_claim());
  CHECK(t.conclusion.conclusion.evidence ==
        Evidence::lambda("x", Evidence::lambda("y", Evidence::lambda("z", Evidence::atom("l")))));
  auto used = assumptions_used(t);
  int discharged = 0;
  for (const auto& u : used) {
    if (u.discharged) {
      ++discharged;
      CHECK(u.judgement.evidence.is<ev::Var>());
    }
  }
  CHECK(discharged == 3);
}
