#include <doctest.h>

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"

using namespace veracity;
using fx::atom;
using fx::frac;

namespace {

ParseError parse_error(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("no parse error");
  return ParseError("unreachable", 0, 0);
}

}  // namespace

TEST_CASE("claim grammar") {
  CHECK(parse_claim("C1 /\\ C2 /\\ C3") == Claim::conj(Claim::conj(atom("C1"), atom("C2")), atom("C3")));
  CHECK(parse_claim("A -> B -> C") == Claim::implies(atom("A"), Claim::implies(atom("B"), atom("C"))));
  Claim cc = Claim::conj(atom("C"), atom("C"));
  CHECK(parse_claim("(C /\\ C) /\\ (C /\\ C)") == Claim::conj(cc, cc));
  CHECK(parse_claim("A \\/ B /\\ C") == Claim::disj(atom("A"), Claim::conj(atom("B"), atom("C"))));
  CHECK(parse_claim("A \\/ B -> _|_") == Claim::negation(Claim::disj(atom("A"), atom("B"))));
  CHECK(print_claim(parse_claim("(A /\\ B) /\\ C")) == "A /\\ B /\\ C");
  CHECK(print_claim(parse_claim("A /\\ (B /\\ C)")) == "A /\\ (B /\\ C)");
  CHECK(print_claim(parse_claim("(A -> B) -> C")) == "(A -> B) -> C");
  CHECK(print_claim(fx::curried_claim()) == "C3 -> C2 -> C1 -> C1 /\\ C2 /\\ C3");
}

TEST_CASE("claim parse errors carry a position") {
  auto e = parse_error([] { parse_claim("A /\\ "); });
  CHECK(e.code() == ErrorCode::ParseError);
  CHECK(e.line() == 1);
  e = parse_error([] { parse_claim("A /\\ B\n  )"); });
  CHECK(e.line() == 2);
  CHECK(e.column() == 3);
  parse_error([] { parse_claim("(A"); });
  parse_error([] { parse_claim(""); });
}

TEST_CASE("evidence grammar") {
  Evidence xyz = Evidence::pair(Evidence::pair(Evidence::var("x"), Evidence::var("y")), Evidence::var("z"));
  CHECK(parse_evidence("\\z. \\y. \\x. ((x, y), z)") ==
        Evidence::lambda("z", Evidence::lambda("y", Evidence::lambda("x", xyz))));
  CHECK(parse_evidence("i(a)") == Evidence::tag_left(Evidence::atom("a")));
  CHECK(parse_evidence("cases(i(a), (x) x, (y) y)") ==
        Evidence::cases(Evidence::tag_left(Evidence::atom("a")), "x", Evidence::var("x"), "y", Evidence::var("y")));
  CHECK(parse_evidence("split(c, (x, y) (y, x))") ==
        Evidence::split(Evidence::atom("c"), "x", "y", Evidence::pair(Evidence::var("y"), Evidence::var("x"))));
  CHECK(parse_evidence("app(f, a)") == Evidence::app(Evidence::atom("f"), Evidence::atom("a")));
  CHECK(parse_evidence("?x") == Evidence::var("x"));
  CHECK(parse_evidence("\\x. 'x") == Evidence::lambda("x", Evidence::atom("x")));
  CHECK(parse_evidence("w{who=\"Ann\", where=\"lab\"}") ==
        Evidence::atom("w", Payload{{"who", "Ann"}, {"where", "lab"}}));
}

TEST_CASE("evidence printing keeps variables and names apart") {
  CHECK(print_evidence(Evidence::var("x")) == "?x");
  CHECK(print_evidence(Evidence::lambda("x", Evidence::atom("x"))) == "\\x. 'x");
  CHECK(print_evidence(Evidence::lambda("x", Evidence::var("x"))) == "\\x. x");
}

TEST_CASE("judgements") {
  Judgement j = parse_judgement("a ^ k @ 0.2 in A");
  CHECK(j == fx::ja("a", "k", atom("A"), frac(1, 5)));
  CHECK(parse_judgement("e ^ a1 in C").weight == Weight::one());
  CHECK(parse_judgement("e ^ a1 @ 1/3 in C").weight == frac(1, 3));
  CHECK(print_judgement(parse_judgement("e ^ a1 @ 1/3 in C")) == "e ^ a1 @ 1/3 in C");
  CHECK(print_judgement(j) == "a ^ k @ 0.2 in A");
  CHECK(print_judgement(parse_judgement("e ^ a1 in C")) == "e ^ a1 in C");
  try {
    parse_judgement("e ^ a1 @ 1.5 in C");
    FAIL("weight 1.5 accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WeightOutOfRange);
  }
}

TEST_CASE("weights") {
  CHECK(parse_weight("0.25") == frac(1, 4));
  CHECK(parse_weight("1") == Weight::one());
  CHECK(parse_weight("2/6") == frac(1, 3));
  CHECK(parse_weight("0.375") == frac(3, 8));
  CHECK(parse_weight("007/010") == frac(7, 10));
  CHECK(parse_weight("0") == Weight::zero());
  parse_error([] { parse_weight("x"); });
  parse_error([] { parse_weight("1/0"); });
}

TEST_CASE("goals may leave the evidence open") {
  GoalSpec g = parse_goal("_ ^ a1 in (C /\\ C) /\\ (C /\\ C)");
  CHECK_FALSE(g.evidence);
  CHECK(to_goal(g) == fx::four_c_goal());
  CHECK(parse_goal("e ^ a1 in C").evidence == std::optional<Evidence>(Evidence::atom("e")));
}

TEST_CASE("trust files") {
  auto rels = parse_trust(fx::read_text(fx::data_path("chain.vtrust")));
  REQUIRE(rels.size() == 1);
  CHECK(rels[0].name() == "T");
  CHECK(rels[0].weight(ActorId("k"), ActorId("l")) == frac(1, 2));
  CHECK(rels[0].weight(ActorId("l"), ActorId("m")) == frac(2, 5));
  CHECK(parse_trust_edge("k T[0.5] l") == fx::edge("T", "k", "l", frac(1, 2)));
  CHECK(parse_trust_edge("k T l").weight == Weight::one());
  CHECK(print_trust_edge(fx::edge("T", "k", "l", frac(1, 3))) == "k T[1/3] l");
  auto again = parse_trust(print_trust(rels[0]));
  REQUIRE(again.size() == 1);
  CHECK(again[0].edges() == rels[0].edges());
  parse_error([] { parse_trust("k T[0.5] l\n"); });
  CHECK_THROWS_AS(parse_trust("relation T\nk S[0.5] l\n"), Error);
  CHECK_THROWS_AS(parse_trust("relation T\nk T[0.5] l\nk T[0.4] l\n"), Error);
}

TEST_CASE("configuration files") {
  StepConfig cfg = fx::two_c_config();
  REQUIRE(cfg.assumables.size() == 2);
  CHECK(cfg.assumables[0] == fx::ja("e", "a1", atom("C")));
  CHECK(cfg.enabled_rules == std::set<RuleName>{RuleName::Assume, RuleName::AndIntro});
  CHECK(cfg.depth_limit == 3);
  StepConfig again = parse_config(print_config(cfg));
  CHECK(again.assumables == cfg.assumables);
  CHECK(again.enabled_rules == cfg.enabled_rules);
  CHECK(again.depth_limit == cfg.depth_limit);
  CHECK(again.max_proofs == cfg.max_proofs);

  StepConfig inline_items = parse_config("assume: e ^ a1 in C  # trailing\ntrust:\n  k T[1/2] l\nmax-proofs: 7\n");
  CHECK(inline_items.assumables.size() == 1);
  CHECK(inline_items.trust_edges.size() == 1);
  CHECK(inline_items.max_proofs == 7);
  CHECK(inline_items.enabled_rules == default_rules());
  CHECK_THROWS_AS(parse_config("depth: 0\n"), Error);
  parse_error([] { parse_config("bogus: 1\n"); });
  parse_error([] { parse_config("rules: Frobnicate\n"); });
}

TEST_CASE("printing then parsing is the identity") {
  oracle::Gen g(61);
  for (int i = 0; i < 200; ++i) {
    Claim c = g.claim(4);
    CHECK(parse_claim(print_claim(c)) == c);
    Evidence e = g.evidence(4);
    CHECK(parse_evidence(print_evidence(e)) == e);
    Judgement j = g.judgement();
    CHECK(parse_judgement(print_judgement(j)) == j);
  }
}
