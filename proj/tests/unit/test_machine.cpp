#include <doctest.h>

#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"

using namespace veracity;
using fx::atom;
using fx::frac;
using fx::ja;
using nlohmann::json;

namespace {

std::size_t json_nodes(const json& node) {
  std::size_t n = 1;
  for (const auto& p : node["premises"]) n += json_nodes(p);
  return n;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidTree;
}

}  // namespace

TEST_CASE("machine format round-trips") {
  std::vector<ProofTree> trees = {fx::curried_tree(), fx::paired_tree(), fx::vacuous_tree(),
                                  fx::trust_chain_tree(frac(2, 5), frac(1, 2))};
  for (auto& p : search(fx::two_c_config(), fx::four_c_goal())) trees.push_back(p);
  for (const auto& t : trees) {
    std::string text = render_machine(t);
    ProofTree back = parse_machine(text);
    CHECK(back == t);
    CHECK(render_machine(back) == text);
  }
}

TEST_CASE("machine document layout") {
  json doc = json::parse(render_machine(fx::curried_tree()));
  CHECK(doc["format"] == "veracity-proof");
  CHECK(doc["version"] == 1);
  CHECK(json_nodes(doc["root"]) == 8);
  CHECK(doc["root"]["rule"] == "ImplIntro");
  CHECK(doc["root"]["conclusion"]["assumptions"].empty());
  CHECK(doc["root"]["conclusion"]["judgement"]["evidence"] == "\\z. \\y. \\x. ((x, y), z)");
  CHECK(render_machine(fx::curried_tree()) == fx::read_text(fx::data_path("curried.vproof")));
}

TEST_CASE("machine parse errors") {
  std::string text = render_machine(fx::curried_tree());
  CHECK(code_of([&] { parse_machine(text.substr(0, text.size() / 2)); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_machine("{\"format\":\"other\",\"version\":1,\"root\":{}}"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_machine("{\"format\":\"veracity-proof\",\"version\":9,\"root\":{}}"); }) ==
        ErrorCode::ParseError);
  json doc = json::parse(render_machine(fx::assume(ja("a", "P", atom("A")))));
  doc["root"]["conclusion"]["judgement"]["weight"] = "1.5";
  CHECK(code_of([&] { parse_machine(doc.dump()); }) == ErrorCode::WeightOutOfRange);
  doc["root"]["conclusion"]["judgement"]["weight"] = "1";
  doc["root"]["rule"] = "Frobnicate";
  CHECK(code_of([&] { parse_machine(doc.dump()); }) == ErrorCode::ParseError);
}

TEST_CASE("parse_machine does not check") {
  json doc = json::parse(render_machine(fx::assume(ja("a", "P", atom("A")))));
  doc["root"]["conclusion"]["judgement"]["claim"] = "B";
  ProofTree t = parse_machine(doc.dump());
  CHECK_FALSE(check(t).ok);
}

TEST_CASE("partial proofs and configs serialize") {
  StepConfig cfg = fx::two_c_config();
  PartialProof p = step(cfg, make_goal(ActorId("a1"), Claim::conj(atom("C"), atom("C"))))[1];
  CHECK(partial_from_json(partial_to_json(p)) == p);
  Goal g = make_goal(ActorId("P"), fx::curried_claim());
  CHECK(goal_from_json(goal_to_json(g)) == g);
  StepConfig back = config_from_json(config_to_json(cfg));
  CHECK(back.assumables == cfg.assumables);
  CHECK(back.enabled_rules == cfg.enabled_rules);
  CHECK(back.depth_limit == cfg.depth_limit);
  StepConfig from_text = config_from_json(json(fx::read_text(fx::data_path("two_c.vcfg"))));
  CHECK(from_text.assumables == cfg.assumables);
}
