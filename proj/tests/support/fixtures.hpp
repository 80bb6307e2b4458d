#pragma once

// Hand-built trees from the worked examples, plus file helpers. Every tree
// here is assembled through apply_rule, never by filling in conclusions.

#include <fstream>
#include <sstream>
#include <string>

#include "veracity/kernel.hpp"
#include "veracity/render.hpp"
#include "veracity/search.hpp"
#include "veracity/syntax.hpp"

#ifndef VERACITY_GOLDEN_DIR
#error "VERACITY_GOLDEN_DIR must be defined"
#endif
#ifndef VERACITY_DATA_DIR
#error "VERACITY_DATA_DIR must be defined"
#endif

namespace fx {

using namespace veracity;

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string golden(const std::string& name) { return read_text(std::string(VERACITY_GOLDEN_DIR) + "/" + name); }
inline std::string data_path(const std::string& name) { return std::string(VERACITY_DATA_DIR) + "/" + name; }

inline Claim atom(const std::string& n) { return Claim::atomic(n); }

inline Judgement jv(const std::string& var, const std::string& actor, const Claim& c, Weight w = Weight::one()) {
  return Judgement{Evidence::var(var), ActorId(actor), w, c};
}
inline Judgement ja(const std::string& name, const std::string& actor, const Claim& c, Weight w = Weight::one()) {
  return Judgement{Evidence::atom(name), ActorId(actor), w, c};
}

inline ProofTree assume(const Judgement& j) { return apply_rule(rule::Assume{j}, {}); }

inline Claim curried_claim() {
  Claim c1 = atom("C1"), c2 = atom("C2"), c3 = atom("C3");
  return Claim::implies(c3, Claim::implies(c2, Claim::implies(c1, Claim::conj(Claim::conj(c1, c2), c3))));
}

// x, y, z paired up: ((x, y), z) with all three still assumed.
inline ProofTree paired_tree() {
  ProofTree xy = apply_rule(rule::AndIntro{}, {assume(jv("x", "P", atom("C1"))), assume(jv("y", "P", atom("C2")))});
  return apply_rule(rule::AndIntro{}, {xy, assume(jv("z", "P", atom("C3")))});
}

inline ProofTree curried_tree() {
  ProofTree t = paired_tree();
  t = apply_rule(rule::ImplIntro{jv("x", "P", atom("C1"))}, {t});
  t = apply_rule(rule::ImplIntro{jv("y", "P", atom("C2"))}, {t});
  return apply_rule(rule::ImplIntro{jv("z", "P", atom("C3"))}, {t});
}

inline Claim vacuous_claim() {
  return Claim::implies(atom("L3"), Claim::implies(Claim::conj(atom("L5"), atom("L6")),
                                                   Claim::implies(atom("L10"), atom("L12"))));
}

// Peter's chain of vacuous discharges over the assumed l : L12.
inline ProofTree vacuous_tree() {
  ProofTree t = assume(ja("l", "Peter", atom("L12")));
  t = apply_rule(rule::ImplIntro{jv("z", "Peter", atom("L10"))}, {t});
  t = apply_rule(rule::ImplIntro{jv("y", "Peter", Claim::conj(atom("L5"), atom("L6")))}, {t});
  return apply_rule(rule::ImplIntro{jv("x", "Peter", atom("L3"))}, {t});
}

inline TrustEdge edge(const std::string& rel, const std::string& from, const std::string& to, Weight w) {
  return TrustEdge{rel, ActorId(from), ActorId(to), w};
}

inline Weight frac(long n, long d) { return Weight(Rational(n, d)); }

// a^m in A, passed to l along l T m and then to k along k T l.
inline ProofTree trust_chain_tree(Weight lm, Weight kl) {
  ProofTree t = assume(ja("a", "m", atom("A")));
  TrustRelation rel("T");
  rel.add_edge(ActorId("k"), ActorId("l"), kl);
  rel.add_edge(ActorId("l"), ActorId("m"), lm);
  TrustEnv env({rel});
  t = apply_rule(rule::Trust{edge("T", "l", "m", lm)}, {t}, env);
  return apply_rule(rule::Trust{edge("T", "k", "l", kl)}, {t}, env);
}

inline TrustEnv chain_env(Weight lm, Weight kl) {
  TrustRelation rel("T");
  rel.add_edge(ActorId("k"), ActorId("l"), kl);
  rel.add_edge(ActorId("l"), ActorId("m"), lm);
  return TrustEnv({rel});
}

inline StepConfig two_c_config() { return parse_config(read_text(data_path("two_c.vcfg"))); }

inline Goal four_c_goal() {
  Claim cc = Claim::conj(atom("C"), atom("C"));
  return make_goal(ActorId("a1"), Claim::conj(cc, cc));
}

inline Vocabulary curried_vocab() { return parse_vocabulary(read_text(data_path("curried.vocab"))); }

constexpr double kFourCScales[] = {1, 0.8, 0.8, 0.63};

}  // namespace fx
