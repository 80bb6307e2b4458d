#pragma once

// Text syntax for claims, evidence, judgements, trust files and search
// configurations. Printers emit text the parsers read back to an equal value.
//
//   claim      C1 /\ (C2 \/ C3) -> _|_        (/\ > \/ > ->, -> to the right)
//   evidence   \x. (x, e1)  i(e)  j(e)  app(f, a)  cases(c, (x) d, (y) f)
//              split(c, (x, y) d)  name{who="Ann"}  ?free_var  'bound_name
//   judgement  e ^ P @ 0.5 in C               (weight optional, "1/3" allowed)
//   trust      relation T / k T[0.5] l / k T l

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "veracity/search.hpp"

namespace veracity {

Claim parse_claim(std::string_view text);
std::string print_claim(const Claim& c);

// Names bound by an enclosing lambda/cases/split are variables, other names
// are atoms. `?x` forces a free variable, `'x` an atom.
Evidence parse_evidence(std::string_view text);
std::string print_evidence(const Evidence& e);

Judgement parse_judgement(std::string_view text);
std::string print_judgement(const Judgement& j);

// "0.25", "1", "1/3".
Weight parse_weight(std::string_view text);

// A judgement whose evidence may be `_` (searched goals carry none).
struct GoalSpec {
  std::optional<Evidence> evidence;
  ActorId actor;
  Weight weight;
  Claim claim;
};
GoalSpec parse_goal(std::string_view text);
Goal to_goal(const GoalSpec& spec);

// One or more relations; every edge names the relation it belongs to.
std::vector<TrustRelation> parse_trust(std::string_view text);
std::string print_trust(const TrustRelation& rel);
TrustEdge parse_trust_edge(std::string_view text);
std::string print_trust_edge(const TrustEdge& edge);

// Sections "assume:", "trust:", "rules:", "depth:", "max-proofs:"; items may
// follow the colon or sit on the lines below it. `#` starts a comment.
StepConfig parse_config(std::string_view text);
std::string print_config(const StepConfig& cfg);

}  // namespace veracity
