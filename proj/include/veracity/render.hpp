#pragma once

// Output formats for proof trees: bussproofs LaTeX, nested-itemize English,
// and a JSON interchange format that reads back to an equal tree.

#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

#include "veracity/search.hpp"

namespace veracity {

struct LatexOptions {
  double scale = 1.0;
  // Wrap every compound claim in parentheses; without it connectives are
  // printed flat, as in tables where associativity is not in question.
  bool parenthesize_claims = true;
};

std::string latex_identifier(const std::string& name);
std::string latex_claim(const Claim& c, bool parenthesize = true);
std::string latex_evidence(const Evidence& e);
std::string latex_judgement(const Judgement& j, bool parenthesize = true);
std::string latex_sequent(const Sequent& s, bool parenthesize = true);
std::string latex_rule_label(const RuleInstance& instance);

std::string render_latex(const ProofTree& tree, const LatexOptions& opts = {});

// Display names for claim atoms and actors ("C1" -> "claim 1"). Unlisted
// names are printed as they are.
struct Vocabulary {
  std::map<std::string, std::string> names;
  std::string lookup(const std::string& name) const;
};

// Lines "name = display text"; '#' starts a comment.
Vocabulary parse_vocabulary(std::string_view text);

std::string nl_claim(const Claim& c, const Vocabulary& vocab = {});
std::string nl_judgement(const Judgement& j, const Vocabulary& vocab = {});
std::string render_nl(const ProofTree& tree, const Vocabulary& vocab = {});

nlohmann::json judgement_to_json(const Judgement& j);
Judgement judgement_from_json(const nlohmann::json& j);
nlohmann::json proof_to_json(const ProofTree& tree);
ProofTree proof_from_json(const nlohmann::json& j);

// Whole document with a format header. parse_machine does not check the
// tree; it only rebuilds it.
std::string render_machine(const ProofTree& tree);
ProofTree parse_machine(std::string_view text);

nlohmann::json goal_to_json(const Goal& g);
Goal goal_from_json(const nlohmann::json& j);
nlohmann::json partial_to_json(const PartialProof& p);
PartialProof partial_from_json(const nlohmann::json& j);

nlohmann::json config_to_json(const StepConfig& cfg);
StepConfig config_from_json(const nlohmann::json& j);

}  // namespace veracity
