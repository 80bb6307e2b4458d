#include <sstream>

#include "veracity/render.hpp"

namespace veracity {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::string escape_underscores(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '_') out += '\\';
    out += c;
  }
  return out;
}

std::string word(const std::string& s) {
  if (s.size() <= 1) return escape_underscores(s);
  return "\\mathit{" + escape_underscores(s) + "}";
}

}  // namespace

// C1 -> C_{1}, a1 -> a_{1}, Peter -> \mathit{Peter}
std::string latex_identifier(const std::string& name) {
  std::size_t split = name.size();
  while (split > 0 && is_digit(name[split - 1])) --split;
  if (split == 0 || split == name.size() || name[split - 1] == '_') return word(name);
  return word(name.substr(0, split)) + "_{" + name.substr(split) + "}";
}

std::string latex_claim(const Claim& c, bool parenthesize) {
  const char* op = nullptr;
  switch (c.kind()) {
    case Claim::Kind::Atomic: return latex_identifier(c.name());
    case Claim::Kind::Bottom: return "\\bot";
    case Claim::Kind::And: op = " \\wedge "; break;
    case Claim::Kind::Or: op = " \\vee "; break;
    case Claim::Kind::Implies: op = " \\rightarrow "; break;
  }
  std::string inner = latex_claim(c.left(), parenthesize) + op + latex_claim(c.right(), parenthesize);
  return parenthesize ? "(" + inner + ")" : inner;
}

std::string latex_evidence(const Evidence& e) {
  return std::visit(
      overloaded{
          [](const ev::Atom& a) { return latex_identifier(a.name); },
          [](const ev::Var& v) { return latex_identifier(v.name); },
          [](const ev::Pair& p) {
            return "(" + latex_evidence(p.first) + ", " + latex_evidence(p.second) + ")";
          },
          [](const ev::TagLeft& t) { return "i(" + latex_evidence(t.inner) + ")"; },
          [](const ev::TagRight& t) { return "j(" + latex_evidence(t.inner) + ")"; },
          [](const ev::Lambda& l) {
            return "\\lambda(" + latex_identifier(l.var) + ")(" + latex_evidence(l.body) + ")";
          },
          [](const ev::App& a) {
            return "app(" + latex_evidence(a.fn) + ", " + latex_evidence(a.arg) + ")";
          },
          [](const ev::Cases& c) {
            return "cases(" + latex_evidence(c.scrutinee) + ", (" + latex_identifier(c.left_var) + ")" +
                   latex_evidence(c.left) + ", (" + latex_identifier(c.right_var) + ")" +
                   latex_evidence(c.right) + ")";
          },
          [](const ev::Split& s) {
            return "split(" + latex_evidence(s.scrutinee) + ", (" + latex_identifier(s.first_var) + ", " +
                   latex_identifier(s.second_var) + ")" + latex_evidence(s.body) + ")";
          },
      },
      e.node());
}

std::string latex_judgement(const Judgement& j, bool parenthesize) {
  std::string out = latex_evidence(j.evidence);
  if (!j.weight.is_one()) out += "_{" + j.weight.to_string() + "}";
  return out + "^{" + latex_identifier(j.actor.name()) + "} \\in " + latex_claim(j.claim, parenthesize);
}

std::string latex_sequent(const Sequent& s, bool parenthesize) {
  std::string out;
  for (const auto& a : s.assumptions) {
    if (!out.empty()) out += ", ";
    out += latex_judgement(a, parenthesize);
  }
  if (!out.empty()) out += " \\vdash_{} ";
  return out + latex_judgement(s.conclusion, parenthesize);
}

std::string latex_rule_label(const RuleInstance& instance) {
  switch (instance.name()) {
    case RuleName::Assume: return "assume";
    case RuleName::BotElim: return "\\bot^{-}";
    case RuleName::AndIntro: return "\\wedge^{+}";
    case RuleName::AndElim1: return "\\wedge^{-}1";
    case RuleName::AndElim2: return "\\wedge^{-}2";
    case RuleName::AndElimSplit: return "\\wedge^{-}";
    case RuleName::OrIntro1: return "\\vee^{+}1";
    case RuleName::OrIntro2: return "\\vee^{+}2";
    case RuleName::OrElim1: return "\\vee^{-}1";
    case RuleName::OrElim2: return "\\vee^{-}2";
    case RuleName::OrElimCases: return "\\vee^{-}";
    case RuleName::ImplIntro: return "\\rightarrow^+";
    case RuleName::ImplElim: return "\\rightarrow^-";
    case RuleName::Trust: return "trust\\ " + latex_identifier(instance.as<rule::Trust>()->edge.relation);
  }
  return "";
}

namespace {

void render_node(const ProofTree& t, bool paren, std::string& out) {
  std::string seq = latex_sequent(t.conclusion, paren);
  if (t.instance.name() == RuleName::Assume) {
    out += "\\AxiomC{$ " + latex_claim(t.conclusion.conclusion.claim, paren) +
           " \\textit{ is a veracity claim} $} \\RightLabel{ $ assume $}\\UnaryInfC{$ " + seq + " $}";
    return;
  }
  for (const auto& p : t.premises) render_node(p, paren, out);
  static const char* const kInf[] = {"\\AxiomC", "\\UnaryInfC", "\\BinaryInfC", "\\TrinaryInfC"};
  out += " \\RightLabel{ $ " + latex_rule_label(t.instance) + " $} " + kInf[t.premises.size()] + "{$ " +
         seq + " $}";
}

}  // namespace

std::string render_latex(const ProofTree& tree, const LatexOptions& opts) {
  std::ostringstream scale;
  scale << opts.scale;
  std::string out = "\\begin{scprooftree}{" + scale.str() + "}";
  render_node(tree, opts.parenthesize_claims, out);
  return out + "\\end{scprooftree}\n";
}

}  // namespace veracity
