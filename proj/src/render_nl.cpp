#include "veracity/render.hpp"

namespace veracity {

std::string Vocabulary::lookup(const std::string& name) const {
  auto it = names.find(name);
  return it == names.end() ? name : it->second;
}

Vocabulary parse_vocabulary(std::string_view text) {
  Vocabulary v;
  std::size_t line = 0;
  std::size_t start = 0;
  auto trim = [](std::string s) {
    auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return std::string();
    auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
  };
  while (start <= text.size()) {
    ++line;
    auto nl = text.find('\n', start);
    std::string raw(text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start));
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    if (trim(raw).empty()) continue;
    auto eq = raw.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'name = text'", line, 1);
    std::string key = trim(raw.substr(0, eq));
    std::string value = trim(raw.substr(eq + 1));
    if (key.empty()) throw ParseError("missing name before '='", line, 1);
    v.names[key] = value;
  }
  return v;
}

std::string nl_claim(const Claim& c, const Vocabulary& vocab) {
  const char* op = nullptr;
  switch (c.kind()) {
    case Claim::Kind::Atomic: return vocab.lookup(c.name());
    case Claim::Kind::Bottom: return "falsity";
    case Claim::Kind::And: op = " and "; break;
    case Claim::Kind::Or: op = " or "; break;
    case Claim::Kind::Implies: op = " implies "; break;
  }
  return "(" + nl_claim(c.left(), vocab) + op + nl_claim(c.right(), vocab) + ")";
}

std::string nl_judgement(const Judgement& j, const Vocabulary& vocab) {
  std::string out = nl_claim(j.claim, vocab) + " is supported by $" + latex_evidence(j.evidence) +
                    "$ which " + vocab.lookup(j.actor.name()) + " uses";
  if (!j.weight.is_one()) out += " with weight " + j.weight.to_string();
  return out;
}

namespace {

std::string sentence(const Sequent& s, const Vocabulary& vocab) {
  const auto& ctx = s.assumptions.entries();
  std::string out;
  if (!ctx.empty()) {
    out = "Assuming ";
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      if (i > 0) out += i + 1 == ctx.size() ? ", and " : ", ";
      out += nl_judgement(ctx[i], vocab);
    }
    out += " then ";
  }
  return out + nl_judgement(s.conclusion, vocab);
}

std::string justification(const RuleInstance& instance, const Vocabulary& vocab) {
  switch (instance.name()) {
    case RuleName::Assume: return "by assumption.";
    case RuleName::BotElim: return "by a logical rule for falsity.";
    case RuleName::AndIntro:
    case RuleName::AndElim1:
    case RuleName::AndElim2:
    case RuleName::AndElimSplit: return "by a logical rule for 'and'.";
    case RuleName::OrIntro1:
    case RuleName::OrIntro2:
    case RuleName::OrElim1:
    case RuleName::OrElim2:
    case RuleName::OrElimCases: return "by a logical rule for 'or'.";
    case RuleName::ImplIntro:
    case RuleName::ImplElim: return "by a logical rule for implication.";
    case RuleName::Trust: {
      const auto& e = instance.as<rule::Trust>()->edge;
      return "by trust relation " + e.relation + ", because " + vocab.lookup(e.truster.name()) + " trusts " +
             vocab.lookup(e.trusted.name()) + " (weight " + e.weight.to_string() + ").";
    }
  }
  return "";
}

// Items of level L sit at column 2L+2; the outermost list's own
// \begin line is the only one at column 0.
void render_item(const ProofTree& t, std::size_t level, const Vocabulary& vocab, std::string& out) {
  std::string pad(2 * level + 2, ' ');
  std::string inner(2 * level + 4, ' ');
  out += pad + "\\item " + sentence(t.conclusion, vocab) + ", because\n";
  out += inner + "\\begin{itemize}\n";
  if (t.instance.name() == RuleName::Assume) {
    out += inner + "\\item " + nl_claim(t.conclusion.conclusion.claim, vocab) + " is a veracity claim.\n";
  } else {
    for (const auto& p : t.premises) render_item(p, level + 1, vocab, out);
  }
  out += inner + "\\end{itemize}\n";
  out += pad + "\\item " + justification(t.instance, vocab) + "\n";
}

}  // namespace

std::string render_nl(const ProofTree& tree, const Vocabulary& vocab) {
  std::string out = "\\begin{itemize}\n";
  render_item(tree, 0, vocab, out);
  return out + "  \\end{itemize}\n";
}

}  // namespace veracity
