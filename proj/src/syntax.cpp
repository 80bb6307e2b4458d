#include "veracity/syntax.hpp"

#include <algorithm>
#include <charconv>
#include <regex>
#include <sstream>

namespace veracity {

namespace {

//------------------------------------------------------------------------------
// Lexer

struct Token {
  enum class Kind { Ident, Number, String, Sym, End };
  Kind kind;
  std::string text;
  std::size_t line;
  std::size_t col;
};

bool ident_start(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }
bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }
bool digit(char c) { return c >= '0' && c <= '9'; }

std::vector<Token> lex(std::string_view src, std::size_t line = 1, std::size_t col = 1) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  auto starts = [&](std::string_view s) { return src.substr(i, s.size()) == s; };

  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t{Token::Kind::Sym, "", line, col};
    if (starts("_|_")) {
      t.text = "_|_";
    } else if (starts("/\\")) {
      t.text = "/\\";
    } else if (starts("\\/")) {
      t.text = "\\/";
    } else if (starts("->")) {
      t.text = "->";
    } else if (ident_start(c)) {
      std::size_t j = i;
      while (j < src.size() && ident_char(src[j])) ++j;
      t.kind = Token::Kind::Ident;
      t.text = std::string(src.substr(i, j - i));
    } else if (digit(c)) {
      std::size_t j = i;
      while (j < src.size() && digit(src[j])) ++j;
      if (j + 1 < src.size() && src[j] == '.' && digit(src[j + 1])) {
        ++j;
        while (j < src.size() && digit(src[j])) ++j;
      }
      t.kind = Token::Kind::Number;
      t.text = std::string(src.substr(i, j - i));
    } else if (c == '"') {
      std::string value;
      std::size_t j = i + 1;
      for (;; ++j) {
        if (j >= src.size() || src[j] == '\n') throw ParseError("unterminated string", line, col);
        if (src[j] == '"') break;
        if (src[j] == '\\' && j + 1 < src.size()) {
          char e = src[++j];
          value += e == 'n' ? '\n' : e == 't' ? '\t' : e;
        } else {
          value += src[j];
        }
      }
      t.kind = Token::Kind::String;
      t.text = value;
      advance(j + 1 - i);
      out.push_back(std::move(t));
      continue;
    } else if (std::string_view("\\()[]{},.^@?'=/:").find(c) != std::string_view::npos) {
      t.text = std::string(1, c);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    advance(t.text.size());
    out.push_back(std::move(t));
  }
  out.push_back(Token{Token::Kind::End, "", line, col});
  return out;
}

//------------------------------------------------------------------------------
// Parser

Rational decimal_rational(const std::string& text) {
  using boost::multiprecision::cpp_int;
  auto dot = text.find('.');
  std::string digits = dot == std::string::npos ? text : text.substr(0, dot) + text.substr(dot + 1);
  // cpp_int reads a leading zero as octal.
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  cpp_int den = 1;
  if (dot != std::string::npos)
    for (std::size_t k = dot + 1; k < text.size(); ++k) den *= 10;
  return Rational(cpp_int(digits), den);
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool at_sym(std::string_view s, std::size_t ahead = 0) const {
    return peek(ahead).kind == Token::Kind::Sym && peek(ahead).text == s;
  }
  bool at_ident(std::string_view s) const { return peek().kind == Token::Kind::Ident && peek().text == s; }

  [[noreturn]] void fail(const std::string& msg, const Token& at) const {
    throw ParseError(msg, at.line, at.col);
  }
  [[noreturn]] void fail_here(const std::string& expected) const {
    const Token& t = peek();
    std::string got = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
    fail("expected " + expected + ", found " + got, t);
  }

  void expect_sym(std::string_view s) {
    if (!at_sym(s)) fail_here("'" + std::string(s) + "'");
    next();
  }
  std::string expect_ident(const char* what) {
    if (peek().kind != Token::Kind::Ident || peek().text == "_") fail_here(what);
    return next().text;
  }
  void expect_keyword(std::string_view kw) {
    if (!at_ident(kw)) fail_here("'" + std::string(kw) + "'");
    next();
  }
  void expect_end() {
    if (peek().kind != Token::Kind::End) fail_here("end of input");
  }

  // claim := or ('->' claim)?
  Claim claim() {
    Claim left = disjunction();
    if (at_sym("->")) {
      next();
      return Claim::implies(left, claim());
    }
    return left;
  }

  Claim disjunction() {
    Claim c = conjunction();
    while (at_sym("\\/")) {
      next();
      c = Claim::disj(c, conjunction());
    }
    return c;
  }

  Claim conjunction() {
    Claim c = claim_atom();
    while (at_sym("/\\")) {
      next();
      c = Claim::conj(c, claim_atom());
    }
    return c;
  }

  Claim claim_atom() {
    if (at_sym("_|_")) {
      next();
      return Claim::bottom();
    }
    if (at_sym("(")) {
      next();
      Claim c = claim();
      expect_sym(")");
      return c;
    }
    return Claim::atomic(expect_ident("a claim"));
  }

  Evidence evidence() {
    if (at_sym("\\")) {
      next();
      std::string var = expect_ident("a variable");
      expect_sym(".");
      bound_.push_back(var);
      Evidence body = evidence();
      bound_.pop_back();
      return Evidence::lambda(var, body);
    }
    if (at_sym("(")) {
      next();
      Evidence first = evidence();
      if (at_sym(")")) {
        next();
        return first;
      }
      expect_sym(",");
      Evidence second = evidence();
      expect_sym(")");
      return Evidence::pair(first, second);
    }
    if (at_sym("?")) {
      next();
      return Evidence::var(expect_ident("a variable"));
    }
    if (at_sym("'")) {
      next();
      std::string name = expect_ident("a name");
      return Evidence::atom(name, payload());
    }
    if (peek().kind == Token::Kind::Ident && peek().text != "_" && at_sym("(", 1)) {
      const std::string& kw = peek().text;
      if (kw == "i" || kw == "j") {
        bool left = kw == "i";
        next();
        next();
        Evidence inner = evidence();
        expect_sym(")");
        return left ? Evidence::tag_left(inner) : Evidence::tag_right(inner);
      }
      if (kw == "app") {
        next();
        next();
        Evidence fn = evidence();
        expect_sym(",");
        Evidence arg = evidence();
        expect_sym(")");
        return Evidence::app(fn, arg);
      }
      if (kw == "cases") {
        next();
        next();
        Evidence scrutinee = evidence();
        expect_sym(",");
        auto [lv, left] = branch();
        expect_sym(",");
        auto [rv, right] = branch();
        expect_sym(")");
        return Evidence::cases(scrutinee, lv, left, rv, right);
      }
      if (kw == "split") {
        next();
        next();
        Evidence scrutinee = evidence();
        expect_sym(",");
        expect_sym("(");
        std::string x = expect_ident("a variable");
        expect_sym(",");
        std::string y = expect_ident("a variable");
        expect_sym(")");
        bound_.push_back(x);
        bound_.push_back(y);
        Evidence body = evidence();
        bound_.resize(bound_.size() - 2);
        expect_sym(")");
        return Evidence::split(scrutinee, x, y, body);
      }
    }
    if (peek().kind == Token::Kind::Ident && peek().text != "_") {
      std::string name = next().text;
      if (std::find(bound_.begin(), bound_.end(), name) != bound_.end()) {
        if (at_sym("{")) fail("a bound variable cannot carry provenance", peek());
        return Evidence::var(name);
      }
      return Evidence::atom(name, payload());
    }
    fail_here("evidence");
  }

  std::pair<std::string, Evidence> branch() {
    expect_sym("(");
    std::string var = expect_ident("a variable");
    expect_sym(")");
    bound_.push_back(var);
    Evidence body = evidence();
    bound_.pop_back();
    return {var, body};
  }

  Payload payload() {
    Payload out;
    if (!at_sym("{")) return out;
    next();
    while (!at_sym("}")) {
      const Token& key_tok = peek();
      std::string key = expect_ident("a provenance key");
      expect_sym("=");
      if (peek().kind != Token::Kind::String) fail_here("a quoted value");
      if (!out.emplace(key, next().text).second) fail("duplicate key '" + key + "'", key_tok);
      if (!at_sym(",")) break;
      next();
    }
    expect_sym("}");
    return out;
  }

  Weight weight() {
    const Token& at = peek();
    if (at.kind != Token::Kind::Number) fail_here("a weight");
    Rational value = decimal_rational(next().text);
    if (at_sym("/")) {
      next();
      if (peek().kind != Token::Kind::Number || peek().text.find('.') != std::string::npos) {
        fail_here("an integer denominator");
      }
      Rational den = decimal_rational(next().text);
      if (den == 0) fail("zero denominator", at);
      value /= den;
    }
    return Weight(value);
  }

  // ev '^' actor ('@' weight)? 'in' claim
  Judgement judgement_tail(Evidence e) {
    expect_sym("^");
    ActorId actor(expect_ident("an actor"));
    Weight w;
    if (at_sym("@")) {
      next();
      w = weight();
    }
    expect_keyword("in");
    Claim c = claim();
    return Judgement{std::move(e), std::move(actor), w, std::move(c)};
  }

  TrustEdge edge() {
    ActorId truster(expect_ident("a truster"));
    std::string rel = expect_ident("a relation name");
    Weight w;
    if (at_sym("[")) {
      next();
      w = weight();
      expect_sym("]");
    }
    ActorId trusted(expect_ident("a trusted actor"));
    return TrustEdge{rel, truster, trusted, w};
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<std::string> bound_;
};

template <class F>
auto parse_all(std::string_view text, F&& f, std::size_t line = 1, std::size_t col = 1) {
  Parser p(lex(text, line, col));
  auto out = f(p);
  p.expect_end();
  return out;
}

//------------------------------------------------------------------------------
// Printers

int precedence(Claim::Kind k) {
  switch (k) {
    case Claim::Kind::Implies: return 1;
    case Claim::Kind::Or: return 2;
    case Claim::Kind::And: return 3;
    default: return 4;
  }
}

void print_claim_to(const Claim& c, int min_prec, std::string& out) {
  int prec = precedence(c.kind());
  bool wrap = prec < min_prec;
  if (wrap) out += '(';
  switch (c.kind()) {
    case Claim::Kind::Atomic: out += c.name(); break;
    case Claim::Kind::Bottom: out += "_|_"; break;
    case Claim::Kind::And:
      print_claim_to(c.left(), 3, out);
      out += " /\\ ";
      print_claim_to(c.right(), 4, out);
      break;
    case Claim::Kind::Or:
      print_claim_to(c.left(), 2, out);
      out += " \\/ ";
      print_claim_to(c.right(), 3, out);
      break;
    case Claim::Kind::Implies:
      print_claim_to(c.left(), 2, out);
      out += " -> ";
      print_claim_to(c.right(), 1, out);
      break;
  }
  if (wrap) out += ')';
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (c == '\n') {
      out += "\\n";
    } else if (c == '\t') {
      out += "\\t";
    } else {
      out += c;
    }
  }
  return out + '"';
}

struct EvidencePrinter {
  std::vector<std::string> bound;
  std::string out;

  bool is_bound(const std::string& n) const { return std::find(bound.begin(), bound.end(), n) != bound.end(); }

  // Printed bare, a keyword followed by '(' would read as a constructor;
  // names are never followed by '(' so this cannot arise.
  void print(const Evidence& e) {
    std::visit(overloaded{
                   [&](const ev::Atom& a) {
                     if (is_bound(a.name)) out += '\'';
                     out += a.name;
                     if (!a.payload.empty()) {
                       out += '{';
                       bool first = true;
                       for (const auto& [k, v] : a.payload) {
                         if (!first) out += ", ";
                         first = false;
                         out += k + "=" + quote(v);
                       }
                       out += '}';
                     }
                   },
                   [&](const ev::Var& v) {
                     if (!is_bound(v.name)) out += '?';
                     out += v.name;
                   },
                   [&](const ev::Pair& p) {
                     out += '(';
                     print(p.first);
                     out += ", ";
                     print(p.second);
                     out += ')';
                   },
                   [&](const ev::TagLeft& t) {
                     out += "i(";
                     print(t.inner);
                     out += ')';
                   },
                   [&](const ev::TagRight& t) {
                     out += "j(";
                     print(t.inner);
                     out += ')';
                   },
                   [&](const ev::Lambda& l) {
                     out += "\\" + l.var + ". ";
                     bound.push_back(l.var);
                     print(l.body);
                     bound.pop_back();
                   },
                   [&](const ev::App& a) {
                     out += "app(";
                     print(a.fn);
                     out += ", ";
                     print(a.arg);
                     out += ')';
                   },
                   [&](const ev::Cases& c) {
                     out += "cases(";
                     print(c.scrutinee);
                     out += ", (" + c.left_var + ") ";
                     bound.push_back(c.left_var);
                     print(c.left);
                     bound.pop_back();
                     out += ", (" + c.right_var + ") ";
                     bound.push_back(c.right_var);
                     print(c.right);
                     bound.pop_back();
                     out += ')';
                   },
                   [&](const ev::Split& s) {
                     out += "split(";
                     print(s.scrutinee);
                     out += ", (" + s.first_var + ", " + s.second_var + ") ";
                     bound.push_back(s.first_var);
                     bound.push_back(s.second_var);
                     print(s.body);
                     bound.resize(bound.size() - 2);
                     out += ')';
                   },
               },
               e.node());
  }
};

std::string strip_comment(std::string_view line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (in_string && c == '\\') {
      ++i;
    } else if (c == '"') {
      in_string = !in_string;
    } else if (c == '#' && !in_string) {
      return std::string(line.substr(0, i));
    }
  }
  return std::string(line);
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t' || c == '\r'; });
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      out.emplace_back(text.substr(start));
      break;
    }
    out.emplace_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return out;
}

std::size_t parse_count(const std::string& text, std::size_t line, std::size_t col) {
  std::size_t first = text.find_first_not_of(" \t\r");
  std::size_t last = text.find_last_not_of(" \t\r");
  if (first == std::string::npos) throw ParseError("expected a number", line, col);
  std::string_view digits(text.data() + first, last - first + 1);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw ParseError("expected a non-negative integer, found '" + std::string(digits) + "'", line,
                     col + first);
  }
  return value;
}

}  // namespace

//------------------------------------------------------------------------------

Claim parse_claim(std::string_view text) {
  return parse_all(text, [](Parser& p) { return p.claim(); });
}

std::string print_claim(const Claim& c) {
  std::string out;
  print_claim_to(c, 1, out);
  return out;
}

Evidence parse_evidence(std::string_view text) {
  return parse_all(text, [](Parser& p) { return p.evidence(); });
}

std::string print_evidence(const Evidence& e) {
  EvidencePrinter p;
  p.print(e);
  return p.out;
}

Judgement parse_judgement(std::string_view text) {
  return parse_all(text, [](Parser& p) { return p.judgement_tail(p.evidence()); });
}

std::string print_judgement(const Judgement& j) {
  std::string out = print_evidence(j.evidence) + " ^ " + j.actor.name();
  if (!j.weight.is_one()) out += " @ " + j.weight.to_string();
  return out + " in " + print_claim(j.claim);
}

Weight parse_weight(std::string_view text) {
  return parse_all(text, [](Parser& p) { return p.weight(); });
}

GoalSpec parse_goal(std::string_view text) {
  return parse_all(text, [](Parser& p) {
    bool wildcard = p.at_ident("_");
    if (wildcard) p.next();
    // The placeholder evidence is dropped again below.
    Judgement j = p.judgement_tail(wildcard ? Evidence::atom("_") : p.evidence());
    std::optional<Evidence> e;
    if (!wildcard) e = j.evidence;
    return GoalSpec{e, j.actor, j.weight, j.claim};
  });
}

Goal to_goal(const GoalSpec& spec) { return make_goal(spec.actor, spec.claim); }

TrustEdge parse_trust_edge(std::string_view text) {
  return parse_all(text, [](Parser& p) { return p.edge(); });
}

std::string print_trust_edge(const TrustEdge& e) {
  std::string out = e.truster.name() + " " + e.relation;
  if (!e.weight.is_one()) out += "[" + e.weight.to_string() + "]";
  return out + " " + e.trusted.name();
}

std::vector<TrustRelation> parse_trust(std::string_view text) {
  std::vector<TrustRelation> out;
  auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    std::string line = strip_comment(lines[n]);
    if (blank(line)) continue;
    std::size_t lineno = n + 1;
    Parser p(lex(line, lineno, 1));
    if (p.at_ident("relation")) {
      p.next();
      const Token& at = p.peek();
      std::string name = p.expect_ident("a relation name");
      p.expect_end();
      for (const auto& r : out)
        if (r.name() == name) throw ParseError("relation '" + name + "' declared twice", lineno, at.col);
      out.emplace_back(name);
      continue;
    }
    const Token& start = p.peek();
    TrustEdge e = p.edge();
    p.expect_end();
    if (out.empty()) throw ParseError("edge before any 'relation' header", lineno, start.col);
    if (e.relation != out.back().name()) {
      throw ParseError("edge names relation '" + e.relation + "' under header '" + out.back().name() + "'",
                       lineno, start.col);
    }
    try {
      out.back().add_edge(e.truster, e.trusted, e.weight);
    } catch (const Error& err) {
      throw ParseError(err.what(), lineno, start.col);
    }
  }
  return out;
}

std::string print_trust(const TrustRelation& rel) {
  std::string out = "relation " + rel.name() + "\n";
  for (const auto& e : rel.edges()) out += print_trust_edge(e) + "\n";
  return out;
}

StepConfig parse_config(std::string_view text) {
  static const std::regex header(R"(^(\s*)([A-Za-z][A-Za-z-]*)\s*:(.*)$)");
  enum class Section { None, Assume, Trust, Rules, Depth, MaxProofs };
  StepConfig cfg;
  Section section = Section::None;
  bool rules_seen = false;

  auto lines = split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    std::size_t lineno = n + 1;
    std::string line = strip_comment(lines[n]);
    std::string item = line;
    std::size_t col = 1;
    std::smatch m;
    if (std::regex_match(line, m, header)) {
      std::string key = m[2];
      if (key == "assume") {
        section = Section::Assume;
      } else if (key == "trust") {
        section = Section::Trust;
      } else if (key == "rules") {
        section = Section::Rules;
        if (!rules_seen) cfg.enabled_rules.clear();
        rules_seen = true;
      } else if (key == "depth") {
        section = Section::Depth;
      } else if (key == "max-proofs") {
        section = Section::MaxProofs;
      } else {
        throw ParseError("unknown section '" + key + "'", lineno, m.position(2) + 1);
      }
      item = m[3];
      col = static_cast<std::size_t>(m.position(3)) + 1;
    }
    if (blank(item)) continue;
    std::size_t skip = item.find_first_not_of(" \t");
    col += skip;
    item = item.substr(skip);

    switch (section) {
      case Section::None: throw ParseError("expected a section header such as 'assume:'", lineno, col);
      case Section::Assume:
        cfg.assumables.push_back(parse_all(item, [](Parser& p) { return p.judgement_tail(p.evidence()); },
                                           lineno, col));
        break;
      case Section::Trust:
        cfg.trust_edges.push_back(parse_all(item, [](Parser& p) { return p.edge(); }, lineno, col));
        break;
      case Section::Rules: {
        Parser p(lex(item, lineno, col));
        while (p.peek().kind != Token::Kind::End) {
          if (p.at_sym(",")) {
            p.next();
            continue;
          }
          const Token& t = p.peek();
          std::string name = p.expect_ident("a rule name");
          try {
            cfg.enabled_rules.insert(rule_from_string(name));
          } catch (const Error&) {
            throw ParseError("unknown rule '" + name + "'", t.line, t.col);
          }
        }
        break;
      }
      case Section::Depth: cfg.depth_limit = parse_count(item, lineno, col); break;
      case Section::MaxProofs: cfg.max_proofs = parse_count(item, lineno, col); break;
    }
  }
  cfg.validate();
  return cfg;
}

std::string print_config(const StepConfig& cfg) {
  std::ostringstream out;
  if (!cfg.assumables.empty()) {
    out << "assume:\n";
    for (const auto& a : cfg.assumables) out << "  " << print_judgement(a) << "\n";
  }
  if (!cfg.trust_edges.empty()) {
    out << "trust:\n";
    for (const auto& e : cfg.trust_edges) out << "  " << print_trust_edge(e) << "\n";
  }
  out << "rules:";
  bool first = true;
  for (RuleName r : cfg.enabled_rules) {
    out << (first ? " " : ", ") << to_string(r);
    first = false;
  }
  out << "\ndepth: " << cfg.depth_limit << "\nmax-proofs: " << cfg.max_proofs << "\n";
  return out.str();
}

}  // namespace veracity
