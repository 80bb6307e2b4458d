#include "veracity/core.hpp"

#include <algorithm>
#include <functional>

namespace veracity {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t str_hash(const std::string& s) { return std::hash<std::string>{}(s); }

}  // namespace

std::optional<std::string> exact_decimal(const Rational& r) {
  using boost::multiprecision::cpp_int;
  cpp_int num = boost::multiprecision::numerator(r);
  cpp_int den = boost::multiprecision::denominator(r);
  bool negative = num < 0;
  if (negative) num = -num;

  cpp_int rest = den;
  unsigned twos = 0, fives = 0;
  while (rest % 2 == 0) { rest /= 2; ++twos; }
  while (rest % 5 == 0) { rest /= 5; ++fives; }
  if (rest != 1) return std::nullopt;

  unsigned digits = std::max(twos, fives);
  cpp_int scale = 1;
  for (unsigned i = 0; i < digits; ++i) scale *= 10;
  cpp_int scaled = num * (scale / den);

  std::string whole = cpp_int(scaled / scale).str();
  std::string out = negative ? "-" + whole : whole;
  if (digits == 0) return out;

  std::string frac = cpp_int(scaled % scale).str();
  frac.insert(0, digits - frac.size(), '0');
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  if (!frac.empty()) out += "." + frac;
  return out;
}

std::string fraction_string(const Rational& r) {
  auto num = boost::multiprecision::numerator(r);
  auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

//------------------------------------------------------------------------------

ActorId::ActorId(std::string name) : name_(std::move(name)) {
  if (name_.empty()) throw Error(ErrorCode::ParseError, "actor name must not be empty");
}

Weight::Weight(const Rational& value) : value_(value) {
  if (value_ < 0 || value_ > 1) {
    throw Error(ErrorCode::WeightOutOfRange,
                "weight " + fraction_string(value_) + " is outside [0, 1]");
  }
}

std::string Weight::to_string() const {
  if (auto d = exact_decimal(value_)) return *d;
  return fraction_string(value_);
}

Weight weight_mul(const Weight& a, const Weight& b) { return Weight(a.value() * b.value()); }

//------------------------------------------------------------------------------
// Claims

struct ClaimNode {
  Claim::Kind kind;
  std::string name;
  std::optional<Claim> left;
  std::optional<Claim> right;
  std::size_t hash;
  std::size_t connectives;
};

Claim Claim::atomic(std::string name) {
  if (name.empty()) throw Error(ErrorCode::ParseError, "claim name must not be empty");
  std::size_t h = mix(1, str_hash(name));
  return Claim(std::make_shared<const ClaimNode>(
      ClaimNode{Kind::Atomic, std::move(name), std::nullopt, std::nullopt, h, 0}));
}

Claim Claim::bottom() {
  static const Claim shared(std::make_shared<const ClaimNode>(
      ClaimNode{Kind::Bottom, "", std::nullopt, std::nullopt, 2, 0}));
  return shared;
}

Claim Claim::binary(Kind kind, Claim l, Claim r) {
  std::size_t h = mix(mix(static_cast<std::size_t>(kind) + 3, l.hash()), r.hash());
  std::size_t n = 1 + l.connectives() + r.connectives();
  return Claim(std::make_shared<const ClaimNode>(
      ClaimNode{kind, "", std::move(l), std::move(r), h, n}));
}

Claim Claim::conj(Claim left, Claim right) { return binary(Kind::And, std::move(left), std::move(right)); }
Claim Claim::disj(Claim left, Claim right) { return binary(Kind::Or, std::move(left), std::move(right)); }
Claim Claim::implies(Claim a, Claim c) { return binary(Kind::Implies, std::move(a), std::move(c)); }

Claim::Kind Claim::kind() const noexcept { return node_->kind; }
bool Claim::is_binary() const noexcept {
  return node_->kind == Kind::And || node_->kind == Kind::Or || node_->kind == Kind::Implies;
}
const std::string& Claim::name() const { return node_->name; }
const Claim& Claim::left() const { return *node_->left; }
const Claim& Claim::right() const { return *node_->right; }
std::size_t Claim::hash() const noexcept { return node_->hash; }
std::size_t Claim::connectives() const noexcept { return node_->connectives; }

bool operator==(const Claim& a, const Claim& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Claim::Kind::Atomic: return a.name() == b.name();
    case Claim::Kind::Bottom: return true;
    default: return a.left() == b.left() && a.right() == b.right();
  }
}

//------------------------------------------------------------------------------
// Evidence

namespace {

std::size_t node_hash(const Evidence::Variant& v) {
  return std::visit(
      overloaded{
          [](const ev::Atom& a) {
            std::size_t h = mix(11, str_hash(a.name));
            for (const auto& [k, val] : a.payload) h = mix(mix(h, str_hash(k)), str_hash(val));
            return h;
          },
          [](const ev::Var& x) { return mix(12, str_hash(x.name)); },
          [](const ev::Pair& p) { return mix(mix(13, p.first.hash()), p.second.hash()); },
          [](const ev::TagLeft& t) { return mix(14, t.inner.hash()); },
          [](const ev::TagRight& t) { return mix(15, t.inner.hash()); },
          [](const ev::Lambda& l) { return mix(mix(16, str_hash(l.var)), l.body.hash()); },
          [](const ev::App& a) { return mix(mix(17, a.fn.hash()), a.arg.hash()); },
          [](const ev::Cases& c) {
            std::size_t h = mix(18, c.scrutinee.hash());
            h = mix(mix(h, str_hash(c.left_var)), c.left.hash());
            return mix(mix(h, str_hash(c.right_var)), c.right.hash());
          },
          [](const ev::Split& s) {
            std::size_t h = mix(19, s.scrutinee.hash());
            h = mix(mix(h, str_hash(s.first_var)), str_hash(s.second_var));
            return mix(h, s.body.hash());
          },
      },
      v);
}

}  // namespace

Evidence Evidence::make(Variant v) {
  std::size_t h = node_hash(v);
  return Evidence(std::make_shared<const EvidenceNode>(EvidenceNode{std::move(v), h}));
}

Evidence Evidence::atom(std::string name, Payload payload) {
  if (name.empty()) throw Error(ErrorCode::ParseError, "evidence name must not be empty");
  return make(ev::Atom{std::move(name), std::move(payload)});
}
Evidence Evidence::var(std::string name) {
  if (name.empty()) throw Error(ErrorCode::ParseError, "variable name must not be empty");
  return make(ev::Var{std::move(name)});
}
Evidence Evidence::pair(Evidence first, Evidence second) {
  return make(ev::Pair{std::move(first), std::move(second)});
}
Evidence Evidence::tag_left(Evidence inner) { return make(ev::TagLeft{std::move(inner)}); }
Evidence Evidence::tag_right(Evidence inner) { return make(ev::TagRight{std::move(inner)}); }
Evidence Evidence::lambda(std::string var, Evidence body) {
  return make(ev::Lambda{std::move(var), std::move(body)});
}
Evidence Evidence::app(Evidence fn, Evidence arg) { return make(ev::App{std::move(fn), std::move(arg)}); }
Evidence Evidence::cases(Evidence scrutinee, std::string left_var, Evidence left,
                         std::string right_var, Evidence right) {
  return make(ev::Cases{std::move(scrutinee), std::move(left_var), std::move(left),
                        std::move(right_var), std::move(right)});
}
Evidence Evidence::split(Evidence scrutinee, std::string first_var, std::string second_var,
                         Evidence body) {
  return make(ev::Split{std::move(scrutinee), std::move(first_var), std::move(second_var),
                        std::move(body)});
}

bool Evidence::is_canonical_root() const noexcept {
  return !(is<ev::App>() || is<ev::Cases>() || is<ev::Split>());
}

bool operator==(const Evidence& a, const Evidence& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash()) return false;
  return a.node() == b.node();
}

namespace {

void collect_free(const Evidence& e, std::set<std::string>& bound, std::set<std::string>& out) {
  auto under = [&](std::initializer_list<std::string> vars, const Evidence& body) {
    std::vector<std::string> added;
    for (const auto& v : vars)
      if (bound.insert(v).second) added.push_back(v);
    collect_free(body, bound, out);
    for (const auto& v : added) bound.erase(v);
  };
  std::visit(overloaded{
                 [](const ev::Atom&) {},
                 [&](const ev::Var& x) {
                   if (!bound.count(x.name)) out.insert(x.name);
                 },
                 [&](const ev::Pair& p) {
                   collect_free(p.first, bound, out);
                   collect_free(p.second, bound, out);
                 },
                 [&](const ev::TagLeft& t) { collect_free(t.inner, bound, out); },
                 [&](const ev::TagRight& t) { collect_free(t.inner, bound, out); },
                 [&](const ev::Lambda& l) { under({l.var}, l.body); },
                 [&](const ev::App& a) {
                   collect_free(a.fn, bound, out);
                   collect_free(a.arg, bound, out);
                 },
                 [&](const ev::Cases& c) {
                   collect_free(c.scrutinee, bound, out);
                   under({c.left_var}, c.left);
                   under({c.right_var}, c.right);
                 },
                 [&](const ev::Split& s) {
                   collect_free(s.scrutinee, bound, out);
                   under({s.first_var, s.second_var}, s.body);
                 },
             },
             e.node());
}

}  // namespace

std::set<std::string> free_vars(const Evidence& e) {
  std::set<std::string> bound, out;
  collect_free(e, bound, out);
  return out;
}

bool occurs_free(const Evidence& e, const std::string& var) {
  return std::visit(
      overloaded{
          [](const ev::Atom&) { return false; },
          [&](const ev::Var& x) { return x.name == var; },
          [&](const ev::Pair& p) { return occurs_free(p.first, var) || occurs_free(p.second, var); },
          [&](const ev::TagLeft& t) { return occurs_free(t.inner, var); },
          [&](const ev::TagRight& t) { return occurs_free(t.inner, var); },
          [&](const ev::Lambda& l) { return l.var != var && occurs_free(l.body, var); },
          [&](const ev::App& a) { return occurs_free(a.fn, var) || occurs_free(a.arg, var); },
          [&](const ev::Cases& c) {
            return occurs_free(c.scrutinee, var) ||
                   (c.left_var != var && occurs_free(c.left, var)) ||
                   (c.right_var != var && occurs_free(c.right, var));
          },
          [&](const ev::Split& s) {
            return occurs_free(s.scrutinee, var) ||
                   (s.first_var != var && s.second_var != var && occurs_free(s.body, var));
          },
      },
      e.node());
}

namespace {

struct Substituter {
  const std::string& var;
  const Evidence& value;
  std::set<std::string> value_free;

  // Substitutes under a binder for `binders`; a binder equal to `var`
  // shadows it, one free in `value` would capture.
  Evidence under(std::initializer_list<std::reference_wrapper<const std::string>> binders,
                 const Evidence& body) const {
    for (const std::string& b : binders)
      if (b == var) return body;
    if (!occurs_free(body, var)) return body;
    for (const std::string& b : binders) {
      if (value_free.count(b)) {
        throw Error(ErrorCode::CaptureError,
                    "substituting for '" + var + "' would capture variable '" + b + "'");
      }
    }
    return run(body);
  }

  Evidence run(const Evidence& e) const {
    if (!occurs_free(e, var)) return e;
    return std::visit(
        overloaded{
            [&](const ev::Atom&) { return e; },
            [&](const ev::Var& x) { return x.name == var ? value : e; },
            [&](const ev::Pair& p) { return Evidence::pair(run(p.first), run(p.second)); },
            [&](const ev::TagLeft& t) { return Evidence::tag_left(run(t.inner)); },
            [&](const ev::TagRight& t) { return Evidence::tag_right(run(t.inner)); },
            [&](const ev::Lambda& l) { return Evidence::lambda(l.var, under({l.var}, l.body)); },
            [&](const ev::App& a) { return Evidence::app(run(a.fn), run(a.arg)); },
            [&](const ev::Cases& c) {
              return Evidence::cases(run(c.scrutinee), c.left_var, under({c.left_var}, c.left),
                                     c.right_var, under({c.right_var}, c.right));
            },
            [&](const ev::Split& s) {
              return Evidence::split(run(s.scrutinee), s.first_var, s.second_var,
                                     under({s.first_var, s.second_var}, s.body));
            },
        },
        e.node());
  }
};

}  // namespace

Evidence substitute(const Evidence& body, const std::string& var, const Evidence& value) {
  Substituter s{var, value, free_vars(value)};
  return s.run(body);
}

//------------------------------------------------------------------------------
// Judgements and contexts

std::size_t Judgement::hash() const noexcept {
  return mix(mix(evidence.hash(), claim.hash()), str_hash(actor.name()));
}

Context::Context(const std::vector<Judgement>& entries) {
  for (const auto& j : entries) add(j);
}

bool Context::contains(const Judgement& j) const {
  std::size_t h = j.hash();
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (hashes_[i] == h && entries_[i] == j) return true;
  return false;
}

void Context::add(const Judgement& j) {
  if (contains(j)) return;
  entries_.push_back(j);
  hashes_.push_back(j.hash());
}

Context ctx_union(const Context& p, const Context& q) {
  Context out = p;
  for (const auto& j : q) out.add(j);
  return out;
}

Context ctx_discharge(const Context& ctx, const Judgement& j) {
  if (!ctx.contains(j)) {
    throw Error(ErrorCode::NotAnAssumption, "judgement is not among the assumptions");
  }
  Context out;
  for (const auto& entry : ctx)
    if (!(entry == j)) out.add(entry);
  return out;
}

//------------------------------------------------------------------------------
// Trust relations

TrustRelation::TrustRelation(std::string name) : name_(std::move(name)) {
  if (name_.empty()) throw Error(ErrorCode::InvalidConfig, "trust relation needs a name");
}

void TrustRelation::add_edge(const ActorId& truster, const ActorId& trusted, const Weight& weight) {
  if (truster == trusted && !weight.is_one()) {
    throw Error(ErrorCode::InvalidConfig, "self-trust of '" + truster.name() +
                                              "' is implicitly 1 and cannot be reweighted");
  }
  auto [it, inserted] = edges_.emplace(std::make_pair(truster, trusted), weight);
  if (!inserted) {
    throw Error(ErrorCode::InvalidConfig, "duplicate trust edge " + truster.name() + " -> " +
                                              trusted.name() + " in relation " + name_);
  }
}

std::optional<Weight> TrustRelation::weight(const ActorId& truster, const ActorId& trusted) const {
  auto it = edges_.find({truster, trusted});
  if (it != edges_.end()) return it->second;
  if (truster == trusted) return Weight::one();
  return std::nullopt;
}

std::vector<TrustEdge> TrustRelation::edges() const {
  std::vector<TrustEdge> out;
  for (const auto& [key, w] : edges_) out.push_back(TrustEdge{name_, key.first, key.second, w});
  return out;
}

std::vector<std::pair<ActorId, Weight>> TrustRelation::trusted_by(const ActorId& truster) const {
  std::vector<std::pair<ActorId, Weight>> out;
  for (const auto& [key, w] : edges_)
    if (key.first == truster) out.emplace_back(key.second, w);
  return out;
}

std::set<ActorId> TrustRelation::actors() const {
  std::set<ActorId> out;
  for (const auto& [key, w] : edges_) {
    out.insert(key.first);
    out.insert(key.second);
  }
  return out;
}

}  // namespace veracity
