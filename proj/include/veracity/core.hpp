#pragma once

// Value types shared by every module: claims, evidence terms, actors,
// weights, judgements, contexts, sequents and trust relations. All of them
// are immutable once built and cheap to copy (tree nodes are shared).

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "veracity/error.hpp"

namespace veracity {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

using Rational = boost::multiprecision::cpp_rational;

// Exact decimal text of r if its expansion terminates ("0.2", "3"), nothing
// otherwise (e.g. 1/3).
std::optional<std::string> exact_decimal(const Rational& r);
// "1/5", or "1" / "0" for integers.
std::string fraction_string(const Rational& r);

//------------------------------------------------------------------------------
// Actors and weights

class ActorId {
 public:
  explicit ActorId(std::string name);

  const std::string& name() const noexcept { return name_; }

  friend bool operator==(const ActorId&, const ActorId&) = default;
  friend auto operator<=>(const ActorId&, const ActorId&) = default;

 private:
  std::string name_;
};

class Weight {
 public:
  Weight() : value_(1) {}
  // Throws WeightOutOfRange unless 0 <= value <= 1.
  explicit Weight(const Rational& value);

  static Weight one() { return Weight(); }
  static Weight zero() { return Weight(Rational(0)); }

  const Rational& value() const noexcept { return value_; }
  bool is_one() const { return value_ == 1; }

  // Decimal when it terminates, fraction otherwise.
  std::string to_string() const;
  std::string to_fraction() const { return fraction_string(value_); }

  friend bool operator==(const Weight& a, const Weight& b) { return a.value_ == b.value_; }
  friend bool operator<(const Weight& a, const Weight& b) { return a.value_ < b.value_; }
  friend bool operator<=(const Weight& a, const Weight& b) { return a.value_ <= b.value_; }
  friend bool operator>(const Weight& a, const Weight& b) { return a.value_ > b.value_; }

 private:
  Rational value_;
};

Weight weight_mul(const Weight& a, const Weight& b);

//------------------------------------------------------------------------------
// Claims

struct ClaimNode;

class Claim {
 public:
  enum class Kind { Atomic, Bottom, And, Or, Implies };

  static Claim atomic(std::string name);
  static Claim bottom();
  static Claim conj(Claim left, Claim right);
  static Claim disj(Claim left, Claim right);
  static Claim implies(Claim antecedent, Claim consequent);
  // Negation is implication into bottom.
  static Claim negation(Claim c) { return implies(std::move(c), bottom()); }

  Kind kind() const noexcept;
  bool is_binary() const noexcept;
  const std::string& name() const;   // Atomic only
  const Claim& left() const;         // binary only
  const Claim& right() const;        // binary only
  std::size_t hash() const noexcept;
  // Number of binary connectives in the tree.
  std::size_t connectives() const noexcept;

  friend bool operator==(const Claim& a, const Claim& b);

 private:
  explicit Claim(std::shared_ptr<const ClaimNode> node) : node_(std::move(node)) {}
  static Claim binary(Kind kind, Claim left, Claim right);
  std::shared_ptr<const ClaimNode> node_;
};

//------------------------------------------------------------------------------
// Evidence

// Provenance carried by an atomic witness (who/where/when/how). The logic
// never looks inside it.
using Payload = std::map<std::string, std::string>;

class Evidence;
namespace ev {
struct Atom;
struct Var;
struct Pair;
struct TagLeft;
struct TagRight;
struct Lambda;
struct App;
struct Cases;
struct Split;
}  // namespace ev

struct EvidenceNode;

class Evidence {
 public:
  using Variant = std::variant<ev::Atom, ev::Var, ev::Pair, ev::TagLeft, ev::TagRight,
                               ev::Lambda, ev::App, ev::Cases, ev::Split>;

  static Evidence atom(std::string name, Payload payload = {});
  static Evidence var(std::string name);
  static Evidence pair(Evidence first, Evidence second);
  static Evidence tag_left(Evidence inner);
  static Evidence tag_right(Evidence inner);
  static Evidence lambda(std::string var, Evidence body);
  static Evidence app(Evidence fn, Evidence arg);
  static Evidence cases(Evidence scrutinee, std::string left_var, Evidence left,
                        std::string right_var, Evidence right);
  static Evidence split(Evidence scrutinee, std::string first_var, std::string second_var,
                        Evidence body);

  const Variant& node() const noexcept;

  template <class T>
  const T* as() const noexcept;
  template <class T>
  bool is() const noexcept {
    return as<T>() != nullptr;
  }

  // Introduction forms (and names) are canonical; App, Cases and Split are not.
  bool is_canonical_root() const noexcept;
  std::size_t hash() const noexcept;

  friend bool operator==(const Evidence& a, const Evidence& b);

 private:
  explicit Evidence(std::shared_ptr<const EvidenceNode> node) : node_(std::move(node)) {}
  static Evidence make(Variant v);
  std::shared_ptr<const EvidenceNode> node_;
};

namespace ev {
struct Atom {
  std::string name;
  Payload payload;
  bool operator==(const Atom&) const = default;
};
struct Var {
  std::string name;
  bool operator==(const Var&) const = default;
};
struct Pair {
  Evidence first;
  Evidence second;
  bool operator==(const Pair&) const = default;
};
struct TagLeft {
  Evidence inner;
  bool operator==(const TagLeft&) const = default;
};
struct TagRight {
  Evidence inner;
  bool operator==(const TagRight&) const = default;
};
struct Lambda {
  std::string var;
  Evidence body;
  bool operator==(const Lambda&) const = default;
};
struct App {
  Evidence fn;
  Evidence arg;
  bool operator==(const App&) const = default;
};
struct Cases {
  Evidence scrutinee;
  std::string left_var;
  Evidence left;
  std::string right_var;
  Evidence right;
  bool operator==(const Cases&) const = default;
};
struct Split {
  Evidence scrutinee;
  std::string first_var;
  std::string second_var;
  Evidence body;
  bool operator==(const Split&) const = default;
};
}  // namespace ev

struct EvidenceNode {
  Evidence::Variant value;
  std::size_t hash;
};

inline const Evidence::Variant& Evidence::node() const noexcept { return node_->value; }
inline std::size_t Evidence::hash() const noexcept { return node_->hash; }
template <class T>
const T* Evidence::as() const noexcept {
  return std::get_if<T>(&node_->value);
}

std::set<std::string> free_vars(const Evidence& e);
bool occurs_free(const Evidence& e, const std::string& var);

// Replaces the free occurrences of `var` in `body` by `value`. Never
// renames: if a binder inside `body` would capture a free variable of
// `value` at a substitution site, throws CaptureError.
Evidence substitute(const Evidence& body, const std::string& var, const Evidence& value);

//------------------------------------------------------------------------------
// Judgements, contexts, sequents

struct Judgement {
  Evidence evidence;
  ActorId actor;
  Weight weight;
  Claim claim;

  bool operator==(const Judgement&) const = default;
  std::size_t hash() const noexcept;
};

// Ordered, duplicate-free list of assumptions.
class Context {
 public:
  Context() = default;
  explicit Context(const std::vector<Judgement>& entries);

  const std::vector<Judgement>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  bool contains(const Judgement& j) const;
  // Appends unless already present.
  void add(const Judgement& j);

  bool operator==(const Context&) const = default;

 private:
  std::vector<Judgement> entries_;
  std::vector<std::size_t> hashes_;
};

Context ctx_union(const Context& p, const Context& q);
// Throws NotAnAssumption when j is not in ctx.
Context ctx_discharge(const Context& ctx, const Judgement& j);

struct Sequent {
  Context assumptions;
  Judgement conclusion;

  bool operator==(const Sequent&) const = default;
};

//------------------------------------------------------------------------------
// Trust relations

struct TrustEdge {
  std::string relation;
  ActorId truster;
  ActorId trusted;
  Weight weight;

  bool operator==(const TrustEdge&) const = default;
};

// Weighted, reflexive, not necessarily symmetric relation between actors.
// Self-edges of weight 1 are implicit.
class TrustRelation {
 public:
  explicit TrustRelation(std::string name);

  const std::string& name() const noexcept { return name_; }

  // Throws InvalidConfig on a second edge for the same ordered pair or on an
  // explicit self-edge with weight other than 1.
  void add_edge(const ActorId& truster, const ActorId& trusted, const Weight& weight);

  // Weight of the edge truster -> trusted, including implicit self-edges.
  std::optional<Weight> weight(const ActorId& truster, const ActorId& trusted) const;

  const std::map<std::pair<ActorId, ActorId>, Weight>& explicit_edges() const noexcept {
    return edges_;
  }
  std::vector<TrustEdge> edges() const;
  // Explicit out-edges of `truster`, ordered by trusted actor.
  std::vector<std::pair<ActorId, Weight>> trusted_by(const ActorId& truster) const;
  std::set<ActorId> actors() const;

 private:
  std::string name_;
  std::map<std::pair<ActorId, ActorId>, Weight> edges_;
};

}  // namespace veracity
