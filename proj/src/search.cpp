#include "veracity/search.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace veracity {

//------------------------------------------------------------------------------
// PartialProof

const Goal& PartialProof::goal() const noexcept {
  return std::visit([](const auto& v) -> const Goal& { return v.goal; }, value_);
}

std::size_t PartialProof::hole_count() const {
  const Node* n = as_node();
  if (!n) return 1;
  std::size_t count = 0;
  for (const auto& p : n->premises) count += p.hole_count();
  return count;
}

bool PartialProof::complete() const { return hole_count() == 0; }

namespace {

void collect_holes(const PartialProof& p, std::vector<std::size_t>& path,
                   std::vector<std::vector<std::size_t>>& out) {
  const auto* n = p.as_node();
  if (!n) {
    out.push_back(path);
    return;
  }
  for (std::size_t i = 0; i < n->premises.size(); ++i) {
    path.push_back(i);
    collect_holes(n->premises[i], path, out);
    path.pop_back();
  }
}

}  // namespace

std::vector<std::vector<std::size_t>> PartialProof::hole_paths() const {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> path;
  collect_holes(*this, path, out);
  return out;
}

const PartialProof* PartialProof::at(const std::vector<std::size_t>& path) const {
  const PartialProof* cur = this;
  for (std::size_t i : path) {
    const auto* n = cur->as_node();
    if (!n || i >= n->premises.size()) return nullptr;
    cur = &n->premises[i];
  }
  return cur;
}

namespace {

PartialProof replace_at(const PartialProof& p, const std::vector<std::size_t>& path, std::size_t depth,
                        PartialProof subtree) {
  if (depth == path.size()) return subtree;
  const auto* n = p.as_node();
  if (!n || path[depth] >= n->premises.size()) {
    throw Error(ErrorCode::InvalidTree, "no subtree at " + path_to_string(path));
  }
  std::vector<PartialProof> premises = n->premises;
  premises[path[depth]] = replace_at(premises[path[depth]], path, depth + 1, std::move(subtree));
  return PartialProof::node(n->goal, n->instance, std::move(premises));
}

}  // namespace

PartialProof PartialProof::replaced(const std::vector<std::size_t>& path, PartialProof subtree) const {
  return replace_at(*this, path, 0, std::move(subtree));
}

//------------------------------------------------------------------------------
// Configuration

std::set<RuleName> default_rules() {
  return {RuleName::Assume,   RuleName::AndIntro,  RuleName::OrIntro1,
          RuleName::OrIntro2, RuleName::ImplIntro, RuleName::Trust};
}

TrustEnv StepConfig::trust_env() const {
  std::map<std::string, TrustRelation> rels;
  for (const auto& e : trust_edges) {
    auto it = rels.try_emplace(e.relation, TrustRelation(e.relation)).first;
    it->second.add_edge(e.truster, e.trusted, e.weight);
  }
  TrustEnv env;
  for (auto& [name, rel] : rels) env.add(std::move(rel));
  return env;
}

void StepConfig::validate() const {
  if (depth_limit == 0) throw Error(ErrorCode::InvalidConfig, "depth limit must be positive");
  if (max_proofs == 0) throw Error(ErrorCode::InvalidConfig, "proof limit must be positive");
  for (const auto& a : assumables) {
    if (!a.evidence.is<ev::Atom>() && !a.evidence.is<ev::Var>()) {
      throw Error(ErrorCode::InvalidConfig, "assumable evidence must be a name or a variable");
    }
  }
  (void)trust_env();
}

Goal make_goal(ActorId actor, Claim claim) { return Goal{std::move(actor), std::move(claim), {}}; }

//------------------------------------------------------------------------------
// Expansion

namespace {

Judgement hyp(const std::string& var, const ActorId& actor, const Claim& claim) {
  return Judgement{Evidence::var(var), actor, Weight::one(), claim};
}

Goal sub_goal(const Goal& g, Claim claim) { return Goal{g.actor, std::move(claim), g.hypotheses}; }

Goal branch_goal(const Goal& g, std::initializer_list<Judgement> extra) {
  Goal out = g;
  out.hypotheses.insert(out.hypotheses.end(), extra);
  return out;
}

// Smallest x<n> names not already used in scope.
std::vector<std::string> fresh_names(const StepConfig& cfg, const Goal& g, std::size_t count) {
  std::set<std::string> used;
  auto note = [&](const Evidence& e) {
    if (const auto* v = e.as<ev::Var>()) used.insert(v->name);
    if (const auto* a = e.as<ev::Atom>()) used.insert(a->name);
  };
  for (const auto& h : g.hypotheses) note(h.evidence);
  for (const auto& a : cfg.assumables) note(a.evidence);
  std::vector<std::string> out;
  for (std::size_t n = 1; out.size() < count; ++n) {
    std::string name = "x" + std::to_string(n);
    if (!used.count(name)) out.push_back(name);
  }
  return out;
}

void add_subformulas(const Claim& c, std::vector<Claim>& pool) {
  if (std::find(pool.begin(), pool.end(), c) != pool.end()) return;
  pool.push_back(c);
  if (c.is_binary()) {
    add_subformulas(c.left(), pool);
    add_subformulas(c.right(), pool);
  }
}

// Side formulas for elimination rules: every subformula of something that
// can be assumed in this scope.
std::vector<Claim> side_pool(const StepConfig& cfg, const Goal& g) {
  std::vector<Claim> pool;
  for (const auto& a : cfg.assumables) add_subformulas(a.claim, pool);
  for (const auto& h : g.hypotheses) add_subformulas(h.claim, pool);
  return pool;
}

PartialProof holes_node(const Goal& g, RuleInstance inst, std::vector<Goal> premises) {
  std::vector<PartialProof> ps;
  ps.reserve(premises.size());
  for (auto& p : premises) ps.push_back(PartialProof::hole(std::move(p)));
  return PartialProof::node(g, std::move(inst), std::move(ps));
}

}  // namespace

std::vector<PartialProof> step(const StepConfig& cfg, const Goal& g) {
  const auto& rules = cfg.enabled_rules;
  auto on = [&](RuleName r) { return rules.count(r) > 0; };
  std::vector<PartialProof> out;
  const Claim& c = g.claim;

  if (on(RuleName::Assume)) {
    for (const auto& a : cfg.assumables)
      if (a.actor == g.actor && a.claim == c) out.push_back(PartialProof::node(g, rule::Assume{a}, {}));
    for (const auto& h : g.hypotheses)
      if (h.actor == g.actor && h.claim == c) out.push_back(PartialProof::node(g, rule::Assume{h}, {}));
  }

  std::vector<Claim> pool;
  bool any_elim = on(RuleName::AndElim1) || on(RuleName::AndElim2) || on(RuleName::AndElimSplit) ||
                  on(RuleName::OrElim1) || on(RuleName::OrElim2) || on(RuleName::OrElimCases) ||
                  on(RuleName::ImplElim);
  if (any_elim) pool = side_pool(cfg, g);

  if (on(RuleName::BotElim) && c.kind() != Claim::Kind::Bottom) {
    out.push_back(holes_node(g, rule::BotElim{c}, {sub_goal(g, Claim::bottom())}));
  }
  if (on(RuleName::AndIntro) && c.kind() == Claim::Kind::And) {
    out.push_back(holes_node(g, rule::AndIntro{}, {sub_goal(g, c.left()), sub_goal(g, c.right())}));
  }
  if (on(RuleName::AndElim1)) {
    for (const auto& b : pool) out.push_back(holes_node(g, rule::AndElim1{}, {sub_goal(g, Claim::conj(c, b))}));
  }
  if (on(RuleName::AndElim2)) {
    for (const auto& b : pool) out.push_back(holes_node(g, rule::AndElim2{}, {sub_goal(g, Claim::conj(b, c))}));
  }
  if (on(RuleName::AndElimSplit)) {
    for (const auto& p : pool) {
      if (p.kind() != Claim::Kind::And) continue;
      auto names = fresh_names(cfg, g, 2);
      out.push_back(holes_node(g, rule::AndElimSplit{names[0], names[1]},
                               {sub_goal(g, p), branch_goal(g, {hyp(names[0], g.actor, p.left()),
                                                                hyp(names[1], g.actor, p.right())})}));
    }
  }
  if (c.kind() == Claim::Kind::Or) {
    if (on(RuleName::OrIntro1)) out.push_back(holes_node(g, rule::OrIntro1{c.right()}, {sub_goal(g, c.left())}));
    if (on(RuleName::OrIntro2)) out.push_back(holes_node(g, rule::OrIntro2{c.left()}, {sub_goal(g, c.right())}));
  }
  if (on(RuleName::OrElim1)) {
    for (const auto& b : pool) out.push_back(holes_node(g, rule::OrElim1{}, {sub_goal(g, Claim::disj(c, b))}));
  }
  if (on(RuleName::OrElim2)) {
    for (const auto& b : pool) out.push_back(holes_node(g, rule::OrElim2{}, {sub_goal(g, Claim::disj(b, c))}));
  }
  if (on(RuleName::OrElimCases)) {
    for (const auto& p : pool) {
      if (p.kind() != Claim::Kind::Or) continue;
      auto names = fresh_names(cfg, g, 1);
      out.push_back(holes_node(g, rule::OrElimCases{names[0], names[0]},
                               {sub_goal(g, p), branch_goal(g, {hyp(names[0], g.actor, p.left())}),
                                branch_goal(g, {hyp(names[0], g.actor, p.right())})}));
    }
  }
  if (on(RuleName::ImplIntro) && c.kind() == Claim::Kind::Implies) {
    auto names = fresh_names(cfg, g, 1);
    Judgement h = hyp(names[0], g.actor, c.left());
    Goal body = branch_goal(g, {h});
    body.claim = c.right();
    out.push_back(holes_node(g, rule::ImplIntro{h}, {std::move(body)}));
  }
  if (on(RuleName::ImplElim)) {
    for (const auto& a : pool) {
      out.push_back(holes_node(g, rule::ImplElim{ImplElimForm::Beta},
                               {sub_goal(g, Claim::implies(a, c)), sub_goal(g, a)}));
    }
  }
  if (on(RuleName::Trust)) {
    for (const auto& e : cfg.trust_edges) {
      if (!(e.truster == g.actor) || e.trusted == e.truster) continue;
      out.push_back(holes_node(g, rule::Trust{e}, {Goal{e.trusted, c, g.hypotheses}}));
    }
  }
  return out;
}

std::vector<PartialProof> one_level_deeper(const StepConfig& cfg, const PartialProof& p) {
  auto paths = p.hole_paths();
  if (paths.empty()) return {p};
  std::size_t shallowest = paths.front().size();
  for (const auto& path : paths) shallowest = std::min(shallowest, path.size());
  std::erase_if(paths, [&](const auto& path) { return path.size() != shallowest; });

  std::vector<std::vector<PartialProof>> options;
  options.reserve(paths.size());
  for (const auto& path : paths) {
    options.push_back(step(cfg, p.at(path)->goal()));
    if (options.back().empty()) return {};
  }

  std::vector<PartialProof> out;
  std::vector<std::size_t> idx(paths.size(), 0);
  while (true) {
    PartialProof filled = p;
    for (std::size_t h = 0; h < paths.size(); ++h) filled = filled.replaced(paths[h], options[h][idx[h]]);
    out.push_back(std::move(filled));
    // Odometer with the first hole as the fastest digit.
    std::size_t h = 0;
    while (h < idx.size() && ++idx[h] == options[h].size()) idx[h++] = 0;
    if (h == idx.size()) break;
  }
  return out;
}

std::optional<ProofTree> to_proof_tree(const PartialProof& p, const TrustEnv& trust) {
  const auto* n = p.as_node();
  if (!n) throw Error(ErrorCode::InvalidTree, "partial proof still has holes");
  std::vector<ProofTree> premises;
  premises.reserve(n->premises.size());
  for (const auto& sub : n->premises) {
    auto t = to_proof_tree(sub, trust);
    if (!t) return std::nullopt;
    premises.push_back(std::move(*t));
  }
  try {
    if (n->instance.name() == RuleName::ImplElim) {
      bool beta = premises[0].conclusion.conclusion.evidence.is<ev::Lambda>();
      if (beta) {
        try {
          return apply_rule(rule::ImplElim{ImplElimForm::Beta}, premises, trust);
        } catch (const Error&) {
          // Capture or rebinding: keep the application unreduced.
        }
      }
      return apply_rule(rule::ImplElim{ImplElimForm::App}, std::move(premises), trust);
    }
    return apply_rule(n->instance, std::move(premises), trust);
  } catch (const Error&) {
    return std::nullopt;
  }
}

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t tree_hash(const ProofTree& t) {
  std::size_t h = mix(t.conclusion.conclusion.hash(), static_cast<std::size_t>(t.instance.name()));
  for (const auto& a : t.conclusion.assumptions) h = mix(h, a.hash());
  for (const auto& p : t.premises) h = mix(h, tree_hash(p));
  return h;
}

}  // namespace

std::vector<ProofTree> search(const StepConfig& cfg, const Goal& goal) {
  cfg.validate();
  TrustEnv env = cfg.trust_env();
  std::vector<ProofTree> results;
  std::unordered_multimap<std::size_t, std::size_t> seen;

  std::vector<PartialProof> frontier{PartialProof::hole(goal)};
  for (std::size_t level = 0; level < cfg.depth_limit && !frontier.empty(); ++level) {
    std::vector<PartialProof> next;
    for (const auto& p : frontier) {
      for (auto& q : one_level_deeper(cfg, p)) {
        if (!q.complete()) {
          next.push_back(std::move(q));
          continue;
        }
        auto tree = to_proof_tree(q, env);
        if (!tree || !check(*tree, env).ok) continue;
        std::size_t h = tree_hash(*tree);
        auto [lo, hi] = seen.equal_range(h);
        bool dup = std::any_of(lo, hi, [&](const auto& kv) { return results[kv.second] == *tree; });
        if (dup) continue;
        seen.emplace(h, results.size());
        results.push_back(std::move(*tree));
        if (results.size() >= cfg.max_proofs) return results;
      }
    }
    frontier = std::move(next);
  }
  return results;
}

//------------------------------------------------------------------------------
// Renaming bound variables of a candidate

namespace {

bool is_identifier(const std::string& s) {
  if (s.empty() || s == "_") return false;
  auto alpha = [](char ch) { return (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || ch == '_'; };
  if (!alpha(s[0])) return false;
  return std::all_of(s.begin(), s.end(), [&](char ch) { return alpha(ch) || (ch >= '0' && ch <= '9'); });
}

Judgement renamed(const Judgement& j, const std::string& name) {
  Judgement out = j;
  out.evidence = Evidence::var(name);
  return out;
}

// Replaces the last `names.size()` hypotheses of a hole's goal.
PartialProof rename_branch(const PartialProof& hole, const std::vector<std::string>& names) {
  Goal g = hole.goal();
  std::size_t base = g.hypotheses.size() - names.size();
  for (std::size_t i = 0; i < base; ++i) {
    const auto* v = g.hypotheses[i].evidence.as<ev::Var>();
    if (v && std::find(names.begin(), names.end(), v->name) != names.end()) {
      throw Error(ErrorCode::InvalidConfig, "'" + v->name + "' is already bound in this scope");
    }
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    g.hypotheses[base + i] = renamed(g.hypotheses[base + i], names[i]);
  }
  return PartialProof::hole(std::move(g));
}

}  // namespace

PartialProof rebind_candidate(const PartialProof& candidate, const std::vector<std::string>& names) {
  const auto* n = candidate.as_node();
  std::size_t want = 0;
  if (n) {
    switch (n->instance.name()) {
      case RuleName::ImplIntro: want = 1; break;
      case RuleName::AndElimSplit:
      case RuleName::OrElimCases: want = 2; break;
      default: break;
    }
  }
  if (names.empty()) return candidate;
  if (names.size() != want) {
    throw Error(ErrorCode::InvalidConfig, "expected " + std::to_string(want) + " variable name(s), got " +
                                              std::to_string(names.size()));
  }
  for (const auto& name : names) {
    if (!is_identifier(name)) throw Error(ErrorCode::InvalidConfig, "'" + name + "' is not a variable name");
  }
  const Goal& g = n->goal;
  if (const auto* r = n->instance.as<rule::ImplIntro>()) {
    return PartialProof::node(g, rule::ImplIntro{renamed(r->discharged, names[0])},
                              {rename_branch(n->premises[0], names)});
  }
  if (n->instance.as<rule::AndElimSplit>()) {
    if (names[0] == names[1]) throw Error(ErrorCode::InvalidConfig, "split needs two distinct names");
    return PartialProof::node(g, rule::AndElimSplit{names[0], names[1]},
                              {n->premises[0], rename_branch(n->premises[1], names)});
  }
  return PartialProof::node(g, rule::OrElimCases{names[0], names[1]},
                            {n->premises[0], rename_branch(n->premises[1], {names[0]}),
                             rename_branch(n->premises[2], {names[1]})});
}

}  // namespace veracity
