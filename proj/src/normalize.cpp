#include "veracity/normalize.hpp"

namespace veracity {

namespace {

std::optional<Evidence> contract(const Evidence& e) {
  if (const auto* a = e.as<ev::App>()) {
    if (const auto* fn = a->fn.as<ev::Lambda>()) return substitute(fn->body, fn->var, a->arg);
  } else if (const auto* c = e.as<ev::Cases>()) {
    if (const auto* l = c->scrutinee.as<ev::TagLeft>()) return substitute(c->left, c->left_var, l->inner);
    if (const auto* r = c->scrutinee.as<ev::TagRight>()) return substitute(c->right, c->right_var, r->inner);
  } else if (const auto* s = e.as<ev::Split>()) {
    if (const auto* p = s->scrutinee.as<ev::Pair>()) {
      return substitute(substitute(s->body, s->first_var, p->first), s->second_var, p->second);
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Evidence> reduce_step(const Evidence& e) {
  // Children first, left to right; the node itself only once they are normal.
  return std::visit(
      overloaded{
          [](const ev::Atom&) -> std::optional<Evidence> { return std::nullopt; },
          [](const ev::Var&) -> std::optional<Evidence> { return std::nullopt; },
          [](const ev::Pair& p) -> std::optional<Evidence> {
            if (auto r = reduce_step(p.first)) return Evidence::pair(*r, p.second);
            if (auto r = reduce_step(p.second)) return Evidence::pair(p.first, *r);
            return std::nullopt;
          },
          [](const ev::TagLeft& t) -> std::optional<Evidence> {
            if (auto r = reduce_step(t.inner)) return Evidence::tag_left(*r);
            return std::nullopt;
          },
          [](const ev::TagRight& t) -> std::optional<Evidence> {
            if (auto r = reduce_step(t.inner)) return Evidence::tag_right(*r);
            return std::nullopt;
          },
          [](const ev::Lambda& l) -> std::optional<Evidence> {
            if (auto r = reduce_step(l.body)) return Evidence::lambda(l.var, *r);
            return std::nullopt;
          },
          [&](const ev::App& a) -> std::optional<Evidence> {
            if (auto r = reduce_step(a.fn)) return Evidence::app(*r, a.arg);
            if (auto r = reduce_step(a.arg)) return Evidence::app(a.fn, *r);
            return contract(e);
          },
          [&](const ev::Cases& c) -> std::optional<Evidence> {
            if (auto r = reduce_step(c.scrutinee))
              return Evidence::cases(*r, c.left_var, c.left, c.right_var, c.right);
            if (auto r = reduce_step(c.left))
              return Evidence::cases(c.scrutinee, c.left_var, *r, c.right_var, c.right);
            if (auto r = reduce_step(c.right))
              return Evidence::cases(c.scrutinee, c.left_var, c.left, c.right_var, *r);
            return contract(e);
          },
          [&](const ev::Split& s) -> std::optional<Evidence> {
            if (auto r = reduce_step(s.scrutinee))
              return Evidence::split(*r, s.first_var, s.second_var, s.body);
            if (auto r = reduce_step(s.body))
              return Evidence::split(s.scrutinee, s.first_var, s.second_var, *r);
            return contract(e);
          },
      },
      e.node());
}

Normalized normalize_counted(const Evidence& e, std::size_t fuel) {
  if (fuel == 0) throw Error(ErrorCode::InvalidConfig, "fuel must be positive");
  Evidence current = e;
  for (std::size_t steps = 0; steps <= fuel; ++steps) {
    auto next = reduce_step(current);
    if (!next) return {current, steps};
    if (steps == fuel) break;
    current = std::move(*next);
  }
  throw FuelExhausted(current);
}

Evidence normalize(const Evidence& e, std::size_t fuel) { return normalize_counted(e, fuel).term; }

bool evidence_equal(const Evidence& a, const Evidence& b, std::size_t fuel) {
  return normalize(a, fuel) == normalize(b, fuel);
}

bool is_normal(const Evidence& e) { return !reduce_step(e).has_value(); }

}  // namespace veracity
