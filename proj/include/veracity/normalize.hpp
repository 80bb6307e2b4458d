#pragma once

#include <cstddef>
#include <optional>

#include "veracity/core.hpp"

namespace veracity {

// One contraction at the leftmost-innermost redex, using
//   app(\x. b, a)                 -> b[x := a]
//   cases(i(a), (x) d, (y) e)     -> d[x := a]
//   cases(j(b), (x) d, (y) e)     -> e[y := b]
//   split((a, b), (x, y) d)       -> d[x := a][y := b]
// Nothing when the term has no redex. Propagates CaptureError.
std::optional<Evidence> reduce_step(const Evidence& e);

inline constexpr std::size_t kDefaultFuel = 10000;

class FuelExhausted : public Error {
 public:
  explicit FuelExhausted(Evidence last)
      : Error(ErrorCode::FuelExhausted, "normalization ran out of fuel"), last_(std::move(last)) {}
  const Evidence& last() const noexcept { return last_; }

 private:
  Evidence last_;
};

struct Normalized {
  Evidence term;
  std::size_t steps;
};

// Reduces until no redex remains; throws FuelExhausted after `fuel` steps.
Normalized normalize_counted(const Evidence& e, std::size_t fuel = kDefaultFuel);
Evidence normalize(const Evidence& e, std::size_t fuel = kDefaultFuel);

bool evidence_equal(const Evidence& a, const Evidence& b, std::size_t fuel = kDefaultFuel);

// True when no subterm is a redex.
bool is_normal(const Evidence& e);

}  // namespace veracity
