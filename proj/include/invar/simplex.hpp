#pragma once

#include <vector>

#include "invar/rational.hpp"

namespace invar::lp {

/// maximize objective . u  subject to  rows . u <= rhs, u >= 0.
/// Every rhs entry must be nonnegative so the slack basis is feasible.
struct Problem {
  std::size_t vars = 0;
  std::vector<std::vector<Rat>> rows;  // each of length vars
  std::vector<Rat> rhs;
  std::vector<Rat> objective;          // length vars
};

struct Solution {
  Rat objective;
  std::vector<Rat> primal;  // length vars
  std::vector<Rat> dual;    // one multiplier >= 0 per constraint row
};

/// Exact rational simplex with Bland's rule (smallest-index entering column,
/// smallest-index basic variable on ratio ties), which terminates on every
/// input. Throws std::invalid_argument on a negative rhs and
/// std::logic_error if the objective is unbounded.
Solution maximize(const Problem& p);

}  // namespace invar::lp
