#include "invar/simplex.hpp"

#include <stdexcept>

namespace invar::lp {

Solution maximize(const Problem& p) {
  const std::size_t m = p.rows.size();
  const std::size_t n = p.vars;
  if (p.rhs.size() != m || p.objective.size() != n)
    throw std::invalid_argument("inconsistent LP dimensions");
  for (const auto& row : p.rows)
    if (row.size() != n) throw std::invalid_argument("inconsistent LP row width");
  for (const auto& b : p.rhs)
    if (b.sign() < 0) throw std::invalid_argument("simplex requires nonnegative rhs");

  // Tableau columns: n structural, m slacks, then the rhs. Row m is the
  // objective row storing reduced costs z_j - c_j; optimal when all >= 0.
  const std::size_t cols = n + m + 1;
  std::vector<std::vector<Rat>> t(m + 1, std::vector<Rat>(cols, Rat(0)));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = p.rows[i][j];
    t[i][n + i] = Rat(1);
    t[i][cols - 1] = p.rhs[i];
    basis[i] = n + i;
  }
  for (std::size_t j = 0; j < n; ++j) t[m][j] = -p.objective[j];

  for (;;) {
    // Bland: entering column = smallest index with a negative reduced cost.
    std::size_t enter = cols;
    for (std::size_t j = 0; j + 1 < cols; ++j) {
      if (t[m][j].sign() < 0) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;  // optimal

    std::size_t leave = m;
    Rat best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter].sign() <= 0) continue;
      Rat ratio = t[i][cols - 1] / t[i][enter];
      if (leave == m || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) throw std::logic_error("LP objective is unbounded");

    // pivot on (leave, enter)
    Rat pivot = t[leave][enter];
    for (auto& v : t[leave]) v /= pivot;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || t[i][enter].is_zero()) continue;
      Rat factor = t[i][enter];
      for (std::size_t j = 0; j < cols; ++j) t[i][j] -= factor * t[leave][j];
    }
    basis[leave] = enter;
  }

  Solution sol;
  sol.objective = t[m][cols - 1];
  sol.primal.assign(n, Rat(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) sol.primal[basis[i]] = t[i][cols - 1];
  sol.dual.reserve(m);
  for (std::size_t i = 0; i < m; ++i) sol.dual.push_back(t[m][n + i]);
  return sol;
}

}  // namespace invar::lp
